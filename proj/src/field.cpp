#include "natvert/field.hpp"

namespace natvert {

namespace {
constexpr unsigned kModuli[5] = {0, 0x3, 0x7, 0xb, 0x13};

unsigned mul_slow(unsigned a, unsigned b, int k, unsigned modulus) {
    unsigned r = 0;
    for (int i = 0; i < k; ++i)
        if (b & (1u << i)) r ^= a << i;
    for (int i = 2 * k - 2; i >= k; --i)
        if (r & (1u << i)) r ^= modulus << (i - k);
    return r;
}
} // namespace

Field::Field(int k) : k_(k), modulus_(kModuli[k]) {
    if (k >= 2) {
        unsigned x = 1;
        for (unsigned i = 0; i < order() - 1; ++i) {
            alog_[i] = x;
            log_[x] = i;
            x = mul_slow(x, 2, k_, modulus_);
        }
        // x must be primitive for the canonical moduli
        if (x != 1) throw config_error("field: generator failed to close");
    }
}

const Field& Field::get(int k) {
    if (k < 1 || k > 4) throw config_error("field: degree k must be in 1..4");
    static const Field f1(1), f2(2), f3(3), f4(4);
    static const Field* fields[5] = {nullptr, &f1, &f2, &f3, &f4};
    return *fields[k];
}

unsigned embed(unsigned x, const Field& src, const Field& dst) {
    if (dst.k() % src.k() != 0)
        throw config_error("embed: source degree must divide destination degree");
    if (x == 0) return 0;
    if (src.k() == 1) return 1;
    unsigned stride = (dst.order() - 1) / (src.order() - 1);
    return dst.from_dlog(src.dlog(x) * stride);
}

} // namespace natvert
