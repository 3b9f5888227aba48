#pragma once

#include <array>
#include <cstdint>

#include "natvert/errors.hpp"

namespace natvert {

// GF(2^k) for k in {1,2,3,4}. Elements are bit-packed coefficient vectors,
// value < 2^k. Moduli are fixed per degree so fixtures are bit-exact:
//   k=1: x+1,  k=2: x^2+x+1,  k=3: x^3+x+1,  k=4: x^4+x+1.
// For every such modulus, x (value 2) generates the multiplicative group;
// k >= 2 multiplies through log/antilog tables, k = 1 is plain bit logic.
class Field {
public:
    static const Field& get(int k); // canonical instance per degree

    int k() const { return k_; }
    unsigned order() const { return 1u << k_; }
    unsigned modulus() const { return modulus_; }
    unsigned generator() const { return 2u >= order() ? 1u : 2u; }

    unsigned add(unsigned a, unsigned b) const { return a ^ b; }

    unsigned mul(unsigned a, unsigned b) const {
        if (k_ == 1) return a & b;
        if (a == 0 || b == 0) return 0;
        return alog_[(log_[a] + log_[b]) % (order() - 1)];
    }

    unsigned inv(unsigned a) const {
        if (a == 0) throw domain_error("field: inverse of zero");
        if (k_ == 1) return 1;
        return alog_[(order() - 1 - log_[a]) % (order() - 1)];
    }

    unsigned pow(unsigned a, unsigned long long e) const {
        unsigned r = 1;
        unsigned base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // Discrete log of a nonzero element with respect to the generator x.
    unsigned dlog(unsigned a) const {
        if (a == 0) throw domain_error("field: log of zero");
        if (k_ == 1) return 0;
        return log_[a];
    }

    unsigned from_dlog(unsigned e) const {
        if (k_ == 1) return 1;
        return alog_[e % (order() - 1)];
    }

    const std::array<unsigned, 16>& antilog_table() const { return alog_; }

private:
    explicit Field(int k);

    int k_;
    unsigned modulus_;
    std::array<unsigned, 16> alog_{}; // alog_[i] = x^i, i < 2^k - 1
    std::array<unsigned, 16> log_{};  // inverse of alog_ on nonzero values
};

inline const Field& gf(int k) { return Field::get(k); }

// Canonical ring embedding GF(2^src) -> GF(2^dst) for src.k | dst.k, sending
// the source generator to the (2^dst.k-1)/(2^src.k-1) power of the
// destination generator.
unsigned embed(unsigned x, const Field& src, const Field& dst);

} // namespace natvert
