#include "natvert/poly.hpp"

#include <algorithm>

#include "natvert/errors.hpp"

namespace natvert {

Poly::Poly(const Field& f, std::vector<unsigned> coeffs)
    : f_(&f), c_(std::move(coeffs)) {
    normalize();
}

Poly Poly::monomial(const Field& f, int degree, unsigned c) {
    std::vector<unsigned> v(degree + 1, 0);
    v[degree] = c;
    return Poly(f, std::move(v));
}

void Poly::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& rhs) const {
    std::vector<unsigned> out(std::max(c_.size(), rhs.c_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = coeff(int(i)) ^ rhs.coeff(int(i));
    return Poly(*f_, std::move(out));
}

Poly Poly::operator*(const Poly& rhs) const {
    if (is_zero() || rhs.is_zero()) return Poly(*f_);
    std::vector<unsigned> out(c_.size() + rhs.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j)
            out[i + j] ^= f_->mul(c_[i], rhs.c_[j]);
    }
    return Poly(*f_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& rhs) const {
    if (rhs.is_zero()) throw domain_error("poly: division by zero");
    Poly rem = *this;
    std::vector<unsigned> q(std::max(0, degree() - rhs.degree() + 1), 0);
    unsigned lead_inv = f_->inv(rhs.leading());
    while (!rem.is_zero() && rem.degree() >= rhs.degree()) {
        int shift = rem.degree() - rhs.degree();
        unsigned factor = f_->mul(rem.leading(), lead_inv);
        q[shift] = factor;
        for (int i = 0; i <= rhs.degree(); ++i)
            rem.c_[i + shift] ^= f_->mul(factor, rhs.c_[i]);
        rem.normalize();
    }
    return {Poly(*f_, std::move(q)), std::move(rem)};
}

Poly Poly::monic() const {
    if (is_zero() || leading() == 1) return *this;
    unsigned s = f_->inv(leading());
    std::vector<unsigned> out(c_);
    for (unsigned& v : out) v = f_->mul(v, s);
    return Poly(*f_, std::move(out));
}

Poly Poly::derivative() const {
    // characteristic 2: even-degree terms vanish
    std::vector<unsigned> out;
    for (int i = 1; i <= degree(); i += 2) {
        while (int(out.size()) < i - 1) out.push_back(0);
        out.push_back(c_[i]);
    }
    return Poly(*f_, std::move(out));
}

Poly Poly::sqrt() const {
    std::vector<unsigned> out;
    for (int i = 0; i <= degree(); ++i) {
        if (i % 2) {
            if (c_[i]) throw domain_error("poly: sqrt of a non-square");
            continue;
        }
        // scalar square root = Frobenius inverse x -> x^(2^(k-1))
        out.push_back(f_->pow(c_[i], 1u << (f_->k() - 1)));
    }
    return Poly(*f_, std::move(out));
}

unsigned Poly::eval(unsigned x) const {
    unsigned acc = 0;
    for (int i = degree(); i >= 0; --i) acc = f_->mul(acc, x) ^ c_[i];
    return acc;
}

Matrix Poly::eval(const Matrix& a) const {
    if (a.rows() != a.cols()) throw domain_error("poly: eval at non-square matrix");
    const int n = a.rows();
    Matrix acc(n, n, *f_);
    for (int i = degree(); i >= 0; --i) {
        acc = acc * a;
        if (c_[i]) {
            for (int d = 0; d < n; ++d) acc.set(d, d, acc.get(d, d) ^ c_[i]);
        }
    }
    return acc;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        if (!c_[i]) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c_[i] != 1) s += digits[c_[i]];
        if (i > 0) {
            if (c_[i] != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::tuple<Poly, Poly, Poly> poly_gcdext(const Poly& a, const Poly& b) {
    const Field& f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(f, 1), s1(f);
    Poly t0(f), t1 = Poly::constant(f, 1);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        Poly s2 = s0 + q * s1;
        Poly t2 = t0 + q * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && r0.leading() != 1) {
        unsigned inv = f.inv(r0.leading());
        Poly scale = Poly::constant(f, inv);
        r0 = r0 * scale;
        s0 = s0 * scale;
        t0 = t0 * scale;
    }
    return {r0, s0, t0};
}

Poly poly_powmod(const Poly& base, unsigned long long e, const Poly& mod) {
    Poly result = Poly::constant(base.field(), 1);
    Poly b = base % mod;
    while (e) {
        if (e & 1) result = (result * b) % mod;
        b = (b * b) % mod;
        e >>= 1;
    }
    return result;
}

Poly min_poly(const Matrix& a) {
    if (a.rows() != a.cols()) throw domain_error("min_poly: non-square matrix");
    const Field& f = a.field();
    const int n = a.rows();
    const int max_deg = n + 1;
    Echelon ech(n * n, f, max_deg + 1);
    Matrix power = Matrix::identity(n, f);
    for (int d = 0; d <= n; ++d) {
        Matrix tag(1, max_deg + 1, f);
        tag.set(0, d, 1);
        Matrix tag_out;
        if (!ech.add(power.vec(), &tag, &tag_out)) {
            std::vector<unsigned> coeffs(d + 1);
            for (int i = 0; i <= d; ++i) coeffs[i] = tag_out.get(0, i);
            return Poly(f, std::move(coeffs));
        }
        power = power * a;
    }
    throw domain_error("min_poly: no annihilating polynomial found"); // unreachable
}

namespace {

// Product of the distinct irreducible factors.
Poly radical(const Poly& p) {
    if (p.degree() <= 0) return Poly::constant(p.field(), 1);
    Poly d = p.derivative();
    if (d.is_zero()) return radical(p.sqrt());
    Poly g = poly_gcd(p, d);
    Poly s = (p / g).monic(); // distinct factors of odd multiplicity
    if (g.degree() <= 0) return s;
    Poly r = radical(g);
    return (s * (r / poly_gcd(s, r))).monic();
}

// Equal-degree splitting for squarefree g = product of irreducibles of
// degree d, via the characteristic-2 trace map.
void edf(const Poly& g, int d, Rng& rng, std::vector<Poly>& out) {
    if (g.degree() == d) {
        out.push_back(g.monic());
        return;
    }
    const Field& f = g.field();
    const int trace_len = f.k() * d;
    while (true) {
        std::vector<unsigned> uc(g.degree());
        for (auto& c : uc) c = unsigned(rng.below(f.order()));
        Poly u(f, std::move(uc));
        if (u.is_zero()) continue;
        Poly t(f);
        Poly term = u % g;
        for (int i = 0; i < trace_len; ++i) {
            t = t + term;
            term = (term * term) % g;
        }
        Poly h = poly_gcd(t, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            edf(h, d, rng, out);
            edf((g / h).monic(), d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Poly& p, std::uint64_t seed) {
    if (p.is_zero()) throw domain_error("factor_poly: zero polynomial");
    const Field& f = p.field();
    Rng rng = Rng::derive(seed, "factor_poly");
    std::vector<Poly> irreducibles;

    // distinct-degree sieve on the radical, then equal-degree splitting
    Poly rad = radical(p.monic());
    Poly rem = rad;
    Poly h = Poly::x(f) % rem;
    for (int d = 1; rem.degree() > 0 && 2 * d <= rem.degree(); ++d) {
        h = poly_powmod(h, f.order(), rem);
        Poly g = poly_gcd(h + Poly::x(f), rem);
        if (g.degree() > 0) {
            edf(g, d, rng, irreducibles);
            rem = (rem / g).monic();
            h = h % rem;
        }
    }
    if (rem.degree() > 0) irreducibles.push_back(rem.monic());

    std::sort(irreducibles.begin(), irreducibles.end(),
              [](const Poly& a, const Poly& b) {
                  if (a.degree() != b.degree()) return a.degree() < b.degree();
                  for (int i = a.degree(); i >= 0; --i)
                      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
                  return false;
              });

    std::vector<std::pair<Poly, int>> result;
    Poly cofactor = p.monic();
    for (const Poly& q : irreducibles) {
        int mult = 0;
        while (true) {
            auto [quot, r] = cofactor.divmod(q);
            if (!r.is_zero()) break;
            cofactor = std::move(quot);
            ++mult;
        }
        result.emplace_back(q, mult);
    }
    if (cofactor.degree() != 0)
        throw domain_error("factor_poly: factorization incomplete");

    Poly check = Poly::constant(f, p.leading());
    for (const auto& [q, m] : result)
        for (int i = 0; i < m; ++i) check = check * q;
    if (check != p) throw domain_error("factor_poly: re-multiplication check failed");
    return result;
}

bool is_irreducible(const Poly& p, std::uint64_t seed) {
    if (p.degree() <= 0) return false;
    auto factors = factor_poly(p, seed);
    return factors.size() == 1 && factors[0].second == 1;
}

} // namespace natvert
