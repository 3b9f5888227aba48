#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "natvert/field.hpp"
#include "natvert/matrix.hpp"
#include "natvert/rng.hpp"

namespace natvert {

// Polynomial over GF(2^k), coefficients lowest degree first. The zero
// polynomial has an empty coefficient vector.
class Poly {
public:
    Poly() : f_(&gf(1)) {}
    explicit Poly(const Field& f) : f_(&f) {}
    Poly(const Field& f, std::vector<unsigned> coeffs);

    static Poly x(const Field& f) { return Poly(f, {0, 1}); }
    static Poly constant(const Field& f, unsigned c) { return Poly(f, {c}); }
    static Poly monomial(const Field& f, int degree, unsigned c = 1);

    const Field& field() const { return *f_; }
    int degree() const { return int(c_.size()) - 1; } // -1 for zero
    bool is_zero() const { return c_.empty(); }
    unsigned coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : 0u; }
    unsigned leading() const { return c_.empty() ? 0u : c_.back(); }

    Poly operator+(const Poly& rhs) const;
    Poly operator*(const Poly& rhs) const;
    bool operator==(const Poly& rhs) const { return f_ == rhs.f_ && c_ == rhs.c_; }
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    std::pair<Poly, Poly> divmod(const Poly& rhs) const;
    Poly operator%(const Poly& rhs) const { return divmod(rhs).second; }
    Poly operator/(const Poly& rhs) const { return divmod(rhs).first; }

    Poly monic() const;
    Poly derivative() const;
    Poly sqrt() const; // inverse of Frobenius; requires all odd coefficients zero

    unsigned eval(unsigned x) const;
    Matrix eval(const Matrix& a) const;

    std::string to_string() const; // e.g. "x^4+x+1" with GF(4) scalars as digits

private:
    const Field* f_;
    std::vector<unsigned> c_;

    void normalize();
};

Poly poly_gcd(Poly a, Poly b); // monic gcd
// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<Poly, Poly, Poly> poly_gcdext(const Poly& a, const Poly& b);
Poly poly_powmod(const Poly& base, unsigned long long e, const Poly& mod);

// Monic least-degree p with p(A) = 0.
Poly min_poly(const Matrix& a);

// Irreducible factorization with multiplicities, deterministically ordered
// (degree, then coefficient tuple). The product of the returned factors is
// re-multiplied and checked against the input before returning.
std::vector<std::pair<Poly, int>> factor_poly(const Poly& p, std::uint64_t seed = 0);

bool is_irreducible(const Poly& p, std::uint64_t seed = 0);

} // namespace natvert
