#include "doctest.h"

#include "natvert/matrix.hpp"
#include "natvert/poly.hpp"
#include "support/naive_linalg.hpp"

using namespace natvert;
using namespace natvert::testsupport;

namespace {

Matrix cycle_shift(int n, const Field& f) {
    // permutation matrix of the n-cycle (1,2,...,n)
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, (i + 1) % n, 1);
    return m;
}

// action of (3,4)(5,6) on the natural simple module at n=6, basis
// {g1+g6,...,g4+g6}
Matrix involution_action_n6(const Field& f) {
    Matrix m(4, 4, f);
    int vals[4][4] = {{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 1}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (vals[r][c]) m.set(r, c, 1);
    return m;
}

} // namespace

TEST_CASE("rref ranks: identity, involution action, random vs naive oracle") {
    CHECK(rref(Matrix::identity(4, gf(1))).rank == 4);
    CHECK(rref(involution_action_n6(gf(1))).rank == 4);

    Rng rng = Rng::derive(42, "test-rref-oracle");
    Matrix a = Matrix::random(100, 100, gf(1), rng);
    CHECK(rref(a).rank == naive_rank(NaiveMatrix::from_packed(a)));
}

TEST_CASE("rref is idempotent") {
    Rng rng = Rng::derive(7, "test-rref-idem");
    for (int k : {1, 2, 3, 4}) {
        Matrix a = Matrix::random(20, 31, gf(k), rng);
        Matrix r1 = rref(a).mat;
        CHECK(rref(r1).mat == r1);
    }
}

TEST_CASE("kernel: zero map, norm of a 4-cycle") {
    Matrix zero(5, 5, gf(1));
    CHECK(kernel_basis(zero).rows() == 5);

    // norm operator of the cyclic shift: single Jordan block forces rank 1
    Matrix n4 = cycle_shift(4, gf(1));
    Matrix norm(4, 4, gf(1));
    Matrix p = Matrix::identity(4, gf(1));
    for (int i = 0; i < 4; ++i) {
        norm = norm + p;
        p = p * n4;
    }
    CHECK(rank(norm) == 1);
    CHECK(kernel_basis(norm).rows() == 3);
    // while (x+1) itself on the shift has full Jordan rank 3
    Matrix np1 = n4 + Matrix::identity(4, gf(1));
    CHECK(rank(np1) == 3);
    CHECK(kernel_basis(np1).rows() == 1);
}

TEST_CASE("rank + kernel dim = rows, all fields") {
    Rng rng = Rng::derive(11, "test-rank-kernel");
    for (int k : {1, 2, 3, 4}) {
        for (int trial = 0; trial < 8; ++trial) {
            int r = 3 + int(rng.below(40));
            int c = 3 + int(rng.below(40));
            Matrix a = Matrix::random(r, c, gf(k), rng);
            CHECK(rank(a) + kernel_basis(a).rows() == r);
            // kernel rows really annihilate
            Matrix kb = kernel_basis(a);
            if (kb.rows()) CHECK((kb * a).is_zero());
        }
    }
}

TEST_CASE("packed results match the naive serial oracle up to 64x64") {
    Rng rng = Rng::derive(2024, "test-oracle-small");
    for (int k : {1, 2, 3, 4}) {
        for (int trial = 0; trial < 25; ++trial) {
            int n = 1 + int(rng.below(64));
            int m = 1 + int(rng.below(64));
            Matrix a = Matrix::random(n, m, gf(k), rng);
            Matrix b = Matrix::random(m, n, gf(k), rng);
            NaiveMatrix na = NaiveMatrix::from_packed(a);
            NaiveMatrix nb = NaiveMatrix::from_packed(b);
            CHECK(naive_mul(na, nb).to_packed() == a * b);
            CHECK(naive_rank(na) == rank(a));
            CHECK(naive_kernel_dim(na) == kernel_basis(a).rows());
        }
    }
}

TEST_CASE("subspace lattice: sum, intersection, containment, quotient") {
    Rng rng = Rng::derive(5, "test-subspace");
    Matrix rows = Matrix::random(3, 8, gf(2), rng);
    Subspace u = Subspace::from_rows(rows);
    CHECK(subspace_sum(u, u).dim() == u.dim());
    CHECK(subspace_intersect(u, u).dim() == u.dim());
    CHECK(subspace_contains(u, u));

    Subspace full = Subspace::full(8, gf(2));
    CHECK(subspace_contains(full, u));
    Matrix q = quotient_basis(full, u);
    CHECK(q.rows() == 8 - u.dim());
    CHECK_THROWS_AS(quotient_basis(u, full), domain_error);

    // intersection is contained in both terms
    Matrix rows2 = Matrix::random(4, 8, gf(2), rng);
    Subspace v = Subspace::from_rows(rows2);
    Subspace w = subspace_intersect(u, v);
    CHECK(subspace_contains(u, w));
    CHECK(subspace_contains(v, w));
    CHECK(subspace_sum(u, v).dim() == u.dim() + v.dim() - w.dim());
}

TEST_CASE("spin closes a seed under actions") {
    // cyclic shift on F^6: a single unit vector spins to the full space
    Matrix shift = cycle_shift(6, gf(1));
    Matrix seed(1, 6, gf(1));
    seed.set(0, 0, 1);
    CHECK(spin(seed, {shift}).dim() == 6);

    // the all-ones vector is invariant
    Matrix ones(1, 6, gf(1));
    for (int i = 0; i < 6; ++i) ones.set(0, i, 1);
    CHECK(spin(ones, {shift}).dim() == 1);
}

TEST_CASE("min_poly: identity, 4-cycle, involution action over GF(4)") {
    CHECK(min_poly(Matrix::identity(3, gf(1))) == Poly(gf(1), {1, 1})); // x+1

    Poly p4 = min_poly(cycle_shift(4, gf(1)));
    CHECK(p4 == Poly(gf(1), {1, 0, 0, 0, 1})); // x^4 + 1 = (x+1)^4

    Matrix b = extend_scalars(involution_action_n6(gf(1)), gf(2));
    Poly pb = min_poly(b);
    CHECK(pb.degree() <= 2);
    // both eigenvalues lie in GF(4): every irreducible factor is linear
    for (const auto& [q, m] : factor_poly(pb)) CHECK(q.degree() == 1);
}

TEST_CASE("min_poly annihilates and no proper divisor does") {
    Rng rng = Rng::derive(9, "test-minpoly");
    for (int k : {1, 2}) {
        for (int trial = 0; trial < 6; ++trial) {
            int n = 2 + int(rng.below(12));
            Matrix a = Matrix::random(n, n, gf(k), rng);
            Poly p = min_poly(a);
            CHECK(p.eval(a).is_zero());
            for (const auto& [q, m] : factor_poly(p)) {
                (void)m;
                Poly reduced = p / q;
                CHECK(!reduced.eval(a).is_zero());
            }
        }
    }
}

TEST_CASE("factor_poly: Frobenius power, irreducibles, splitting over GF(4)") {
    Poly x4p1(gf(1), {1, 0, 0, 0, 1});
    auto f1 = factor_poly(x4p1);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].first == Poly(gf(1), {1, 1}));
    CHECK(f1[0].second == 4);

    CHECK(is_irreducible(Poly(gf(1), {1, 1, 1})));

    Poly over4(gf(2), {1, 1, 1});
    auto f2 = factor_poly(over4);
    REQUIRE(f2.size() == 2);
    CHECK(f2[0].first.degree() == 1);
    CHECK(f2[1].first.degree() == 1);
    // roots are omega and omega+1
    unsigned r1 = f2[0].first.coeff(0);
    unsigned r2 = f2[1].first.coeff(0);
    CHECK(((r1 == 2 && r2 == 3) || (r1 == 3 && r2 == 2)));
}

TEST_CASE("factor_poly re-multiplies exactly on random inputs") {
    Rng rng = Rng::derive(13, "test-factor");
    for (int k : {1, 2, 3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            int d = 1 + int(rng.below(14));
            std::vector<unsigned> cs(d + 1);
            for (auto& c : cs) c = unsigned(rng.below(gf(k).order()));
            if (cs[d] == 0) cs[d] = 1;
            Poly p(gf(k), std::move(cs));
            auto factors = factor_poly(p); // throws if re-multiplication fails
            Poly check = Poly::constant(gf(k), p.leading());
            for (auto& [q, m] : factors)
                for (int i = 0; i < m; ++i) check = check * q;
            CHECK(check == p);
        }
    }
}

TEST_CASE("extend_scalars preserves rank and the identity") {
    CHECK(extend_scalars(Matrix::identity(5, gf(1)), gf(2)) ==
          Matrix::identity(5, gf(2)));
    Rng rng = Rng::derive(17, "test-extend");
    Matrix a = Matrix::random(24, 30, gf(1), rng);
    CHECK(rank(a) == rank(extend_scalars(a, gf(2))));
    CHECK(rank(a) == rank(extend_scalars(a, gf(4))));
}

TEST_CASE("fixture round trip is bit-exact") {
    Rng rng = Rng::derive(23, "test-fixture");
    for (int k : {1, 2, 3, 4}) {
        Matrix a = Matrix::random(7, 19, gf(k), rng);
        std::string text = matrix_to_fixture(a);
        Matrix b = matrix_from_fixture(text);
        CHECK(a == b);
        CHECK(matrix_to_fixture(b) == text);
    }
    CHECK_THROWS_AS(matrix_from_fixture("2 2 9\n00\n00\n"), parse_error);
    CHECK_THROWS_AS(matrix_from_fixture("1 2 1\n5x\n"), parse_error);
}
