#include "doctest.h"

#include "natvert/constructions.hpp"
#include "natvert/decomp.hpp"
#include "natvert/errors.hpp"
#include "natvert/gmod.hpp"

using namespace natvert;

namespace {
Permutation P(const std::string& s, int n) { return Permutation::parse(s, n); }

Matrix gamma_to_d(const Matrix& v) { return mprime_vector_to_d(m_vector_to_mprime(v)); }

// H' = (A_{m} x A_{m} x S_2) cap A_n for n = 2m+2 profiles, per the block
// layout {1..m}, {m+1..2m}, {n-1, n}
PermGroup hprime_group(int n) {
    const int m = (n - 2) / 2;
    std::vector<Permutation> gens;
    auto cyc3 = [&](int a, int b, int c) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = i;
        img[a] = b;
        img[b] = c;
        img[c] = a;
        return Permutation(img);
    };
    for (int i = 0; i + 2 < m; ++i) gens.push_back(cyc3(i, i + 1, i + 2));
    for (int i = 0; i + 2 < m; ++i) gens.push_back(cyc3(m + i, m + i + 1, m + i + 2));
    gens.push_back(P("(1,2)(" + std::to_string(m + 1) + "," + std::to_string(m + 2) + ")", n));
    gens.push_back(P("(1,2)(" + std::to_string(n - 1) + "," + std::to_string(n) + ")", n));
    return PermGroup::from_generators(gens);
}
} // namespace

TEST_CASE("restriction basics") {
    NaturalModules nm = natural_modules(10, gf(1));
    PermGroup trivial = PermGroup::trivial(10);
    GModule res = restrict_to(nm.E, trivial);
    CHECK(res.dim() == 8);
    CHECK(res.generator_actions().empty());

    // restricting twice equals restricting once (same generator actions)
    NamedSubgroups ns = named_subgroups(10);
    GModule resQ = restrict_to(nm.E, ns.Q);
    GModule resY1 = restrict_to(resQ, ns.Yp);
    GModule resY2 = restrict_to(nm.E, ns.Yp);
    REQUIRE(resY1.generator_actions().size() == resY2.generator_actions().size());
    for (std::size_t i = 0; i < resY1.generator_actions().size(); ++i)
        CHECK(resY1.generator_actions()[i] == resY2.generator_actions()[i]);

    PermGroup s3 = symmetric_group(3);
    CHECK_THROWS_AS(restrict_to(nm.E, s3.has_subgroup(s3) ? symmetric_group(10) : s3),
                    domain_error); // S_10 is not inside A_10
}

TEST_CASE("induction: dimensions, regular modules, Frobenius reciprocity") {
    PermGroup v4 = PermGroup::from_generators({P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
    PermGroup c2 = PermGroup::from_generators({P("(1,2)(3,4)", 4)});
    GModule regC2 = regular_module(c2, gf(1), 100);
    GModule ind = induce_module(regC2, v4, 100);
    CHECK(ind.dim() == 4); // [G:H] * dim W
    GModule regV4 = regular_module(v4, gf(1), 100);
    CHECK(iso_test(ind, regV4).status == IsoResult::Status::isomorphic);

    // dim hom(ind W, V) = dim hom(W, res V)
    NaturalModules nm6 = natural_modules(6, gf(1));
    NamedSubgroups ns6 = named_subgroups(6);
    GModule resQ6 = restrict_to(nm6.E, ns6.Q);
    auto maxsubs = maximal_subgroups_containing(ns6.Q, PermGroup::trivial(6));
    for (const PermGroup& r : maxsubs) {
        GModule resR = restrict_to(nm6.E, r);
        GModule trivR = trivial_module(r, gf(1));
        GModule indT = induce_module(trivR, ns6.Q, 100);
        CHECK(hom_space(indT, resQ6).dim() == hom_space(trivR, resR).dim());
        CHECK(hom_space(resQ6, indT).dim() == hom_space(resR, trivR).dim());
    }
}

TEST_CASE("norm operators: kernel dimensions from the kernel propositions") {
    // n = 14: the norm of y'_8 on D has kernel of codimension 1, image <delta_1+>
    NaturalModules nm14 = natural_modules(14, gf(1));
    NamedSubgroups ns14 = named_subgroups(14);
    Matrix norm = norm_operator(nm14.D, ns14.yp[0]);
    CHECK(ns14.yp[0].order() == 8);
    Matrix ker = kernel_basis(norm);
    CHECK(ker.rows() == 11); // dim D - 1
    DistinguishedVectors dv14 = distinguished_vectors(14, gf(1));
    Subspace image = Subspace::from_rows(norm);
    CHECK(image.dim() == 1);
    CHECK(subspace_contains_vector(image, gamma_to_d(dv14.block[0])));

    // j = l with n_l > 2: codimension 2 (n = 12, y'_4 = y_4 * y_4 = x_4... use y'_l)
    NaturalModules nm12 = natural_modules(12, gf(1));
    NamedSubgroups ns12 = named_subgroups(12);
    Matrix norm_l = norm_operator(nm12.D, ns12.yp[1]);
    CHECK(kernel_basis(norm_l).rows() == 8); // dim D - 2
    DistinguishedVectors dv12 = distinguished_vectors(12, gf(1));
    Subspace im_l = Subspace::from_rows(norm_l);
    CHECK(im_l.dim() == 2);
    CHECK(subspace_contains_vector(im_l, gamma_to_d(dv12.half1[1])));
    CHECK(subspace_contains_vector(im_l, gamma_to_d(dv12.half2[1])));

    // norm of the identity is the identity
    Matrix nid = norm_operator(nm12.D, Permutation::identity(12));
    CHECK(nid.is_identity());
    CHECK(kernel_basis(nid).rows() == 0);

    // x_{n_j}^+ kernels have codimension 2 for every block with n_j > 2
    for (int n : {12, 14}) {
        NaturalModules nm = natural_modules(n, gf(1));
        NamedSubgroups ns = named_subgroups(n);
        for (int j = 0; j < ns.profile.l(); ++j) {
            if (ns.profile.parts[j] <= 2) continue;
            Matrix nx = norm_operator(nm.D, ns.x[j]);
            CHECK(kernel_basis(nx).rows() == nm.D.dim() - 2);
        }
    }

    // norm(g) * (action(g) - 1) = 0
    Rng rng = Rng::derive(77, "norm-prop");
    for (int t = 0; t < 5; ++t) {
        Permutation g = ns14.Q.random_element(rng);
        Matrix nrm = norm_operator(restrict_to(nm14.E, ns14.Q), g);
        Matrix am1 = restrict_to(nm14.E, ns14.Q).action_of(g) +
                     Matrix::identity(12, gf(1));
        CHECK((nrm * am1).is_zero());
    }
}

TEST_CASE("socles of the Y' restrictions match the socle proposition") {
    // n = 14 (l = 3): socle basis {delta_1+, delta_2+}
    NaturalModules nm14 = natural_modules(14, gf(1));
    NamedSubgroups ns14 = named_subgroups(14);
    GModule res14 = restrict_to(nm14.E, ns14.Yp);
    Subspace soc14 = socle_2group(res14);
    CHECK(soc14.dim() == 2);
    DistinguishedVectors dv14 = distinguished_vectors(14, gf(1));
    CHECK(subspace_contains_vector(soc14, gamma_to_d(dv14.block[0])));
    CHECK(subspace_contains_vector(soc14, gamma_to_d(dv14.block[1])));

    // n = 12 (l = 2, n_l > 2): socle basis {delta_0+, delta_1+}
    NaturalModules nm12 = natural_modules(12, gf(1));
    NamedSubgroups ns12 = named_subgroups(12);
    GModule res12 = restrict_to(nm12.E, ns12.Yp);
    Subspace soc12 = socle_2group(res12);
    CHECK(soc12.dim() == 2);
    DistinguishedVectors dv12 = distinguished_vectors(12, gf(1));
    CHECK(subspace_contains_vector(soc12, gamma_to_d(dv12.zero_plus)));
    CHECK(subspace_contains_vector(soc12, gamma_to_d(dv12.block[0])));

    // n = 10 (l = 2, n_l = 2): the restriction is the regular module of Y'
    NaturalModules nm10 = natural_modules(10, gf(1));
    NamedSubgroups ns10 = named_subgroups(10);
    GModule res10 = restrict_to(nm10.E, ns10.Yp);
    CHECK(ns10.Yp.order() == 8);
    Subspace soc10 = socle_2group(res10);
    CHECK(soc10.dim() == 1);
    DistinguishedVectors dv10 = distinguished_vectors(10, gf(1));
    CHECK(subspace_contains_vector(soc10, gamma_to_d(dv10.block[0])));
    GModule reg = regular_module(ns10.Yp, gf(1), 100);
    CHECK(iso_test(res10, reg).status == IsoResult::Status::isomorphic);
}

TEST_CASE("hom spaces: endomorphism dimensions from the paper") {
    NaturalModules nm10 = natural_modules(10, gf(1));

    // End over A_10 is one-dimensional (absolute simplicity)
    CHECK(hom_space(nm10.E, nm10.E).dim() == 1);

    // End over H' has dimension 5
    PermGroup hp = hprime_group(10);
    CHECK(nm10.E.group().has_subgroup(hp));
    GModule resH = restrict_to(nm10.E, hp);
    CHECK(hom_space(resH, resH).dim() == 5);

    // Hom(trivial, M) is one-dimensional for even n
    GModule trivS = trivial_module(nm10.M.group(), gf(1));
    CHECK(hom_space(trivS, nm10.M).dim() == 1);
    // soc M = M'' and soc(M/M'') = M'/M'': no trivial in M/M'', no D in M
    CHECK(hom_space(nm10.D, nm10.M).dim() == 0);
    Matrix gplus(1, 10, gf(1));
    for (int i = 0; i < 10; ++i) gplus.set(0, i, 1);
    GModule mQuot = quotient_module(nm10.M, Subspace::from_rows(gplus), "M/M''");
    CHECK(hom_space(trivS, mQuot).dim() == 0);
}

TEST_CASE("endo algebra structure: the H' endomorphism ring at n = 10") {
    NaturalModules nm10 = natural_modules(10, gf(1));
    PermGroup hp = hprime_group(10);
    GModule resH = restrict_to(nm10.E, hp);
    EndoAlgebra alg = endo_algebra(resH);
    CHECK(alg.dim() == 5);
    CHECK(alg.is_commutative());
    // the span of the nilpotent part has dimension 4: count nilpotent basis
    // combinations via the identity coordinates
    int nilpotent = 0;
    for (int i = 0; i < alg.dim(); ++i) {
        Matrix e = alg.basis[i];
        Matrix p = e;
        for (int it = 0; it < 4; ++it) p = p * p;
        if (p.is_zero()) ++nilpotent;
    }
    CHECK(alg.element(alg.identity_coords).is_identity());

    // End of the regular module of C_2: dimension 2, local
    PermGroup c2 = PermGroup::from_generators({P("(1,2)", 2)});
    GModule reg = regular_module(c2, gf(1), 10);
    EndoAlgebra ec2 = endo_algebra(reg);
    CHECK(ec2.dim() == 2);
}

TEST_CASE("iso tests produce certificates") {
    NaturalModules nm10 = natural_modules(10, gf(1));
    auto self = iso_test(nm10.E, nm10.E);
    REQUIRE(self.status == IsoResult::Status::isomorphic);
    CHECK(invert(*self.intertwiner).has_value());

    // the two summands of res_{X_8}(E_10) are isomorphic to the regular
    // module of X_8 (checked via decompose downstream); here: module vs a
    // basis-changed copy of itself
    Rng rng = Rng::derive(5, "iso-basis");
    NamedSubgroups ns10 = named_subgroups(10);
    GModule resQ = restrict_to(nm10.E, ns10.Q);
    Matrix t = Matrix::random(8, 8, gf(1), rng);
    while (!invert(t)) t = Matrix::random(8, 8, gf(1), rng);
    GModule moved = change_basis(resQ, t, "moved");
    auto res = iso_test(resQ, moved);
    REQUIRE(res.status == IsoResult::Status::isomorphic);
    const Matrix& x = *res.intertwiner;
    for (std::size_t i = 0; i < resQ.generator_actions().size(); ++i)
        CHECK(resQ.generator_actions()[i] * x == x * moved.generator_actions()[i]);

    // non-isomorphic: trivial vs sign-free one-dimensional... use dims
    GModule trivQ = trivial_module(ns10.Q, gf(1));
    CHECK(iso_test(trivQ, resQ).status == IsoResult::Status::not_isomorphic);
}

TEST_CASE("trivial summand detection over 2-groups") {
    // res of E_7 to Q_4 contains a trivial direct summand
    NaturalModules nm7 = natural_modules(7, gf(1));
    PermGroup q4in7 = embedded_sylow_alt(4, 7);
    CHECK(trivial_summand_test(restrict_to(nm7.E, q4in7)));

    // the regular module of a nontrivial 2-group is indecomposable: its
    // socle is the norm line inside the radical, so no trivial summand
    PermGroup v4 = PermGroup::from_generators({P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
    CHECK(!trivial_summand_test(regular_module(v4, gf(1), 100)));
    // a direct sum with an explicit trivial piece does have one
    CHECK(trivial_summand_test(
        direct_sum(regular_module(v4, gf(1), 100), trivial_module(v4, gf(1)))));

    // res of E_8 to Q_8: the fixed space lies inside the radical
    NaturalModules nm8 = natural_modules(8, gf(1));
    NamedSubgroups ns8 = named_subgroups(8);
    CHECK(!trivial_summand_test(restrict_to(nm8.E, ns8.Q)));

    PermGroup s3 = symmetric_group(3);
    CHECK_THROWS_AS(trivial_summand_test(trivial_module(s3, gf(1))), domain_error);
}
