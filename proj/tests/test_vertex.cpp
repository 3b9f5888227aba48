#include "doctest.h"

#include "natvert/constructions.hpp"
#include "natvert/errors.hpp"
#include "natvert/vertex.hpp"

using namespace natvert;

namespace {
Permutation P(const std::string& s, int n) { return Permutation::parse(s, n); }
} // namespace

TEST_CASE("relative trace basics") {
    NaturalModules nm8 = natural_modules(8, gf(1));
    NamedSubgroups ns8 = named_subgroups(8);
    GModule resQ = restrict_to(nm8.E, ns8.Q);

    // H = G: the transversal is a single coset and the trace is phi itself
    Matrix id6 = Matrix::identity(6, gf(1));
    auto tg = right_transversal(ns8.Q, ns8.Q, 10);
    CHECK(rel_trace(resQ, ns8.Q, id6, tg) == id6);

    // phi = id over an even index: the trace vanishes in characteristic 2
    auto tb = right_transversal(ns8.Q, ns8.Bp, 10);
    CHECK(tb.size() == 2);
    CHECK(rel_trace(resQ, ns8.Bp, id6, tb).is_zero());

    // a non-endomorphism is rejected
    Matrix notend(6, 6, gf(1));
    notend.set(0, 1, 1);
    CHECK_THROWS_AS(rel_trace(resQ, ns8.Q, notend, tg), domain_error);

    // the trace of an H-endomorphism commutes with all generator actions
    GModule resB = restrict_to(nm8.E, ns8.Bp);
    HomSpace hb = hom_space(resB, resB);
    for (const Matrix& phi : hb.basis) {
        Matrix tr = rel_trace(resQ, ns8.Bp, phi, tb);
        for (const Matrix& a : resQ.generator_actions()) CHECK(a * tr == tr * a);
    }
}

TEST_CASE("Higman test: Sylow subgroups, the n = 6 vertex, cyclic exclusions") {
    VertexOptions opts;

    // Sylow subgroups have odd index
    NaturalModules nm10 = natural_modules(10, gf(1));
    NamedSubgroups ns10 = named_subgroups(10);
    HigmanRecord sylow = is_rel_projective(nm10.E, ns10.Q, opts);
    CHECK(sylow.projective);
    CHECK(sylow.mode == "odd-index");

    // E_6 is relatively projective for the Klein subgroup of Remark 8.2
    NaturalModules nm6 = natural_modules(6, gf(1));
    Remark82Data r82 = remark82_data();
    HigmanRecord q = is_rel_projective(nm6.E, r82.Q, opts);
    CHECK(q.projective);
    CHECK(q.mode == "relative-trace");
    CHECK(q.index == 90);
    REQUIRE(q.combination.has_value());

    // ... but not for any of its three order-2 subgroups
    for (const Permutation& e : r82.Q.elements(10)) {
        if (e.is_identity()) continue;
        PermGroup c = PermGroup::from_generators({e});
        CHECK(!is_rel_projective(nm6.E, c, opts).projective);
    }

    // B_8' fails at the 2-group level (the identity is not a trace image)
    NaturalModules nm8 = natural_modules(8, gf(1));
    NamedSubgroups ns8 = named_subgroups(8);
    GModule resQ8 = restrict_to(nm8.E, ns8.Q);
    CHECK(!is_rel_projective(resQ8, ns8.Bp, opts).projective);
}

TEST_CASE("monotonicity: projectivity passes to overgroups") {
    // FV_4 is free, hence relatively projective for the whole chain
    PermGroup v4 = PermGroup::from_generators({P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
    PermGroup c2 = PermGroup::from_generators({P("(1,2)(3,4)", 4)});
    GModule reg = regular_module(v4, gf(1), 100);
    VertexOptions opts;
    CHECK(is_rel_projective(reg, PermGroup::trivial(4), opts).projective);
    CHECK(is_rel_projective(reg, c2, opts).projective);
    CHECK(is_rel_projective(reg, v4, opts).projective);
}

TEST_CASE("2-group descent: free, full-vertex and half-split modules") {
    VertexOptions opts;

    // the regular module of C_2 descends to the trivial vertex
    PermGroup c2 = PermGroup::from_generators({P("(1,2)", 2)});
    auto pr = vertex_source_pgroup(regular_module(c2, gf(1), 10), opts);
    REQUIRE(pr.complete);
    CHECK(pr.vertex.order() == 1);
    CHECK(pr.source.dim() == 1);

    // res_{Q_8}(E_8) keeps the full vertex and is its own source
    NaturalModules nm8 = natural_modules(8, gf(1));
    NamedSubgroups ns8 = named_subgroups(8);
    auto p8 = vertex_source_pgroup(restrict_to(nm8.E, ns8.Q), opts);
    REQUIRE(p8.complete);
    CHECK(p8.vertex.order() == 64);
    CHECK(p8.vertex.same_group(ns8.Q));
    CHECK(p8.source.dim() == 6);
    REQUIRE(p8.trace.size() == 1);
    CHECK(p8.trace[0].size() == 7); // all maximal subgroups tested and rejected
    for (const auto& step : p8.trace[0]) CHECK(!step.projective);

    // res_{Q_6}(E_6) over GF(4) descends one level to the Klein vertex
    NaturalModules nm6 = natural_modules(6, gf(1));
    Remark82Data r82 = remark82_data();
    GModule resQ6 = extend_module_scalars(restrict_to(nm6.E, r82.Q6), gf(2));
    auto p6 = vertex_source_pgroup(resQ6, opts);
    REQUIRE(p6.complete);
    CHECK(p6.vertex.order() == 4);
    CHECK(p6.source.dim() == 2);
    CHECK(p6.vertex.same_group(r82.Q));

    // decomposable input is rejected
    CHECK_THROWS_AS(
        vertex_source_pgroup(direct_sum(regular_module(c2, gf(1), 10),
                                        trivial_module(c2, gf(1))),
                             opts),
        domain_error);
}

TEST_CASE("descent arithmetic: dimension halves at every accepted step") {
    // FV_4 descends twice, halving 4 -> 2 -> 1
    PermGroup v4 = PermGroup::from_generators({P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
    VertexOptions opts;
    auto pr = vertex_source_pgroup(regular_module(v4, gf(1), 100), opts);
    REQUIRE(pr.complete);
    CHECK(pr.vertex.order() == 1);
    CHECK(pr.source.dim() == 1);
    // two accepted levels (4 -> 2 -> 1); the trivial group ends the descent
    CHECK(pr.trace.size() == 2);
    CHECK(pr.trace[0].size() == 3);
}

TEST_CASE("the Mackey overgroup filter holds where projectivity is admitted") {
    // at n = 6 the only maximal subgroup of Q_6 admitting projectivity
    // contains <Phi(Q_6), Q_2> (Q_2 is trivial here, Phi is automatic), and
    // it is exactly the expected Klein subgroup
    NaturalModules nm6 = natural_modules(6, gf(1));
    Remark82Data r82 = remark82_data();
    GModule resQ6 = extend_module_scalars(restrict_to(nm6.E, r82.Q6), gf(2));
    VertexOptions opts;
    auto maxsubs = maximal_subgroups_containing(r82.Q6, PermGroup::trivial(6));
    int admitted = 0;
    for (const auto& r : maxsubs) {
        if (is_rel_projective(resQ6, r, opts).projective) {
            ++admitted;
            CHECK(r.same_group(r82.Q));
        }
    }
    CHECK(admitted == 1);
}

TEST_CASE("sandwich battery rows for small n") {
    VertexOptions opts;

    auto r3 = vertex_of_natural_simple(3, opts);
    REQUIRE(r3.complete);
    CHECK(r3.vertex_order == 1);
    CHECK(r3.source_dim == 1);
    CHECK(r3.trivial_source);

    auto r4 = vertex_of_natural_simple(4, opts);
    REQUIRE(r4.complete);
    CHECK(r4.vertex_order == 4);
    CHECK(r4.source_dim == 1);
    CHECK(r4.trivial_source);
    CHECK(r4.conjugacy_mode == "equal");

    auto r5 = vertex_of_natural_simple(5, opts);
    REQUIRE(r5.complete);
    CHECK(r5.vertex_order == 1);
    CHECK(r5.trivial_source);

    auto r6 = vertex_of_natural_simple(6, opts);
    REQUIRE(r6.complete);
    CHECK(r6.vertex_order == 4);
    CHECK(r6.source_dim == 2);
    CHECK(!r6.trivial_source);
    CHECK(r6.escalated);
    CHECK(r6.restriction_indecomposable);

    auto r7 = vertex_of_natural_simple(7, opts);
    REQUIRE(r7.complete);
    CHECK(r7.vertex_order == 4);
    CHECK(r7.source_dim == 1);
    CHECK(r7.trivial_source);

    auto r8 = vertex_of_natural_simple(8, opts);
    REQUIRE(r8.complete);
    CHECK(r8.vertex_order == 64);
    CHECK(r8.source_dim == 6);
    CHECK(!r8.trivial_source);
    CHECK(r8.restriction_indecomposable);
    CHECK(r8.conjugacy_mode == "equal");
}
