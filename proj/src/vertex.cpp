#include "natvert/vertex.hpp"

#include <algorithm>

#include "natvert/constructions.hpp"
#include "natvert/errors.hpp"

namespace natvert {

Matrix rel_trace(const GModule& v, const PermGroup& h, const Matrix& phi,
                 const std::vector<Permutation>& transversal) {
    for (const Permutation& g : h.generators()) {
        Matrix a = v.action_of(g);
        if (a * phi != phi * a)
            throw domain_error("rel_trace: phi is not an H-endomorphism");
    }
    v.warm_action_cache();
    const int d = v.dim();
    Matrix acc(d, d, v.field());
    const int count = int(transversal.size());
#pragma omp parallel
    {
        Matrix local(d, d, v.field());
#pragma omp for schedule(static) nowait
        for (int i = 0; i < count; ++i) {
            Matrix p = v.action_of(transversal[i]);
            Matrix pinv = v.action_of(transversal[i].inverse());
            local = local + pinv * phi * p;
        }
#pragma omp critical
        acc = acc + local;
    }
    return acc;
}

HigmanRecord is_rel_projective(const GModule& v, const PermGroup& h,
                               const VertexOptions& opts) {
    const PermGroup& g = v.group();
    if (!g.has_subgroup(h))
        throw domain_error("is_rel_projective: H is not a subgroup");
    HigmanRecord rec;
    rec.index = g.order() / h.order();
    if (rec.index % 2 == 1) {
        // characteristic 2 and odd index: Tr_H^G(id) = [G:H] id = id
        rec.projective = true;
        rec.mode = "odd-index";
        return rec;
    }
    rec.mode = "relative-trace";
    auto transversal = right_transversal(g, h, opts.coset_budget);
    GModule res = restrict_to(v, h);
    HomSpace endo = hom_space(res, res);
    rec.endo_dim = endo.dim();
    if (endo.dim() == 0) return rec;

    v.warm_action_cache();
    const int d = v.dim();
    const int count = int(transversal.size());
    std::vector<Matrix> traces(endo.dim(), Matrix(d, d, v.field()));
#pragma omp parallel
    {
        std::vector<Matrix> local(endo.dim(), Matrix(d, d, v.field()));
#pragma omp for schedule(static) nowait
        for (int i = 0; i < count; ++i) {
            Matrix p = v.action_of(transversal[i]);
            Matrix pinv = v.action_of(transversal[i].inverse());
            for (int e = 0; e < endo.dim(); ++e)
                local[e] = local[e] + pinv * endo.basis[e] * p;
        }
#pragma omp critical
        {
            for (int e = 0; e < endo.dim(); ++e)
                traces[e] = traces[e] + local[e];
        }
    }
    Matrix rows(endo.dim(), d * d, v.field());
    for (int e = 0; e < endo.dim(); ++e) {
        Matrix vec = traces[e].vec();
        for (int c = 0; c < d * d; ++c)
            if (unsigned x = vec.get(0, c)) rows.set(e, c, x);
    }
    auto combo = solve_left(rows, Matrix::identity(d, v.field()).vec());
    if (combo) {
        rec.projective = true;
        rec.combination = *combo;
    }
    return rec;
}

namespace {

std::string gens_string(const PermGroup& g) {
    std::string s;
    for (const Permutation& p : g.generators()) {
        if (!s.empty()) s += " ";
        s += p.to_cycle_string();
    }
    return s.empty() ? "()" : s;
}

} // namespace

PgroupVertexResult vertex_source_pgroup(const GModule& v,
                                        const VertexOptions& opts) {
    PgroupVertexResult out;
    if (!v.group().is_2group())
        throw domain_error("vertex_source_pgroup: acting group is not a 2-group");

    GModule cur = v;
    // make the module absolutely indecomposable first, escalating while the
    // residue field is larger than the coefficient field
    for (;;) {
        LocalityCertificate cert = is_indecomposable(cur, opts.decomp());
        if (cert.verdict == Locality::splits)
            throw domain_error("vertex_source_pgroup: module is decomposable");
        if (cert.verdict == Locality::unknown) {
            out.failure = "locality test inconclusive";
            return out;
        }
        if (cert.residue_degree <= cur.field().k()) break;
        if (cert.residue_degree > opts.max_field_k) {
            out.failure = "escalation beyond the field cap requested";
            return out;
        }
        cur = extend_module_scalars(cur, gf(cert.residue_degree));
        out.escalated = true;
    }

    PermGroup p = v.group();
    while (true) {
        if (p.order() == 1) break;
        auto maxsubs = maximal_subgroups_containing(p, PermGroup::trivial(p.degree()),
                                                    opts.seed);
        std::vector<DescentStep> level(maxsubs.size());
        std::vector<HigmanRecord> recs(maxsubs.size());
        const int m = int(maxsubs.size());
        cur.warm_action_cache(); // before the parallel region
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < m; ++i) {
            VertexOptions sub_opts = opts;
            sub_opts.seed = opts.seed ^ (0xa5a5u + i);
            recs[i] = is_rel_projective(cur, maxsubs[i], sub_opts);
        }
        int accepted = -1;
        for (int i = 0; i < m; ++i) {
            level[i].subgroup_order = maxsubs[i].order();
            level[i].subgroup_gens = gens_string(maxsubs[i]);
            level[i].projective = recs[i].projective;
            if (recs[i].projective && accepted < 0) {
                accepted = i;
                level[i].taken = true;
            }
        }
        out.trace.push_back(std::move(level));
        if (accepted < 0) break;

        const PermGroup& r = maxsubs[accepted];
        DecompositionResult dr = decompose(restrict_to(cur, r), opts.decomp());
        if (!dr.complete) {
            out.failure = "descent decomposition failed: " + dr.failure;
            return out;
        }
        if (dr.escalated) {
            cur = extend_module_scalars(cur, *dr.field_used);
            out.escalated = true;
        }
        // Green's step: the module is induced from a half-dimensional
        // indecomposable summand of its restriction
        bool found = false;
        for (const GModule& w : dr.summands) {
            if (2 * w.dim() != cur.dim()) continue;
            GModule ind = induce_module(w, p, opts.coset_budget);
            IsoResult iso = iso_test(ind, cur, opts.seed);
            if (iso.status == IsoResult::Status::isomorphic) {
                cur = w;
                p = r;
                found = true;
                break;
            }
        }
        if (!found) {
            out.failure = "descent found no half-dimensional complement";
            return out;
        }
    }
    out.complete = true;
    out.vertex = p;
    out.source = cur;
    out.field_k_used = cur.field().k();
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct SandwichInput {
    GModule big;              // E over A_n (or D over S_n)
    PermGroup sylow;          // Q_n (or P_n)
    PermGroup expected;       // the theorem's candidate vertex
    std::string expected_label;
    std::vector<PermGroup> exclusions; // subgroups that must fail the Higman test
};

VertexReport run_sandwich(int n, const SandwichInput& in, const VertexOptions& opts) {
    VertexReport rep;
    rep.n = n;
    rep.module_label = in.big.label();
    rep.expected = in.expected;
    rep.expected_label = in.expected_label;

    auto fail = [&](const std::string& stage) -> VertexReport& {
        rep.failure_stage = stage;
        return rep;
    };

    // (a)+(b): restrict to the Sylow 2-subgroup and decompose
    GModule res = restrict_to(in.big, in.sylow);
    DecompositionResult dr = decompose(res, opts.decomp());
    if (!dr.complete) return fail("sylow-restriction decomposition: " + dr.failure);
    rep.restriction_indecomposable = dr.summands.size() == 1;
    rep.escalated = dr.escalated;
    rep.field_k_used = dr.field_used->k();

    // (c)+(d): vertex of every summand; the maximal order is the lower bound
    u128 lower = 0;
    PermGroup lower_vertex;
    for (const GModule& s : dr.summands) {
        PgroupVertexResult pv = vertex_source_pgroup(s, opts);
        if (!pv.complete) return fail("summand descent: " + pv.failure);
        rep.escalated |= pv.escalated;
        if (pv.vertex.order() > lower) {
            lower = pv.vertex.order();
            lower_vertex = pv.vertex;
            rep.descent_trace = pv.trace;
        }
    }
    rep.vertex = lower_vertex;
    rep.vertex_order = lower;

    // (e): Higman upper bound at the named candidate
    rep.upper = is_rel_projective(in.big, in.expected, opts);
    rep.checks.push_back({"higman-upper(" + in.expected_label + ")",
                          rep.upper.projective, rep.upper.mode});
    if (!rep.upper.projective) return fail("upper bound: candidate not projective");
    for (std::size_t i = 0; i < in.exclusions.size(); ++i) {
        HigmanRecord ex = is_rel_projective(in.big, in.exclusions[i], opts);
        rep.checks.push_back({"higman-exclusion-" + std::to_string(i + 1),
                              !ex.projective,
                              "order " + u128_to_string(in.exclusions[i].order())});
        if (ex.projective) return fail("exclusion subgroup admits projectivity");
    }

    // (f): orders must meet
    if (lower != in.expected.order())
        return fail("sandwich gap: lower " + u128_to_string(lower) + " vs |C| " +
                    u128_to_string(in.expected.order()));

    PermGroup ambient = in.big.group();
    ConjugacyResult conj =
        conjugacy_witness(ambient, rep.vertex, in.expected, opts.element_budget);
    switch (conj.mode) {
        case ConjugacyResult::Mode::equal: rep.conjugacy_mode = "equal"; break;
        case ConjugacyResult::Mode::sylow_argument:
            rep.conjugacy_mode = "sylow-argument";
            break;
        case ConjugacyResult::Mode::exhaustive:
            rep.conjugacy_mode = "exhaustive";
            break;
        case ConjugacyResult::Mode::compatible:
            rep.conjugacy_mode = "invariant-compatible";
            break;
        case ConjugacyResult::Mode::incompatible:
            rep.conjugacy_mode = "incompatible";
            break;
    }
    rep.witness = conj.witness;
    rep.checks.push_back({"vertex-conjugacy", conj.mode != ConjugacyResult::Mode::incompatible,
                          rep.conjugacy_mode});
    if (conj.mode == ConjugacyResult::Mode::incompatible)
        return fail("computed vertex is not conjugate to the candidate");

    // source: a summand of the restriction to the candidate with full vertex
    GModule res_c = restrict_to(in.big, in.expected);
    rep.trivial_source = in.expected.order() == 1 ? true : trivial_summand_test(res_c);
    if (rep.trivial_source) {
        rep.source_dim = 1;
    } else {
        DecompositionResult dc = decompose(res_c, opts.decomp());
        if (!dc.complete) return fail("source decomposition: " + dc.failure);
        rep.escalated |= dc.escalated;
        int dim = 0;
        for (const GModule& s : dc.summands) {
            PgroupVertexResult pv = vertex_source_pgroup(s, opts);
            if (pv.complete && pv.vertex.order() == in.expected.order()) {
                dim = s.dim();
                break;
            }
        }
        if (!dim) return fail("no summand of the candidate restriction has full vertex");
        rep.source_dim = dim;
    }
    rep.complete = true;
    return rep;
}

} // namespace

VertexReport vertex_of_natural_simple(int n, const VertexOptions& opts) {
    if (n < 3) throw domain_error("vertex_of_natural_simple: n must be at least 3");
    NaturalModules nm = natural_modules(n, gf(1), opts.seed);
    SandwichInput in;
    in.big = nm.E;
    in.sylow = n % 2 ? embedded_sylow_alt(n - 1, n, opts.seed) : sylow_alt(n, opts.seed);

    if (n % 2) {
        in.expected = embedded_sylow_alt(n - 3, n, opts.seed);
        in.expected_label = "Sylow2(A" + std::to_string(n - 3) + ")";
    } else if (n == 6) {
        in.expected = PermGroup::from_generators(
            {Permutation::parse("(1,2)(3,4)", 6), Permutation::parse("(3,4)(5,6)", 6)},
            opts.seed);
        in.expected_label = "<(1,2)(3,4),(3,4)(5,6)>";
        auto elems = in.expected.elements(8);
        for (const Permutation& e : elems)
            if (!e.is_identity())
                in.exclusions.push_back(PermGroup::from_generators({e}, opts.seed));
    } else if (n == 4) {
        in.expected = in.sylow;
        in.expected_label = "Sylow2(A4)";
    } else {
        in.expected = in.sylow;
        in.expected_label = "Q" + std::to_string(n);
    }
    return run_sandwich(n, in, opts);
}

VertexReport vertex_of_natural_simple_sym(int n, const VertexOptions& opts) {
    if (n < 4 || n % 2) throw domain_error("sym battery: n must be even, at least 4");
    NaturalModules nm = natural_modules(n, gf(1), opts.seed);
    SandwichInput in;
    in.big = nm.D;
    in.sylow = sylow_sym(n, opts.seed);
    in.expected = in.sylow;
    in.expected_label = "P" + std::to_string(n);
    return run_sandwich(n, in, opts);
}

} // namespace natvert
