#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natvert/decomp.hpp"
#include "natvert/gmod.hpp"
#include "natvert/group.hpp"

namespace natvert {

struct VertexOptions {
    std::uint64_t seed = 0;
    std::uint64_t coset_budget = 50'000'000;
    std::uint64_t element_budget = 1u << 20;
    std::uint64_t endo_enum_budget = 1u << 20;
    int max_field_k = 4;
    int base_field_k = 1;

    DecompOptions decomp() const {
        DecompOptions d;
        d.seed = seed;
        d.endo_enum_budget = endo_enum_budget;
        d.max_field_k = max_field_k;
        return d;
    }
};

// Relative trace Tr_H^G(phi) = sum over the transversal of the conjugated
// endomorphism; phi must be an H-endomorphism of res_H(V). The accumulation
// runs as a chunked parallel reduction; the sum is exact and independent of
// the chunking.
Matrix rel_trace(const GModule& v, const PermGroup& h, const Matrix& phi,
                 const std::vector<Permutation>& transversal);

struct HigmanRecord {
    bool projective = false;
    std::string mode;   // "odd-index" or "relative-trace"
    u128 index = 0;
    int endo_dim = -1;  // dim End_FH(res V) when computed
    std::optional<Matrix> combination; // coords over the End basis
};

// Higman's criterion: V is relatively H-projective iff the identity lies in
// the span of the relative traces of an End_FH(res V) basis. Subgroups of
// odd index short-circuit through Tr(id) = [G:H] id = id.
HigmanRecord is_rel_projective(const GModule& v, const PermGroup& h,
                               const VertexOptions& opts = {});

struct DescentStep {
    u128 subgroup_order = 0;
    std::string subgroup_gens;
    bool projective = false;
    bool taken = false;
};

struct PgroupVertexResult {
    bool complete = false;
    std::string failure;
    PermGroup vertex;
    GModule source;
    bool escalated = false;
    int field_k_used = 1;
    std::vector<std::vector<DescentStep>> trace; // tested subgroups per level
};

// Vertex and source of an indecomposable module over a 2-group by maximal
// subgroup descent: an accepted Higman test at R yields V = ind_R(W) for a
// half-dimensional summand W of res_R(V) (validated by an explicit
// intertwiner), and the recursion continues on (R, W).
PgroupVertexResult vertex_source_pgroup(const GModule& v,
                                        const VertexOptions& opts = {});

struct CheckEntry {
    std::string name;
    bool pass = false;
    std::string details;
};

struct VertexReport {
    int n = 0;
    std::string module_label;
    bool complete = false;
    std::string failure_stage;

    bool restriction_indecomposable = false;
    bool escalated = false;
    int field_k_used = 1;

    u128 vertex_order = 0;
    PermGroup vertex;           // computed from the descent side
    PermGroup expected;         // the candidate the theorem names
    std::string expected_label;
    std::string conjugacy_mode; // equal / sylow-argument / exhaustive / ...
    std::optional<Permutation> witness;

    int source_dim = 0;
    bool trivial_source = false;

    HigmanRecord upper; // Higman test at the expected candidate
    std::vector<std::vector<DescentStep>> descent_trace;
    std::vector<CheckEntry> checks;
};

// The sandwich battery for the natural simple module of A_n: restrict to
// the Sylow 2-subgroup, compute summand vertices (lower bound), match the
// Higman test at the named candidate (upper bound), then identify the
// conjugacy class and the source.
VertexReport vertex_of_natural_simple(int n, const VertexOptions& opts = {});

// The same sandwich for D over S_n with P_n in place of Q_n (even n that is
// not a 2-power).
VertexReport vertex_of_natural_simple_sym(int n, const VertexOptions& opts = {});

} // namespace natvert
