#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natvert/gmod.hpp"

namespace natvert {

struct DecompOptions {
    std::uint64_t seed = 0;
    std::uint64_t endo_enum_budget = 1u << 20; // max |End| for exhaustive search
    int max_field_k = 4;
    bool allow_escalation = true;
    int random_trials = 24;
};

enum class Locality { local, splits, unknown };

// Verdict of the indecomposability pipeline. A split carries a nontrivial
// module idempotent; a local verdict carries the absolute residue degree
// (End/rad isomorphic to GF(2^residue_degree)).
struct LocalityCertificate {
    Locality verdict = Locality::unknown;
    std::optional<Matrix> idempotent;
    int residue_degree = 0;
    std::string method;
};

LocalityCertificate is_indecomposable(const GModule& v,
                                      const DecompOptions& opts = {});

// Full direct-sum decomposition with inclusion/projection certificates.
// When a summand is local with residue field larger than the base field and
// escalation is allowed, the whole decomposition restarts over the residue
// field, and `escalated` records that.
struct DecompositionResult {
    bool complete = false;
    std::string failure;
    GModule ambient; // the input, over field_used
    std::vector<GModule> summands;
    std::vector<Matrix> inclusions;  // summand dim x ambient dim
    std::vector<Matrix> projections; // ambient dim x summand dim
    const Field* field_used = &gf(1);
    bool escalated = false;

    std::vector<int> summand_dims() const;
};

DecompositionResult decompose(const GModule& v, const DecompOptions& opts = {});

// Replay the inclusion/projection identities by direct matrix arithmetic.
bool verify_decomposition(const DecompositionResult& d);

struct SimplicityResult {
    enum class Status { simple, not_simple, unknown };
    Status status = Status::unknown;
    std::optional<Subspace> proper_submodule; // witness when not simple
};

// Norton-style simplicity test: spin null spaces of irreducible factors of
// minimal polynomials of seeded algebra elements, in the module and its
// transpose.
SimplicityResult is_simple(const GModule& v, const DecompOptions& opts = {});

// Multiset (sorted ascending) of composition factor dimensions; nullopt if
// a simplicity test was inconclusive.
std::optional<std::vector<int>> composition_factor_dims(
    const GModule& v, const DecompOptions& opts = {});

} // namespace natvert
