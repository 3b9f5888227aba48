#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "natvert/group.hpp"
#include "natvert/matrix.hpp"

namespace natvert {

// Module over a group algebra F[G]: one invertible action matrix per group
// generator, acting on row vectors from the right. Values are immutable
// after construction; the action cache for chain-factored elements is
// warmed explicitly before parallel use.
class GModule {
public:
    using NaturalAction = std::function<Matrix(const Permutation&)>;

    GModule() = default;
    GModule(PermGroup group, const Field& f, int dim,
            std::vector<Matrix> gen_actions, std::string label,
            NaturalAction natural = nullptr);

    const PermGroup& group() const { return group_; }
    int dim() const { return dim_; }
    const Field& field() const { return *field_; }
    const std::vector<Matrix>& generator_actions() const { return actions_; }
    const std::string& label() const { return label_; }
    const NaturalAction& natural_action() const { return natural_; }

    // Action of an arbitrary element of the group: the direct permutation
    // formula when this module carries one, otherwise a product of cached
    // transversal-element actions along the stabilizer chain.
    Matrix action_of(const Permutation& g) const;
    void warm_action_cache() const;

    // Spot-check that actions compose multiplicatively (random words).
    bool check_homomorphism(Rng& rng, int trials = 8) const;

private:
    PermGroup group_;
    const Field* field_ = &gf(1);
    int dim_ = 0;
    std::vector<Matrix> actions_;
    std::string label_;
    NaturalAction natural_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

GModule trivial_module(const PermGroup& g, const Field& f);
// Group algebra as a right module over itself; basis indexed by elements()
// in chain-word order.
GModule regular_module(const PermGroup& g, const Field& f,
                       std::uint64_t element_budget);

// Restriction to a subgroup (membership-verified); generator actions are
// obtained through the ambient module's action_of.
GModule restrict_to(const GModule& v, const PermGroup& h);

// Induction along H <= G by the transversal-block construction.
GModule induce_module(const GModule& w, const PermGroup& g,
                      std::uint64_t coset_budget);

GModule extend_module_scalars(const GModule& v, const Field& dst);
GModule direct_sum(const GModule& a, const GModule& b);
// Conjugate the module by an invertible matrix (basis rows of the new basis).
GModule change_basis(const GModule& v, const Matrix& t, const std::string& label);
// Module on an invariant subspace / on the quotient by one.
GModule submodule(const GModule& v, const Subspace& w, const std::string& label);
GModule quotient_module(const GModule& v, const Subspace& w, const std::string& label);

// Matrix of the norm element of <g> (the sum of all powers of the action).
Matrix norm_operator(const GModule& v, const Permutation& g);

// Socle and radical over a 2-group in characteristic 2: the common fixed
// space and the sum of the (g-1)-images.
Subspace socle_2group(const GModule& v);
Subspace radical_2group(const GModule& v);

// True iff the trivial module is a direct summand, i.e. soc(V) is not
// contained in rad(V).
bool trivial_summand_test(const GModule& v);

struct HomSpace {
    int dom_dim = 0;
    int cod_dim = 0;
    std::vector<Matrix> basis; // intertwiners X with A_g X = X B_g
    int dim() const { return int(basis.size()); }
};

// Solution space of the generator intertwining equations; requires equal
// groups (same generator lists) and fields.
HomSpace hom_space(const GModule& v, const GModule& w);

struct EndoAlgebra {
    const Field* field = &gf(1);
    int module_dim = 0;
    std::vector<Matrix> basis;
    Matrix identity_coords;                  // 1 x dim
    std::vector<std::vector<Matrix>> table;  // table[i][j] = coords of b_i * b_j

    int dim() const { return int(basis.size()); }
    Matrix element(const Matrix& coords) const;
    Matrix coords_of(const Matrix& m) const; // m must lie in the span
    bool is_commutative() const;
};

EndoAlgebra endo_algebra(const GModule& v);

struct IsoResult {
    enum class Status { isomorphic, not_isomorphic, not_found_within_budget };
    Status status;
    std::optional<Matrix> intertwiner; // invertible when isomorphic
};

// Certificate-producing isomorphism test: sweeps hom-space coefficient
// combinations (exhaustively when small, seeded otherwise).
IsoResult iso_test(const GModule& v, const GModule& w, std::uint64_t seed = 0);

} // namespace natvert
