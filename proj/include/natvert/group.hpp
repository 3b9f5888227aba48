#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "natvert/perm.hpp"
#include "natvert/rng.hpp"

namespace natvert {

using u128 = unsigned __int128;
std::string u128_to_string(u128 v);
bool is_power_of_two(u128 v);
int log2_exact(u128 v);

// Permutation group with a stabilizer chain. Chains are built with seeded
// random sifting and then either certified by a full deterministic Schreier
// generator sweep, or (when the caller knows the target order) accepted as
// soon as the chain order reaches it. Once constructed the group is
// immutable and safe for concurrent reads.
class PermGroup {
public:
    PermGroup() = default;

    static PermGroup from_generators(std::vector<Permutation> gens,
                                     std::uint64_t seed = 0);
    static PermGroup from_generators_known_order(std::vector<Permutation> gens,
                                                 u128 order,
                                                 std::uint64_t seed = 0);
    static PermGroup trivial(int degree);

    bool valid() const { return impl_ != nullptr; }
    int degree() const;
    const std::vector<Permutation>& generators() const;
    u128 order() const;
    bool is_2group() const { return is_power_of_two(order()); }

    bool contains(const Permutation& g) const;
    bool has_subgroup(const PermGroup& h) const; // h <= this
    bool same_group(const PermGroup& other) const;

    int chain_depth() const;
    int base_point(int level) const;
    const std::vector<int>& orbit(int level) const;                 // BFS order
    const Permutation& transversal_element(int level, int point) const;

    // Writes g as a product of transversal elements (deepest level first);
    // nullopt when g is not a member.
    std::optional<std::vector<std::pair<int, int>>> factor(const Permutation& g) const;

    // Unique minimal-base-image representative of the right coset (this)*g.
    Permutation canonical_coset_rep(const Permutation& g) const;

    // Every element exactly once, chain-word order. Return false from the
    // callback to stop early. Throws budget_error (naming the order) when
    // |G| exceeds the budget.
    void for_each_element(const std::function<bool(const Permutation&)>& fn,
                          std::uint64_t budget) const;
    std::vector<Permutation> elements(std::uint64_t budget) const;

    Permutation random_element(Rng& rng) const;

    std::vector<int> fixed_points() const;               // 0-based
    std::vector<std::vector<int>> orbit_partition() const;
    bool is_transitive() const;

private:
    std::shared_ptr<const struct PermGroupImpl> impl_;
};

PermGroup derived_subgroup(const PermGroup& g, std::uint64_t seed = 0);
// Frattini subgroup of a 2-group: normal closure of generator squares and
// commutators.
PermGroup frattini_2group(const PermGroup& g, std::uint64_t seed = 0);

// All maximal subgroups of the 2-group p that contain s, as preimages of
// the hyperplanes of p/Phi(p) containing the image of s. Deterministic
// (functional bit-pattern) order.
std::vector<PermGroup> maximal_subgroups_containing(const PermGroup& p,
                                                    const PermGroup& s,
                                                    std::uint64_t seed = 0);

// Exactly one representative per right coset of h in g, breadth-first over
// g's generators with canonical minimal-coset representatives. Throws
// budget_error naming the index when it exceeds the budget.
std::vector<Permutation> right_transversal(const PermGroup& g, const PermGroup& h,
                                           std::uint64_t budget);

struct ConjugacyResult {
    enum class Mode { equal, sylow_argument, exhaustive, compatible, incompatible };
    Mode mode;
    std::optional<Permutation> witness; // set for equal/sylow_argument/exhaustive
};

// Searches for g in `ambient` with a^g = b. Strategy order: (1) Sylow
// argument over the pointwise stabilizer of the fixed-point sets, (2)
// exhaustive search when |ambient| fits the budget, (3) invariant
// comparison only (orbit types and element-order profiles).
ConjugacyResult conjugacy_witness(const PermGroup& ambient, const PermGroup& a,
                                  const PermGroup& b, std::uint64_t element_budget);

} // namespace natvert
