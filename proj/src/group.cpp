#include "natvert/group.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "natvert/errors.hpp"

namespace natvert {

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s += char('0' + int(v % 10));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

bool is_power_of_two(u128 v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(u128 v) {
    if (!is_power_of_two(v)) throw domain_error("log2_exact: not a power of two");
    int e = 0;
    while (v > 1) {
        v >>= 1;
        ++e;
    }
    return e;
}

// ---------------------------------------------------------------------------

struct PermGroupImpl {
    int degree = 0;
    std::vector<Permutation> gens; // the caller's generators, identities dropped

    struct Level {
        int base = 0;
        std::vector<Permutation> gens; // strong generators living at this level
        std::vector<int> orbit;        // BFS order, orbit[0] == base
        std::vector<int> slot;         // point -> orbit index + 1, 0 if absent
        std::vector<Permutation> transversal; // parallel to orbit; base^u = point
    };
    std::vector<Level> levels;
    u128 order = 1;
};

namespace {

using Level = PermGroupImpl::Level;

int first_moved_point(const Permutation& g) {
    for (int p = 0; p < g.degree(); ++p)
        if (g.apply(p) != p) return p;
    return -1;
}

class ChainBuilder {
public:
    ChainBuilder(int degree, Rng rng) : degree_(degree), rng_(rng) {}

    std::vector<Level> levels;

    u128 chain_order() const {
        u128 o = 1;
        for (const Level& l : levels) o *= u128(l.orbit.size());
        return o;
    }

    // Strip g starting at `start`; returns the residue and the level where
    // stripping stopped (== levels.size() when all levels were passed).
    std::pair<Permutation, int> sift(Permutation g, int start) const {
        for (int i = start; i < int(levels.size()); ++i) {
            const Level& l = levels[i];
            int p = g.apply(l.base);
            if (p == l.base) continue;
            int s = l.slot[p];
            if (!s) return {std::move(g), i};
            g = g * l.transversal[s - 1].inverse();
        }
        return {std::move(g), int(levels.size())};
    }

    bool add_element(const Permutation& g) {
        auto [res, lvl] = sift(g, 0);
        if (res.is_identity()) return false;
        insert_strong(std::move(res), lvl);
        return true;
    }

    // One full deterministic Schreier-generator sweep; returns true if the
    // chain changed. A clean sweep certifies the chain.
    bool schreier_sweep() {
        bool changed = false;
        for (int i = 0; i < int(levels.size()); ++i) {
            // orbit and generator lists may grow while we scan them
            for (std::size_t oi = 0; oi < levels[i].orbit.size(); ++oi) {
                for (std::size_t gi = 0; gi < levels[i].gens.size(); ++gi) {
                    int p = levels[i].orbit[oi];
                    Permutation u = levels[i].transversal[oi];
                    Permutation s = levels[i].gens[gi];
                    int q = s.apply(p);
                    int qs = levels[i].slot[q];
                    if (!qs) throw domain_error("chain: orbit not closed"); // unreachable
                    Permutation schreier =
                        u * s * levels[i].transversal[qs - 1].inverse();
                    auto [res, lvl] = sift(std::move(schreier), i + 1);
                    if (!res.is_identity()) {
                        insert_strong(std::move(res), lvl);
                        changed = true;
                    }
                }
            }
        }
        return changed;
    }

    void randomized_boost(const std::vector<Permutation>& gens, int rounds) {
        if (gens.empty()) return;
        Permutation w = Permutation::identity(degree_);
        for (int r = 0; r < rounds; ++r) {
            w = w * gens[rng_.below(gens.size())];
            if (rng_.coin()) w = w * gens[rng_.below(gens.size())];
            add_element(w);
        }
    }

private:
    int degree_;
    Rng rng_;

    void insert_strong(Permutation g, int lvl) {
        if (lvl == int(levels.size())) {
            Level nl;
            nl.base = first_moved_point(g);
            nl.slot.assign(degree_, 0);
            nl.orbit.push_back(nl.base);
            nl.slot[nl.base] = 1;
            nl.transversal.push_back(Permutation::identity(degree_));
            levels.push_back(std::move(nl));
        }
        // the residue fixes all earlier base points, so it acts at every
        // level up to lvl
        for (int i = 0; i <= lvl; ++i) {
            levels[i].gens.push_back(g);
            extend_orbit(i);
        }
    }

    void extend_orbit(int li) {
        Level& l = levels[li];
        for (std::size_t head = 0; head < l.orbit.size(); ++head) {
            for (const Permutation& s : l.gens) {
                int q = s.apply(l.orbit[head]);
                if (!l.slot[q]) {
                    l.orbit.push_back(q);
                    l.slot[q] = int(l.orbit.size());
                    l.transversal.push_back(l.transversal[head] * s);
                }
            }
        }
    }
};

std::shared_ptr<PermGroupImpl> build_chain(std::vector<Permutation> gens,
                                             u128 known_order,
                                             std::uint64_t seed) {
    if (gens.empty()) throw config_error("group: at least one generator required");
    int degree = gens[0].degree();
    for (const Permutation& g : gens)
        if (g.degree() != degree)
            throw config_error("group: generators have mixed degrees");

    auto impl = std::make_shared<PermGroupImpl>();
    impl->degree = degree;
    for (const Permutation& g : gens)
        if (!g.is_identity()) impl->gens.push_back(g);

    ChainBuilder b(degree, Rng::derive(seed, "stabilizer-chain"));
    for (const Permutation& g : impl->gens) b.add_element(g);

    if (known_order) {
        // the chain order can never exceed the generated group's order, so
        // hitting the target certifies completeness
        int stall = 0;
        while (b.chain_order() < known_order && stall < 64) {
            u128 before = b.chain_order();
            b.randomized_boost(impl->gens, 16);
            if (b.chain_order() == before) ++stall;
        }
        if (b.chain_order() != known_order) {
            while (b.schreier_sweep()) {}
            if (b.chain_order() != known_order)
                throw config_error("group: stated order does not match generated group");
        }
    } else {
        b.randomized_boost(impl->gens, 8 + 4 * int(b.levels.size()));
        while (b.schreier_sweep()) {}
    }

    impl->levels = std::move(b.levels);
    impl->order = 1;
    for (const Level& l : impl->levels) impl->order *= u128(l.orbit.size());
    return impl;
}

} // namespace

PermGroup PermGroup::from_generators(std::vector<Permutation> gens, std::uint64_t seed) {
    PermGroup g;
    g.impl_ = build_chain(std::move(gens), 0, seed);
    return g;
}

PermGroup PermGroup::from_generators_known_order(std::vector<Permutation> gens,
                                                 u128 order, std::uint64_t seed) {
    PermGroup g;
    g.impl_ = build_chain(std::move(gens), order, seed);
    return g;
}

PermGroup PermGroup::trivial(int degree) {
    auto impl = std::make_shared<PermGroupImpl>();
    impl->degree = degree;
    impl->order = 1;
    PermGroup g;
    g.impl_ = impl;
    return g;
}

int PermGroup::degree() const { return impl_->degree; }
const std::vector<Permutation>& PermGroup::generators() const { return impl_->gens; }
u128 PermGroup::order() const { return impl_->order; }

bool PermGroup::contains(const Permutation& g) const {
    if (g.degree() != impl_->degree) return false;
    Permutation cur = g;
    for (const auto& l : impl_->levels) {
        int p = cur.apply(l.base);
        if (p == l.base) continue;
        int s = l.slot[p];
        if (!s) return false;
        cur = cur * l.transversal[s - 1].inverse();
    }
    return cur.is_identity();
}

bool PermGroup::has_subgroup(const PermGroup& h) const {
    for (const Permutation& g : h.generators())
        if (!contains(g)) return false;
    return true;
}

bool PermGroup::same_group(const PermGroup& other) const {
    return degree() == other.degree() && order() == other.order() &&
           has_subgroup(other);
}

int PermGroup::chain_depth() const { return int(impl_->levels.size()); }
int PermGroup::base_point(int level) const { return impl_->levels[level].base; }
const std::vector<int>& PermGroup::orbit(int level) const {
    return impl_->levels[level].orbit;
}

const Permutation& PermGroup::transversal_element(int level, int point) const {
    const auto& l = impl_->levels[level];
    int s = l.slot[point];
    if (!s) throw domain_error("group: point not in level orbit");
    return l.transversal[s - 1];
}

std::optional<std::vector<std::pair<int, int>>> PermGroup::factor(
    const Permutation& g) const {
    std::vector<std::pair<int, int>> word;
    Permutation cur = g;
    for (int i = 0; i < int(impl_->levels.size()); ++i) {
        const auto& l = impl_->levels[i];
        int p = cur.apply(l.base);
        if (p == l.base) continue;
        int s = l.slot[p];
        if (!s) return std::nullopt;
        word.emplace_back(i, p);
        cur = cur * l.transversal[s - 1].inverse();
    }
    if (!cur.is_identity()) return std::nullopt;
    // g equals the left-to-right product of the factors in reverse sift order
    std::reverse(word.begin(), word.end());
    return word;
}

Permutation PermGroup::canonical_coset_rep(const Permutation& g) const {
    Permutation cur = g;
    for (const auto& l : impl_->levels) {
        int best_point = -1;
        int best_image = 1 << 30;
        for (int p : l.orbit) {
            int img = cur.apply(p);
            if (img < best_image) {
                best_image = img;
                best_point = p;
            }
        }
        cur = l.transversal[l.slot[best_point] - 1] * cur;
    }
    return cur;
}

void PermGroup::for_each_element(const std::function<bool(const Permutation&)>& fn,
                                 std::uint64_t budget) const {
    if (order() > u128(budget))
        throw budget_error("group: element enumeration over budget |G|=" +
                               u128_to_string(order()),
                           std::uint64_t(order() > u128(~0ull) ? ~0ull : order()));
    const int depth = chain_depth();
    std::vector<std::vector<int>> sorted_orbits(depth);
    for (int i = 0; i < depth; ++i) {
        sorted_orbits[i] = impl_->levels[i].orbit;
        std::sort(sorted_orbits[i].begin(), sorted_orbits[i].end());
    }
    bool stop = false;
    std::function<void(int, const Permutation&)> rec =
        [&](int level, const Permutation& right) {
            if (stop) return;
            if (level == depth) {
                if (!fn(right)) stop = true;
                return;
            }
            const auto& l = impl_->levels[level];
            for (int p : sorted_orbits[level]) {
                if (stop) return;
                rec(level + 1, l.transversal[l.slot[p] - 1] * right);
            }
        };
    rec(0, Permutation::identity(impl_->degree));
}

std::vector<Permutation> PermGroup::elements(std::uint64_t budget) const {
    std::vector<Permutation> out;
    out.reserve(std::size_t(order()));
    for_each_element(
        [&](const Permutation& g) {
            out.push_back(g);
            return true;
        },
        budget);
    return out;
}

Permutation PermGroup::random_element(Rng& rng) const {
    Permutation g = Permutation::identity(impl_->degree);
    for (const auto& l : impl_->levels) {
        int p = l.orbit[rng.below(l.orbit.size())];
        g = l.transversal[l.slot[p] - 1] * g;
    }
    return g;
}

std::vector<int> PermGroup::fixed_points() const {
    std::vector<int> out;
    for (int p = 0; p < impl_->degree; ++p) {
        bool fixed = true;
        for (const Permutation& g : impl_->gens)
            if (g.apply(p) != p) {
                fixed = false;
                break;
            }
        if (fixed) out.push_back(p);
    }
    return out;
}

std::vector<std::vector<int>> PermGroup::orbit_partition() const {
    std::vector<int> parent(impl_->degree);
    for (int i = 0; i < impl_->degree; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Permutation& g : impl_->gens)
        for (int p = 0; p < impl_->degree; ++p) {
            int a = find(p), b = find(g.apply(p));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::map<int, std::vector<int>> groups;
    for (int p = 0; p < impl_->degree; ++p) groups[find(p)].push_back(p);
    std::vector<std::vector<int>> out;
    for (auto& [root, pts] : groups) out.push_back(std::move(pts));
    return out;
}

bool PermGroup::is_transitive() const { return orbit_partition().size() == 1; }

// ---------------------------------------------------------------------------

namespace {

PermGroup normal_closure(const PermGroup& g, std::vector<Permutation> seeds,
                         std::uint64_t seed) {
    std::vector<Permutation> gens;
    for (Permutation& s : seeds)
        if (!s.is_identity()) gens.push_back(std::move(s));
    if (gens.empty()) return PermGroup::trivial(g.degree());
    while (true) {
        PermGroup k = PermGroup::from_generators(gens, seed);
        bool added = false;
        for (const Permutation& x : k.generators())
            for (const Permutation& s : g.generators()) {
                Permutation c = x.conj_by(s);
                if (!k.contains(c)) {
                    gens.push_back(c);
                    added = true;
                }
            }
        if (!added) return k;
    }
}

} // namespace

PermGroup derived_subgroup(const PermGroup& g, std::uint64_t seed) {
    std::vector<Permutation> comms;
    const auto& gens = g.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            comms.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
    return normal_closure(g, std::move(comms), seed);
}

PermGroup frattini_2group(const PermGroup& g, std::uint64_t seed) {
    if (!g.is_2group())
        throw domain_error("frattini_2group: group order is not a power of 2");
    std::vector<Permutation> seeds;
    const auto& gens = g.generators();
    for (const Permutation& x : gens) seeds.push_back(x * x);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            seeds.push_back(gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j]);
    return normal_closure(g, std::move(seeds), seed);
}

std::vector<PermGroup> maximal_subgroups_containing(const PermGroup& p,
                                                    const PermGroup& s,
                                                    std::uint64_t seed) {
    if (!p.is_2group())
        throw domain_error("maximal_subgroups_containing: ambient group is not a 2-group");
    if (!p.has_subgroup(s))
        throw domain_error("maximal_subgroups_containing: S is not a subgroup of P");

    PermGroup phi = frattini_2group(p, seed);

    // coordinates in the elementary abelian quotient P/Phi(P)
    std::vector<Permutation> basis;
    auto coords_of = [&](const Permutation& x) -> std::optional<unsigned> {
        for (unsigned mask = 0; mask < (1u << basis.size()); ++mask) {
            Permutation prod = Permutation::identity(p.degree());
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (mask & (1u << i)) prod = prod * basis[i];
            if (phi.contains(prod.inverse() * x)) return mask;
        }
        return std::nullopt;
    };
    for (const Permutation& g : p.generators())
        if (!coords_of(g)) basis.push_back(g);
    const int r = int(basis.size());
    if (u128(1) << r != p.order() / phi.order())
        throw domain_error("maximal_subgroups_containing: quotient rank mismatch");

    std::vector<unsigned> image_rows;
    for (const Permutation& g : s.generators()) {
        auto c = coords_of(g);
        if (!c) throw domain_error("maximal_subgroups_containing: coordinate failure");
        image_rows.push_back(*c);
    }

    auto elem_for = [&](unsigned mask) {
        Permutation prod = Permutation::identity(p.degree());
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) prod = prod * basis[i];
        return prod;
    };

    std::vector<PermGroup> out;
    for (unsigned f = 1; f < (1u << r); ++f) {
        bool contains_image = true;
        for (unsigned w : image_rows)
            if (__builtin_popcount(f & w) % 2) {
                contains_image = false;
                break;
            }
        if (!contains_image) continue;
        int j0 = __builtin_ctz(f);
        std::vector<Permutation> gens = phi.generators();
        for (int i = 0; i < r; ++i) {
            if (i == j0) continue;
            unsigned v = (1u << i) | ((f >> i) & 1u ? (1u << j0) : 0u);
            gens.push_back(elem_for(v));
        }
        if (gens.empty()) gens.push_back(Permutation::identity(p.degree()));
        out.push_back(PermGroup::from_generators_known_order(
            gens, phi.order() << (r - 1), seed ^ f));
    }
    return out;
}

std::vector<Permutation> right_transversal(const PermGroup& g, const PermGroup& h,
                                           std::uint64_t budget) {
    if (!g.has_subgroup(h))
        throw domain_error("right_transversal: H is not a subgroup of G");
    u128 index = g.order() / h.order();
    if (index > u128(budget))
        throw budget_error("right_transversal: index exceeds budget, index=" +
                               u128_to_string(index),
                           std::uint64_t(index > u128(~0ull) ? ~0ull : index));

    auto signature = [](const Permutation& p) {
        std::string sig(p.degree(), 0);
        for (int i = 0; i < p.degree(); ++i) sig[i] = char(p.apply(i));
        return sig;
    };

    std::vector<Permutation> reps;
    std::unordered_set<std::string> seen;
    Permutation start = h.canonical_coset_rep(Permutation::identity(g.degree()));
    reps.push_back(start);
    seen.insert(signature(start));
    for (std::size_t head = 0; head < reps.size(); ++head) {
        Permutation cur = reps[head]; // copy: reps may reallocate
        for (const Permutation& s : g.generators()) {
            Permutation next = h.canonical_coset_rep(cur * s);
            std::string sig = signature(next);
            if (seen.insert(std::move(sig)).second) reps.push_back(std::move(next));
        }
    }
    if (u128(reps.size()) != index)
        throw domain_error("right_transversal: enumeration mismatch");
    return reps;
}

// ---------------------------------------------------------------------------

namespace {

bool conjugates_to(const PermGroup& a, const Permutation& g, const PermGroup& b) {
    if (a.order() != b.order()) return false;
    for (const Permutation& x : a.generators())
        if (!b.contains(x.conj_by(g))) return false;
    return true;
}

int two_part_exponent(u128 v) {
    int e = 0;
    while (v % 2 == 0) {
        v /= 2;
        ++e;
    }
    return e;
}

std::vector<Permutation> alternating_gens(const std::vector<int>& points, int degree) {
    // consecutive 3-cycles generate the alternating group on the points
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i + 2 < points.size(); ++i) {
        std::vector<int> img(degree);
        for (int p = 0; p < degree; ++p) img[p] = p;
        img[points[i]] = points[i + 1];
        img[points[i + 1]] = points[i + 2];
        img[points[i + 2]] = points[i];
        gens.push_back(Permutation(std::move(img)));
    }
    if (gens.empty()) gens.push_back(Permutation::identity(degree));
    return gens;
}

std::optional<Permutation> sylow_strategy(const PermGroup& ambient,
                                          const PermGroup& a, const PermGroup& b,
                                          std::uint64_t budget) {
    std::vector<int> fpa = a.fixed_points();
    std::vector<int> fpb = b.fixed_points();
    if (fpa.size() != fpb.size() || fpb.size() < 2) return std::nullopt;
    const int n = ambient.degree();

    // align the fixed-point sets with an ambient element
    std::vector<int> img(n, -1);
    for (std::size_t i = 0; i < fpa.size(); ++i) img[fpa[i]] = fpb[i];
    std::vector<char> is_fpa(n, 0), is_fpb(n, 0);
    for (int p : fpa) is_fpa[p] = 1;
    for (int p : fpb) is_fpb[p] = 1;
    std::vector<int> rest_a, rest_b;
    for (int p = 0; p < n; ++p) {
        if (!is_fpa[p]) rest_a.push_back(p);
        if (!is_fpb[p]) rest_b.push_back(p);
    }
    for (std::size_t i = 0; i < rest_a.size(); ++i) img[rest_a[i]] = rest_b[i];
    Permutation align((std::vector<int>(img)));
    if (!ambient.contains(align)) {
        // fix parity by swapping two aligned fixed points
        std::swap(img[fpa[0]], img[fpa[1]]);
        align = Permutation(std::move(img));
        if (!ambient.contains(align)) return std::nullopt;
    }

    // pointwise stabilizer of the common fixed-point set, as the alternating
    // group on the support
    std::vector<Permutation> sg = alternating_gens(rest_b, n);
    for (const Permutation& x : sg)
        if (!ambient.contains(x)) return std::nullopt;
    PermGroup stab = PermGroup::from_generators(sg);
    if (u128(1) << two_part_exponent(stab.order()) != a.order()) return std::nullopt;
    if (stab.order() > u128(budget)) return std::nullopt;

    // both groups are full Sylow 2-subgroups of the stabilizer, so an
    // exhaustive scan of it must find a conjugator
    std::vector<Permutation> a_gens_moved;
    for (const Permutation& x : a.generators()) a_gens_moved.push_back(x.conj_by(align));
    PermGroup a_moved = PermGroup::from_generators_known_order(
        a_gens_moved.empty() ? std::vector<Permutation>{Permutation::identity(n)}
                             : a_gens_moved,
        a.order());
    std::optional<Permutation> found;
    stab.for_each_element(
        [&](const Permutation& h) {
            if (conjugates_to(a_moved, h, b)) {
                found = align * h;
                return false;
            }
            return true;
        },
        budget);
    return found;
}

} // namespace

ConjugacyResult conjugacy_witness(const PermGroup& ambient, const PermGroup& a,
                                  const PermGroup& b, std::uint64_t element_budget) {
    if (a.same_group(b))
        return {ConjugacyResult::Mode::equal, Permutation::identity(ambient.degree())};
    if (a.order() != b.order())
        return {ConjugacyResult::Mode::incompatible, std::nullopt};

    if (auto w = sylow_strategy(ambient, a, b, element_budget))
        return {ConjugacyResult::Mode::sylow_argument, w};

    if (ambient.order() <= u128(element_budget)) {
        std::optional<Permutation> found;
        ambient.for_each_element(
            [&](const Permutation& g) {
                if (conjugates_to(a, g, b)) {
                    found = g;
                    return false;
                }
                return true;
            },
            element_budget);
        if (found) return {ConjugacyResult::Mode::exhaustive, found};
        return {ConjugacyResult::Mode::incompatible, std::nullopt};
    }

    // invariant comparison only
    auto orbit_sizes = [](const PermGroup& g) {
        std::vector<int> sizes;
        for (const auto& o : g.orbit_partition()) sizes.push_back(int(o.size()));
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    };
    bool compatible = orbit_sizes(a) == orbit_sizes(b);
    if (compatible && a.order() <= u128(element_budget)) {
        auto order_profile = [&](const PermGroup& g) {
            std::vector<unsigned long long> prof;
            g.for_each_element(
                [&](const Permutation& x) {
                    prof.push_back(x.order());
                    return true;
                },
                element_budget);
            std::sort(prof.begin(), prof.end());
            return prof;
        };
        compatible = order_profile(a) == order_profile(b);
    }
    return {compatible ? ConjugacyResult::Mode::compatible
                       : ConjugacyResult::Mode::incompatible,
            std::nullopt};
}

} // namespace natvert
