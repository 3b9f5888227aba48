#include "natvert/gmod.hpp"

#include <algorithm>
#include <unordered_map>

#include "natvert/errors.hpp"

namespace natvert {

namespace {

// Homomorphism-evaluation chain: a stabilizer chain over (permutation,
// matrix) pairs, i.e. over the graph of the representation. Sifting the
// permutation part through it evaluates the representation at arbitrary
// group elements.
struct PairChain {
    struct Pair {
        Permutation p;
        Matrix m;
        Pair operator*(const Pair& rhs) const { return {p * rhs.p, m * rhs.m}; }
        Pair inverse() const { return {p.inverse(), *invert(m)}; }
    };
    struct Level {
        int base = 0;
        std::vector<Pair> gens;
        std::vector<int> orbit;
        std::vector<int> slot;
        std::vector<Pair> transversal;
    };
    int degree = 0;
    std::vector<Level> levels;

    u128 chain_order() const {
        u128 o = 1;
        for (const Level& l : levels) o *= u128(l.orbit.size());
        return o;
    }

    std::pair<Pair, int> sift(Pair g, int start) const {
        for (int i = start; i < int(levels.size()); ++i) {
            const Level& l = levels[i];
            int p = g.p.apply(l.base);
            if (p == l.base) continue;
            int s = l.slot[p];
            if (!s) return {std::move(g), i};
            g = g * l.transversal[s - 1].inverse();
        }
        return {std::move(g), int(levels.size())};
    }

    void extend_orbit(int li) {
        Level& l = levels[li];
        for (std::size_t head = 0; head < l.orbit.size(); ++head) {
            for (const Pair& s : l.gens) {
                int q = s.p.apply(l.orbit[head]);
                if (!l.slot[q]) {
                    l.orbit.push_back(q);
                    l.slot[q] = int(l.orbit.size());
                    l.transversal.push_back(l.transversal[head] * s);
                }
            }
        }
    }

    void insert_strong(Pair g, int lvl, int dim, const Field& f) {
        if (lvl == int(levels.size())) {
            Level nl;
            nl.base = -1;
            for (int p = 0; p < degree; ++p)
                if (g.p.apply(p) != p) {
                    nl.base = p;
                    break;
                }
            nl.slot.assign(degree, 0);
            nl.orbit.push_back(nl.base);
            nl.slot[nl.base] = 1;
            nl.transversal.push_back({Permutation::identity(degree),
                                      Matrix::identity(dim, f)});
            levels.push_back(std::move(nl));
        }
        for (int i = 0; i <= lvl; ++i) {
            levels[i].gens.push_back(g);
            extend_orbit(i);
        }
    }

    bool add_element(const Pair& g, int dim, const Field& f) {
        auto [res, lvl] = sift(g, 0);
        if (res.p.is_identity()) return false;
        insert_strong(std::move(res), lvl, dim, f);
        return true;
    }

    void build(const PermGroup& group, const std::vector<Matrix>& actions,
               int dim, const Field& f) {
        degree = group.degree();
        std::vector<Pair> gens;
        for (std::size_t i = 0; i < actions.size(); ++i)
            gens.push_back({group.generators()[i], actions[i]});
        for (const Pair& g : gens) add_element(g, dim, f);
        Rng rng = Rng::derive(0x9a1c, "pair-chain");
        Pair w{Permutation::identity(degree), Matrix::identity(dim, f)};
        int stall = 0;
        while (chain_order() < group.order() && stall < 4096) {
            w = w * gens[rng.below(gens.size())];
            if (!add_element(w, dim, f)) ++stall;
        }
        if (chain_order() != group.order()) {
            // deterministic Schreier sweep fallback
            bool changed = true;
            while (changed) {
                changed = false;
                for (int i = 0; i < int(levels.size()); ++i)
                    for (std::size_t oi = 0; oi < levels[i].orbit.size(); ++oi)
                        for (std::size_t gi = 0; gi < levels[i].gens.size(); ++gi) {
                            int p = levels[i].orbit[oi];
                            Pair u = levels[i].transversal[oi];
                            Pair s = levels[i].gens[gi];
                            int q = s.p.apply(p);
                            Pair schreier =
                                u * s * levels[i].transversal[levels[i].slot[q] - 1]
                                            .inverse();
                            auto [res, lvl] = sift(std::move(schreier), i + 1);
                            if (!res.p.is_identity()) {
                                insert_strong(std::move(res), lvl, dim, f);
                                changed = true;
                            }
                        }
            }
            if (chain_order() != group.order())
                throw domain_error("gmodule: action chain failed to close");
        }
    }

    std::optional<Matrix> evaluate(const Permutation& g, int dim, const Field& f) const {
        std::vector<const Matrix*> word;
        Permutation cur = g;
        for (const Level& l : levels) {
            int p = cur.apply(l.base);
            if (p == l.base) continue;
            int s = l.slot[p];
            if (!s) return std::nullopt;
            word.push_back(&l.transversal[s - 1].m);
            cur = cur * l.transversal[s - 1].p.inverse();
        }
        if (!cur.is_identity()) return std::nullopt;
        Matrix out = Matrix::identity(dim, f);
        for (auto it = word.rbegin(); it != word.rend(); ++it) out = out * **it;
        return out;
    }
};

std::string perm_key(const Permutation& p) {
    std::string s(p.degree(), 0);
    for (int i = 0; i < p.degree(); ++i) s[i] = char(p.apply(i));
    return s;
}

} // namespace

struct GModule::Cache {
    PairChain chain;
    bool built = false;
};

GModule::GModule(PermGroup group, const Field& f, int dim,
                 std::vector<Matrix> gen_actions, std::string label,
                 NaturalAction natural)
    : group_(std::move(group)), field_(&f), dim_(dim),
      actions_(std::move(gen_actions)), label_(std::move(label)),
      natural_(std::move(natural)), cache_(std::make_shared<Cache>()) {
    if (actions_.size() != group_.generators().size())
        throw domain_error("gmodule: one action per generator required");
    for (const Matrix& a : actions_) {
        if (a.rows() != a.cols() || a.rows() != dim_ || &a.field() != field_)
            throw domain_error("gmodule: actions must be square of the module dimension");
        if (!invert(a)) throw domain_error("gmodule: generator action is singular");
    }
}

Matrix GModule::action_of(const Permutation& g) const {
    if (natural_) {
        if (!group_.contains(g))
            throw domain_error("gmodule: element is not in the acting group");
        return natural_(g);
    }
    if (actions_.empty()) {
        if (g.is_identity()) return Matrix::identity(dim_, *field_);
        throw domain_error("gmodule: element is not in the acting group");
    }
    warm_action_cache();
    auto m = cache_->chain.evaluate(g, dim_, *field_);
    if (!m) throw domain_error("gmodule: element is not in the acting group");
    return *m;
}

void GModule::warm_action_cache() const {
    if (natural_ || actions_.empty() || cache_->built) return;
    cache_->chain.build(group_, actions_, dim_, *field_);
    cache_->built = true;
}

bool GModule::check_homomorphism(Rng& rng, int trials) const {
    const auto& gens = group_.generators();
    if (gens.empty()) return true;
    for (int t = 0; t < trials; ++t) {
        int i = int(rng.below(gens.size()));
        int j = int(rng.below(gens.size()));
        if (action_of(gens[i] * gens[j]) != actions_[i] * actions_[j]) return false;
    }
    return true;
}

GModule trivial_module(const PermGroup& g, const Field& f) {
    std::vector<Matrix> actions(g.generators().size(), Matrix::identity(1, f));
    return GModule(g, f, 1, std::move(actions), "trivial",
                   [&f](const Permutation&) { return Matrix::identity(1, f); });
}

GModule regular_module(const PermGroup& g, const Field& f,
                       std::uint64_t element_budget) {
    auto elems = g.elements(element_budget);
    std::unordered_map<std::string, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[perm_key(elems[i])] = int(i);
    const int n = int(elems.size());
    std::vector<Matrix> actions;
    for (const Permutation& s : g.generators()) {
        Matrix a(n, n, f);
        for (int i = 0; i < n; ++i) a.set(i, index.at(perm_key(elems[i] * s)), 1);
        actions.push_back(std::move(a));
    }
    return GModule(g, f, n, std::move(actions), "regular");
}

GModule restrict_to(const GModule& v, const PermGroup& h) {
    if (!v.group().has_subgroup(h))
        throw domain_error("restrict: H is not a subgroup of the acting group");
    std::vector<Matrix> actions;
    for (const Permutation& g : h.generators()) actions.push_back(v.action_of(g));
    return GModule(h, v.field(), v.dim(), std::move(actions),
                   "res(" + v.label() + ")", v.natural_action());
}

GModule induce_module(const GModule& w, const PermGroup& g,
                      std::uint64_t coset_budget) {
    const PermGroup& h = w.group();
    auto transversal = right_transversal(g, h, coset_budget);
    const int m = int(transversal.size());
    const int d = w.dim();
    std::unordered_map<std::string, int> index;
    for (int i = 0; i < m; ++i) index[perm_key(transversal[i])] = i;

    std::vector<Matrix> actions;
    for (const Permutation& s : g.generators()) {
        Matrix a(m * d, m * d, w.field());
        for (int blk = 0; blk < m; ++blk) {
            Permutation moved = transversal[blk] * s;
            Permutation rep = h.canonical_coset_rep(moved);
            int target = index.at(perm_key(rep));
            Matrix wact = w.action_of(moved * rep.inverse());
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    unsigned x = wact.get(r, c);
                    if (x) a.set(blk * d + r, target * d + c, x);
                }
        }
        actions.push_back(std::move(a));
    }
    return GModule(g, w.field(), m * d, std::move(actions), "ind(" + w.label() + ")");
}

GModule extend_module_scalars(const GModule& v, const Field& dst) {
    if (&v.field() == &dst) return v;
    if (dst.k() % v.field().k() != 0)
        throw config_error("extend_module_scalars: incompatible degrees");
    std::vector<Matrix> actions;
    for (const Matrix& a : v.generator_actions())
        actions.push_back(extend_scalars(a, dst));
    GModule::NaturalAction nat;
    if (const auto& base = v.natural_action()) {
        nat = [base, &dst](const Permutation& g) {
            return extend_scalars(base(g), dst);
        };
    }
    return GModule(v.group(), dst, v.dim(), std::move(actions),
                   v.label() + "@F" + std::to_string(dst.order()), std::move(nat));
}

GModule direct_sum(const GModule& a, const GModule& b) {
    if (!a.group().same_group(b.group()) || &a.field() != &b.field())
        throw domain_error("direct_sum: group or field mismatch");
    std::vector<Matrix> actions;
    for (std::size_t i = 0; i < a.generator_actions().size(); ++i) {
        const Matrix& x = a.generator_actions()[i];
        const Matrix& y = b.generator_actions()[i];
        Matrix m(a.dim() + b.dim(), a.dim() + b.dim(), a.field());
        for (int r = 0; r < a.dim(); ++r)
            for (int c = 0; c < a.dim(); ++c)
                if (unsigned v = x.get(r, c)) m.set(r, c, v);
        for (int r = 0; r < b.dim(); ++r)
            for (int c = 0; c < b.dim(); ++c)
                if (unsigned v = y.get(r, c)) m.set(a.dim() + r, a.dim() + c, v);
        actions.push_back(std::move(m));
    }
    return GModule(a.group(), a.field(), a.dim() + b.dim(), std::move(actions),
                   a.label() + "+" + b.label());
}

GModule change_basis(const GModule& v, const Matrix& t, const std::string& label) {
    auto tinv = invert(t);
    if (!tinv) throw domain_error("change_basis: matrix is singular");
    std::vector<Matrix> actions;
    for (const Matrix& a : v.generator_actions()) actions.push_back(t * a * *tinv);
    return GModule(v.group(), v.field(), v.dim(), std::move(actions), label);
}

GModule submodule(const GModule& v, const Subspace& w, const std::string& label) {
    std::vector<Matrix> actions;
    for (const Matrix& a : v.generator_actions()) {
        auto x = solve_left(w.basis, w.basis * a);
        if (!x) throw domain_error("submodule: subspace is not invariant");
        actions.push_back(std::move(*x));
    }
    return GModule(v.group(), v.field(), w.dim(), std::move(actions), label);
}

GModule quotient_module(const GModule& v, const Subspace& w, const std::string& label) {
    Matrix reps = quotient_basis(Subspace::full(v.dim(), v.field()), w);
    Matrix stacked = w.basis.vstack(reps);
    const int s = w.dim();
    const int q = reps.rows();
    std::vector<Matrix> actions;
    for (const Matrix& a : v.generator_actions()) {
        auto x = solve_left(stacked, reps * a);
        if (!x) throw domain_error("quotient_module: inconsistent solve");
        Matrix act(q, q, v.field());
        for (int r = 0; r < q; ++r)
            for (int c = 0; c < q; ++c)
                if (unsigned val = x->get(r, s + c)) act.set(r, c, val);
        actions.push_back(std::move(act));
    }
    return GModule(v.group(), v.field(), q, std::move(actions), label);
}

Matrix norm_operator(const GModule& v, const Permutation& g) {
    if (!v.group().contains(g))
        throw domain_error("norm_operator: element is not in the acting group");
    Matrix a = v.action_of(g);
    unsigned long long ord = g.order();
    Matrix acc(v.dim(), v.dim(), v.field());
    Matrix p = Matrix::identity(v.dim(), v.field());
    for (unsigned long long i = 0; i < ord; ++i) {
        acc = acc + p;
        p = p * a;
    }
    return acc;
}

Subspace socle_2group(const GModule& v) {
    if (!v.group().is_2group())
        throw domain_error("socle_2group: acting group is not a 2-group");
    const auto& actions = v.generator_actions();
    if (actions.empty()) return Subspace::full(v.dim(), v.field());
    const int d = v.dim();
    Matrix stacked(d, d * int(actions.size()), v.field());
    for (std::size_t g = 0; g < actions.size(); ++g) {
        Matrix am1 = actions[g] + Matrix::identity(d, v.field());
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                if (unsigned x = am1.get(r, c)) stacked.set(r, int(g) * d + c, x);
    }
    return Subspace{d, kernel_basis(stacked)};
}

Subspace radical_2group(const GModule& v) {
    if (!v.group().is_2group())
        throw domain_error("radical_2group: acting group is not a 2-group");
    const int d = v.dim();
    if (v.generator_actions().empty()) return Subspace::zero(d, v.field());
    Matrix rows(0, d, v.field());
    for (const Matrix& a : v.generator_actions())
        rows = rows.vstack(a + Matrix::identity(d, v.field()));
    return Subspace::from_rows(rows);
}

bool trivial_summand_test(const GModule& v) {
    Subspace soc = socle_2group(v);
    Subspace rad = radical_2group(v);
    return subspace_intersect(soc, rad).dim() < soc.dim();
}

HomSpace hom_space(const GModule& v, const GModule& w) {
    if (!v.group().same_group(w.group()) || &v.field() != &w.field())
        throw domain_error("hom_space: group or field mismatch");
    const int dv = v.dim();
    const int dw = w.dim();
    const int unknowns = dv * dw;
    const auto& va = v.generator_actions();
    const auto& wa = w.generator_actions();
    const int gens = int(va.size());
    HomSpace out;
    out.dom_dim = dv;
    out.cod_dim = dw;
    if (gens == 0) {
        for (int r = 0; r < dv; ++r)
            for (int c = 0; c < dw; ++c) {
                Matrix unit(dv, dw, v.field());
                unit.set(r, c, 1);
                out.basis.push_back(std::move(unit));
            }
        return out;
    }
    // unknowns index rows; one column per equation (g, r, c) of A_g X = X B_g
    Matrix sys(unknowns, gens * dv * dw, v.field());
    for (int g = 0; g < gens; ++g) {
        const Matrix& a = va[g];
        const Matrix& b = wa[g];
        for (int r = 0; r < dv; ++r)
            for (int s = 0; s < dv; ++s) {
                unsigned x = a.get(r, s);
                if (!x) continue;
                for (int c = 0; c < dw; ++c) {
                    int col = (g * dv + r) * dw + c;
                    int row = s * dw + c;
                    sys.set(row, col, sys.get(row, col) ^ x);
                }
            }
        for (int s = 0; s < dw; ++s)
            for (int c = 0; c < dw; ++c) {
                unsigned x = b.get(s, c);
                if (!x) continue;
                for (int r = 0; r < dv; ++r) {
                    int col = (g * dv + r) * dw + c;
                    int row = r * dw + s;
                    sys.set(row, col, sys.get(row, col) ^ x);
                }
            }
    }
    Matrix kb = kernel_basis(sys);
    for (int i = 0; i < kb.rows(); ++i)
        out.basis.push_back(Matrix::unvec(kb.row_as_matrix(i), dv, dw));
    return out;
}

Matrix EndoAlgebra::element(const Matrix& coords) const {
    Matrix out(module_dim, module_dim, *field);
    for (int i = 0; i < dim(); ++i) {
        unsigned c = coords.get(0, i);
        if (!c) continue;
        Matrix term = basis[i];
        if (c != 1)
            for (int r = 0; r < module_dim; ++r) term.row_scale(r, c);
        out = out + term;
    }
    return out;
}

Matrix EndoAlgebra::coords_of(const Matrix& m) const {
    Echelon ech(module_dim * module_dim, *field, dim());
    for (int i = 0; i < dim(); ++i) {
        Matrix tag(1, dim(), *field);
        tag.set(0, i, 1);
        ech.add(basis[i].vec(), &tag);
    }
    Matrix tag(1, dim(), *field);
    Matrix out;
    if (ech.add(m.vec(), &tag, &out))
        throw domain_error("endo_algebra: element is outside the span");
    return out;
}

bool EndoAlgebra::is_commutative() const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (basis[i] * basis[j] != basis[j] * basis[i]) return false;
    return true;
}

EndoAlgebra endo_algebra(const GModule& v) {
    HomSpace hs = hom_space(v, v);
    EndoAlgebra out;
    out.field = &v.field();
    out.module_dim = v.dim();
    out.basis = hs.basis;
    out.identity_coords = out.coords_of(Matrix::identity(v.dim(), v.field()));
    out.table.resize(out.dim());
    for (int i = 0; i < out.dim(); ++i) {
        out.table[i].resize(out.dim());
        for (int j = 0; j < out.dim(); ++j)
            out.table[i][j] = out.coords_of(out.basis[i] * out.basis[j]);
    }
    return out;
}

IsoResult iso_test(const GModule& v, const GModule& w, std::uint64_t seed) {
    if (v.dim() != w.dim() || &v.field() != &w.field() ||
        !v.group().same_group(w.group()))
        return {IsoResult::Status::not_isomorphic, std::nullopt};
    if (v.dim() == 0) return {IsoResult::Status::isomorphic, Matrix(0, 0, v.field())};
    HomSpace hs = hom_space(v, w);
    if (hs.dim() == 0) return {IsoResult::Status::not_isomorphic, std::nullopt};

    const Field& f = v.field();
    const unsigned q = f.order();
    const int d = hs.dim();
    double combos = 1;
    for (int i = 0; i < d && combos <= 65536.0; ++i) combos *= q;
    if (combos <= 65536.0) {
        // exhaustive sweep; a completed sweep proves non-isomorphism
        std::vector<unsigned> digits(d, 0);
        Matrix cur(v.dim(), v.dim(), f);
        while (true) {
            int pos = 0;
            while (pos < d) {
                unsigned old = digits[pos];
                digits[pos] = (digits[pos] + 1) % q;
                Matrix delta = hs.basis[pos];
                unsigned scale = old ^ digits[pos];
                if (scale != 1)
                    for (int r = 0; r < v.dim(); ++r) delta.row_scale(r, scale);
                cur = cur + delta;
                if (digits[pos] != 0) break;
                ++pos;
            }
            if (pos == d) break;
            if (invert(cur)) return {IsoResult::Status::isomorphic, cur};
        }
        return {IsoResult::Status::not_isomorphic, std::nullopt};
    }
    Rng rng = Rng::derive(seed, "iso-test");
    for (int trial = 0; trial < 4096; ++trial) {
        Matrix x(v.dim(), v.dim(), f);
        for (int i = 0; i < d; ++i) {
            unsigned c = unsigned(rng.below(q));
            if (!c) continue;
            Matrix term = hs.basis[i];
            if (c != 1)
                for (int r = 0; r < v.dim(); ++r) term.row_scale(r, c);
            x = x + term;
        }
        if (invert(x)) return {IsoResult::Status::isomorphic, x};
    }
    return {IsoResult::Status::not_found_within_budget, std::nullopt};
}

} // namespace natvert
