#include "natvert/decomp.hpp"

#include <algorithm>
#include <cmath>

#include "natvert/errors.hpp"
#include "natvert/poly.hpp"

namespace natvert {

namespace {

// GF(2) coordinate splay of an F_q coordinate row (1 x d -> 1 x d*k).
Matrix gf2_splay(const Matrix& coords) {
    const int k = coords.field().k();
    Matrix out(1, coords.cols() * k, gf(1));
    for (int i = 0; i < coords.cols(); ++i) {
        unsigned v = coords.get(0, i);
        for (int b = 0; b < k; ++b)
            if (v & (1u << b)) out.set(0, i * k + b, 1);
    }
    return out;
}

std::optional<Matrix> crt_idempotent(const Matrix& a, std::uint64_t seed) {
    Poly mp = min_poly(a);
    auto factors = factor_poly(mp, seed);
    if (factors.size() < 2) return std::nullopt;
    const Field& f = a.field();
    Poly primary = Poly::constant(f, 1);
    for (int i = 0; i < factors[0].second; ++i) primary = primary * factors[0].first;
    Poly rest = (mp / primary).monic();
    auto [g, s, t] = poly_gcdext(rest, primary);
    (void)t;
    if (g.degree() != 0) return std::nullopt; // not coprime: cannot happen
    Poly epoly = (s * rest) % mp;
    Matrix e = epoly.eval(a);
    if (e.is_zero() || e.is_identity() || e * e != e) return std::nullopt;
    return e;
}

Matrix random_endo_element(const EndoAlgebra& alg, Rng& rng) {
    Matrix coords(1, alg.dim(), *alg.field);
    for (int i = 0; i < alg.dim(); ++i)
        coords.set(0, i, unsigned(rng.below(alg.field->order())));
    return alg.element(coords);
}

} // namespace

LocalityCertificate is_indecomposable(const GModule& v, const DecompOptions& opts) {
    if (v.dim() == 0) throw domain_error("is_indecomposable: zero module");
    const Field& f = v.field();
    const int k = f.k();
    EndoAlgebra alg = endo_algebra(v);
    const int d = alg.dim();

    if (d == 1)
        return {Locality::local, std::nullopt, k, "endo-dim-1"};

    // (1)+(2): minimal-polynomial CRT splitting on basis and seeded elements
    Rng rng = Rng::derive(opts.seed, "is-indecomposable");
    for (int trial = 0; trial < d + opts.random_trials; ++trial) {
        Matrix a = trial < d ? alg.basis[trial] : random_endo_element(alg, rng);
        if (auto e = crt_idempotent(a, opts.seed))
            return {Locality::splits, e, 0, "minpoly-crt"};
    }

    // (3): exhaustive idempotent enumeration when the algebra is small
    double size = 1;
    for (int i = 0; i < d && size <= double(opts.endo_enum_budget); ++i)
        size *= f.order();
    if (size <= double(opts.endo_enum_budget)) {
        std::vector<unsigned> digits(d, 0);
        Matrix cur(v.dim(), v.dim(), f);
        Echelon nilpotents(d * k, gf(1));
        Matrix coords(1, d, f);
        while (true) {
            int pos = 0;
            while (pos < d) {
                unsigned old = digits[pos];
                digits[pos] = (digits[pos] + 1) % f.order();
                coords.set(0, pos, digits[pos]);
                Matrix delta = alg.basis[pos];
                unsigned scale = old ^ digits[pos];
                if (scale != 1)
                    for (int r = 0; r < v.dim(); ++r) delta.row_scale(r, scale);
                cur = cur + delta;
                if (digits[pos] != 0) break;
                ++pos;
            }
            if (pos == d) break;
            if (!cur.is_zero() && !cur.is_identity() && cur * cur == cur)
                return {Locality::splits, cur, 0, "exhaustive-idempotent"};
            if (!invert(cur)) nilpotents.add(gf2_splay(coords));
        }
        return {Locality::local, std::nullopt, d * k - nilpotents.dim(),
                "exhaustive-idempotent"};
    }

    // (4): commutative algebra: the radical is the kernel of the iterated
    // squaring map, which is GF(2)-linear here
    if (alg.is_commutative()) {
        const int D2 = d * k;
        Matrix sq(D2, D2, gf(1));
        for (int t = 0; t < D2; ++t) {
            Matrix c(1, d, f);
            c.set(0, t / k, 1u << (t % k));
            Matrix el = alg.element(c);
            Matrix row = gf2_splay(alg.coords_of(el * el));
            for (int j = 0; j < D2; ++j)
                if (row.get(0, j)) sq.set(t, j, 1);
        }
        int m = 0;
        while ((1 << m) < v.dim()) ++m;
        Matrix sq_m = Matrix::identity(D2, gf(1));
        for (int i = 0; i < m; ++i) sq_m = sq_m * sq;
        Matrix rad = kernel_basis(sq_m);
        int residue = D2 - rad.rows();

        // Frobenius fixed space modulo the radical counts the simple factors
        Matrix frob = sq + Matrix::identity(D2, gf(1));
        Matrix funcs = kernel_basis(rad.transpose()); // functionals vanishing on rad
        Matrix fixed = funcs.rows() ? kernel_basis(frob * funcs.transpose())
                                    : Matrix::identity(D2, gf(1));
        int t_count = fixed.rows() - rad.rows();
        if (t_count == 1)
            return {Locality::local, std::nullopt, residue, "commutative-frobenius"};

        // several simple factors: lift an idempotent from the quotient
        Echelon excluded(D2, gf(1));
        for (int i = 0; i < rad.rows(); ++i) excluded.add(rad.row_as_matrix(i));
        excluded.add(gf2_splay(alg.identity_coords));
        for (int i = 0; i < fixed.rows(); ++i) {
            if (!excluded.add(fixed.row_as_matrix(i))) continue;
            // candidate x with x^2 = x modulo the radical, x outside rad+<1>
            Matrix c(1, d, f);
            for (int j = 0; j < D2; ++j)
                if (fixed.get(i, j))
                    c.set(0, j / k, c.get(0, j / k) ^ (1u << (j % k)));
            Matrix e = alg.element(c);
            for (int it = 0; it < 2 * m + 8 && e * e != e; ++it) e = e * e;
            if (e * e == e && !e.is_zero() && !e.is_identity())
                return {Locality::splits, e, 0, "commutative-frobenius"};
        }
        return {Locality::unknown, std::nullopt, 0, "commutative-frobenius-failed"};
    }

    return {Locality::unknown, std::nullopt, 0, "pipeline-exhausted"};
}

std::vector<int> DecompositionResult::summand_dims() const {
    std::vector<int> dims;
    for (const GModule& s : summands) dims.push_back(s.dim());
    std::sort(dims.begin(), dims.end(), std::greater<int>());
    return dims;
}

namespace {

struct SplitPart {
    GModule mod;
    Matrix inclusion;
    Matrix projection;
};

std::pair<SplitPart, SplitPart> split_by_idempotent(const GModule& v,
                                                    const Matrix& e,
                                                    int index) {
    const Field& f = v.field();
    Matrix e2 = e + Matrix::identity(v.dim(), f);
    auto part = [&](const Matrix& idem, int tag) {
        Subspace image = Subspace::from_rows(idem);
        GModule sub = submodule(v, image, v.label() + "." + std::to_string(tag));
        auto proj = solve_left(image.basis, idem);
        if (!proj) throw domain_error("decompose: projection solve failed");
        return SplitPart{std::move(sub), image.basis, std::move(*proj)};
    };
    return {part(e, 2 * index), part(e2, 2 * index + 1)};
}

} // namespace

DecompositionResult decompose(const GModule& v, const DecompOptions& opts) {
    DecompositionResult out;
    GModule cur = v;
    bool escalated = false;

    for (int attempt = 0; attempt < 4; ++attempt) {
        out = DecompositionResult{};
        out.ambient = cur;
        out.field_used = &cur.field();
        out.escalated = escalated;
        const int dim = cur.dim();
        const Field& f = cur.field();

        std::vector<SplitPart> work;
        work.push_back({cur, Matrix::identity(dim, f), Matrix::identity(dim, f)});
        int counter = 0;
        int requested_k = 0;

        while (!work.empty()) {
            SplitPart part = std::move(work.back());
            work.pop_back();
            LocalityCertificate cert = is_indecomposable(part.mod, opts);
            if (cert.verdict == Locality::unknown) {
                out.failure = "locality test inconclusive (" + cert.method + ")";
                return out;
            }
            if (cert.verdict == Locality::local) {
                if (cert.residue_degree > f.k() && opts.allow_escalation) {
                    requested_k = cert.residue_degree;
                    break;
                }
                out.summands.push_back(part.mod);
                out.inclusions.push_back(part.inclusion);
                out.projections.push_back(part.projection);
                continue;
            }
            auto [p1, p2] = split_by_idempotent(part.mod, *cert.idempotent, counter++);
            p1.inclusion = p1.inclusion * part.inclusion;
            p1.projection = part.projection * p1.projection;
            p2.inclusion = p2.inclusion * part.inclusion;
            p2.projection = part.projection * p2.projection;
            work.push_back(std::move(p2));
            work.push_back(std::move(p1));
        }

        if (requested_k) {
            if (requested_k > opts.max_field_k) {
                out.failure = "escalation beyond GF(" +
                              std::to_string(1 << opts.max_field_k) +
                              ") requested (residue degree " +
                              std::to_string(requested_k) + ")";
                return out;
            }
            cur = extend_module_scalars(v, gf(requested_k));
            escalated = true;
            continue;
        }

        out.complete = true;
        if (!verify_decomposition(out))
            throw domain_error("decompose: certificate replay failed");
        return out;
    }
    out.failure = "escalation did not stabilize";
    return out;
}

bool verify_decomposition(const DecompositionResult& d) {
    if (!d.ambient.dim()) return false;
    const Field& f = *d.field_used;
    const int dim = d.ambient.dim();
    Matrix sum(dim, dim, f);
    for (std::size_t i = 0; i < d.summands.size(); ++i) {
        sum = sum + d.projections[i] * d.inclusions[i];
        for (std::size_t j = 0; j < d.summands.size(); ++j) {
            Matrix prod = d.inclusions[i] * d.projections[j]; // U_i -> V -> U_j
            if (i == j) {
                if (!prod.is_identity()) return false;
            } else if (!prod.is_zero()) {
                return false;
            }
        }
        // inclusions intertwine the actions
        const auto& amb_actions = d.ambient.generator_actions();
        const auto& sub_actions = d.summands[i].generator_actions();
        for (std::size_t g = 0; g < amb_actions.size(); ++g)
            if (sub_actions[g] * d.inclusions[i] != d.inclusions[i] * amb_actions[g])
                return false;
    }
    return sum.is_identity();
}

SimplicityResult is_simple(const GModule& v, const DecompOptions& opts) {
    if (v.dim() == 0) throw domain_error("is_simple: zero module");
    if (v.dim() == 1) return {SimplicityResult::Status::simple, std::nullopt};
    const Field& f = v.field();
    const auto& actions = v.generator_actions();
    if (actions.empty()) {
        Matrix line(1, v.dim(), f);
        line.set(0, 0, 1);
        return {SimplicityResult::Status::not_simple, Subspace::from_rows(line)};
    }
    std::vector<Matrix> actions_t;
    for (const Matrix& a : actions) actions_t.push_back(a.transpose());

    Rng rng = Rng::derive(opts.seed, "meataxe-simple");
    for (int trial = 0; trial < 64; ++trial) {
        // seeded element of the acting algebra
        Matrix a(v.dim(), v.dim(), f);
        if (trial < int(actions.size())) {
            a = actions[trial] + Matrix::identity(v.dim(), f);
        } else {
            int terms = 2 + int(rng.below(3));
            for (int t = 0; t < terms; ++t) {
                Matrix w = actions[rng.below(actions.size())];
                int len = int(rng.below(2));
                for (int s = 0; s < len; ++s) w = w * actions[rng.below(actions.size())];
                unsigned scale = 1 + unsigned(rng.below(f.order() - 1));
                if (scale != 1)
                    for (int r = 0; r < v.dim(); ++r) w.row_scale(r, scale);
                a = a + w;
            }
        }
        Poly mp = min_poly(a);
        if (mp.degree() < 1) continue;
        auto factors = factor_poly(mp, opts.seed);
        for (const auto& [p, mult] : factors) {
            (void)mult;
            Matrix theta = p.eval(a);
            Matrix null_rows = kernel_basis(theta);
            if (null_rows.rows() == 0) continue;
            for (int i = 0; i < null_rows.rows(); ++i) {
                Subspace s = spin(null_rows.row_as_matrix(i), actions);
                if (s.dim() < v.dim())
                    return {SimplicityResult::Status::not_simple, s};
            }
            if (null_rows.rows() == p.degree()) {
                // Norton's criterion: one transpose-side spin decides
                Matrix null_t = kernel_basis(theta.transpose());
                Subspace st = spin(null_t.row_as_matrix(0), actions_t);
                if (st.dim() == v.dim())
                    return {SimplicityResult::Status::simple, std::nullopt};
                Matrix ann = kernel_basis(st.basis.transpose());
                return {SimplicityResult::Status::not_simple,
                        Subspace::from_rows(ann)};
            }
        }
    }
    return {SimplicityResult::Status::unknown, std::nullopt};
}

std::optional<std::vector<int>> composition_factor_dims(const GModule& v,
                                                        const DecompOptions& opts) {
    if (v.dim() == 0) return std::vector<int>{};
    SimplicityResult s = is_simple(v, opts);
    if (s.status == SimplicityResult::Status::unknown) return std::nullopt;
    if (s.status == SimplicityResult::Status::simple)
        return std::vector<int>{v.dim()};
    const Subspace& w = *s.proper_submodule;
    auto sub = composition_factor_dims(submodule(v, w, v.label() + ".sub"), opts);
    auto quot = composition_factor_dims(quotient_module(v, w, v.label() + ".quot"), opts);
    if (!sub || !quot) return std::nullopt;
    std::vector<int> all = *sub;
    all.insert(all.end(), quot->begin(), quot->end());
    std::sort(all.begin(), all.end());
    return all;
}

} // namespace natvert
