#include "natvert/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "natvert/errors.hpp"

namespace natvert {

TwoAdicProfile two_adic_profile(int n) {
    if (n < 2) throw domain_error("two_adic_profile: n must be at least 2");
    TwoAdicProfile prof;
    prof.n = n;
    prof.even_n = n % 2 ? n - 1 : n;
    int start = 0;
    for (int e = 30; e >= 1; --e) {
        int part = 1 << e;
        if (prof.even_n & part) {
            prof.parts.push_back(part);
            prof.exponents.push_back(e);
            prof.starts.push_back(start);
            start += part;
        }
    }
    return prof;
}

int nu2_factorial(int n) {
    int nu = 0;
    for (int p = 2; p <= n; p *= 2) nu += n / p;
    return nu;
}

u128 sylow2_order_sym(int n) { return u128(1) << nu2_factorial(n); }
u128 sylow2_order_alt(int n) {
    int nu = nu2_factorial(n);
    return nu == 0 ? u128(1) : u128(1) << (nu - 1);
}

u128 factorial_u128(int n) {
    u128 f = 1;
    for (int i = 2; i <= n; ++i) f *= u128(i);
    return f;
}

CaseTag case_tag(int n) {
    if (n == 3) return CaseTag::n3;
    if (n == 4) return CaseTag::n4;
    if (n == 6) return CaseTag::n6;
    if (n % 2) return CaseTag::odd;
    TwoAdicProfile prof = two_adic_profile(n);
    if (prof.l() == 1) return CaseTag::two_power;
    if (prof.n_l() > 2) return CaseTag::nl_gt2;
    if (prof.l() == 2) return CaseTag::nl2_l2;
    if (prof.l() == 3) return CaseTag::nl2_l3;
    return CaseTag::nl2_lge4;
}

const char* case_tag_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::n3: return "n3";
        case CaseTag::n4: return "n4";
        case CaseTag::n6: return "n6";
        case CaseTag::odd: return "odd";
        case CaseTag::two_power: return "two_power";
        case CaseTag::nl_gt2: return "nl_gt2";
        case CaseTag::nl2_l2: return "nl2_l2";
        case CaseTag::nl2_l3: return "nl2_l3";
        case CaseTag::nl2_lge4: return "nl2_lge4";
    }
    return "?";
}

PermGroup symmetric_group(int n, std::uint64_t seed) {
    if (n <= 1) return PermGroup::trivial(std::max(1, n));
    if (n == 2)
        return PermGroup::from_generators_known_order({Permutation::parse("(1,2)", 2)}, 2,
                                                      seed);
    std::vector<int> cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    return PermGroup::from_generators_known_order(
        {Permutation::parse("(1,2)", n), Permutation(std::move(cyc))},
        factorial_u128(n), seed);
}

PermGroup alternating_group(int n, std::uint64_t seed) {
    if (n <= 2) return PermGroup::trivial(std::max(1, n));
    if (n == 3)
        return PermGroup::from_generators_known_order(
            {Permutation::parse("(1,2,3)", 3)}, 3, seed);
    std::vector<int> cyc(n);
    if (n % 2) { // the n-cycle is even
        for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    } else { // the (n-1)-cycle on {2..n} is even
        cyc[0] = 0;
        for (int i = 1; i < n; ++i) cyc[i] = i % (n - 1) + 1;
    }
    return PermGroup::from_generators_known_order(
        {Permutation::parse("(1,2,3)", n), Permutation(std::move(cyc))},
        factorial_u128(n) / 2, seed);
}

namespace {

// w_{2^s} on a block of size `size` at 0-based offset: the product of
// (k, k + size/2) over the first half, with size = 2^s.
Permutation w_perm(int offset, int size, int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    for (int k = 0; k < size / 2; ++k)
        std::swap(img[offset + k], img[offset + k + size / 2]);
    return Permutation(std::move(img));
}

} // namespace

std::vector<Permutation> sylow_sym_gens(int n) {
    if (n < 2) throw domain_error("sylow_sym_gens: n must be at least 2");
    TwoAdicProfile prof = two_adic_profile(n);
    std::vector<Permutation> gens;
    for (int j = 0; j < prof.l(); ++j)
        for (int s = 1; s <= prof.exponents[j]; ++s)
            gens.push_back(w_perm(prof.starts[j], 1 << s, n));
    return gens;
}

std::vector<Permutation> sylow_alt_gens(int n) {
    if (n < 4) throw domain_error("sylow_alt_gens: n must be at least 4");
    if (n % 2) {
        auto gens = sylow_alt_gens(n - 1);
        for (auto& g : gens) g = g.extended(n);
        return gens;
    }
    TwoAdicProfile prof = two_adic_profile(n);
    std::vector<Permutation> gens;
    if (prof.l() == 1) {
        // 2-power rule: w_2' = w_2 * w_2^{w_n}, higher generators unchanged
        Permutation w2 = w_perm(0, 2, n);
        Permutation wn = w_perm(0, n, n);
        gens.push_back(w2 * w2.conj_by(wn));
        for (int s = 2; s <= prof.exponents[0]; ++s) gens.push_back(w_perm(0, 1 << s, n));
        return gens;
    }
    const int last = prof.l() - 1;
    Permutation w2l = w_perm(prof.starts[last], 2, n);
    for (int j = 0; j < prof.l(); ++j) {
        for (int s = 1; s <= prof.exponents[j]; ++s) {
            if (s == 1) {
                if (j < last) gens.push_back(w_perm(prof.starts[j], 2, n) * w2l);
                // the last block's w_2 is dropped
            } else {
                gens.push_back(w_perm(prof.starts[j], 1 << s, n));
            }
        }
    }
    return gens;
}

PermGroup sylow_sym(int n, std::uint64_t seed) {
    if (n < 2) return PermGroup::trivial(std::max(1, n));
    return PermGroup::from_generators_known_order(sylow_sym_gens(n),
                                                  sylow2_order_sym(n), seed);
}

PermGroup sylow_alt(int n, std::uint64_t seed) {
    if (n < 4) return PermGroup::trivial(std::max(1, n));
    return PermGroup::from_generators_known_order(sylow_alt_gens(n),
                                                  sylow2_order_alt(n), seed);
}

PermGroup embedded_sylow_sym(int m, int degree, std::uint64_t seed) {
    if (m < 2) return PermGroup::trivial(degree);
    auto gens = sylow_sym_gens(m);
    for (auto& g : gens) g = g.extended(degree);
    return PermGroup::from_generators_known_order(gens, sylow2_order_sym(m), seed);
}

PermGroup embedded_sylow_alt(int m, int degree, std::uint64_t seed) {
    if (m < 4) return PermGroup::trivial(degree);
    auto gens = sylow_alt_gens(m);
    for (auto& g : gens) g = g.extended(degree);
    return PermGroup::from_generators_known_order(gens, sylow2_order_alt(m), seed);
}

PermGroup even_part(const PermGroup& g, std::uint64_t seed) {
    std::vector<Permutation> evens, odds;
    for (const Permutation& x : g.generators())
        (x.is_even() ? evens : odds).push_back(x);
    if (odds.empty()) return g;
    const Permutation& t = odds[0];
    std::vector<Permutation> gens = evens;
    for (const Permutation& x : evens) gens.push_back(x.conj_by(t.inverse()));
    for (const Permutation& x : odds) {
        gens.push_back(x * t.inverse());
        gens.push_back(t * x);
    }
    return PermGroup::from_generators_known_order(gens, g.order() / 2, seed);
}

NamedSubgroups named_subgroups(int n, std::uint64_t seed) {
    if (n < 4 || n % 2)
        throw domain_error("named_subgroups: n must be even and at least 4");
    NamedSubgroups out;
    out.n = n;
    out.profile = two_adic_profile(n);
    const TwoAdicProfile& prof = out.profile;
    out.P = sylow_sym(n, seed);
    out.Q = sylow_alt(n, seed);

    for (int j = 0; j < prof.l(); ++j) {
        Permutation yj = Permutation::identity(n);
        for (int s = prof.exponents[j]; s >= 1; --s)
            yj = yj * w_perm(prof.starts[j], 1 << s, n);
        out.y.push_back(yj);
        out.x.push_back(yj * yj);
    }
    for (int j = 0; j < prof.l(); ++j) out.yp.push_back(out.y[j] * out.y.back());

    out.Y = PermGroup::from_generators(out.y, seed);
    std::vector<Permutation> yp_gens = out.yp;
    bool nontrivial = false;
    for (const auto& g : yp_gens) nontrivial |= !g.is_identity();
    out.Yp = nontrivial ? PermGroup::from_generators_known_order(yp_gens,
                                                                 out.Y.order() / 2, seed)
                        : PermGroup::trivial(n);
    out.X = PermGroup::from_generators(out.x, seed);

    std::vector<Permutation> b_gens;
    for (int j = 0; j < prof.l(); ++j) {
        if (prof.parts[j] < 4) continue;
        Permutation wnj = w_perm(prof.starts[j], prof.parts[j], n);
        for (int s = 1; s <= prof.exponents[j] - 1; ++s) {
            Permutation w = w_perm(prof.starts[j], 1 << s, n);
            b_gens.push_back(w);
            b_gens.push_back(w.conj_by(wnj));
        }
    }
    out.B = b_gens.empty() ? PermGroup::trivial(n)
                           : PermGroup::from_generators(b_gens, seed);
    out.Bp = even_part(out.B, seed);

    out.phiP = frattini_2group(out.P, seed);
    out.phiQ = frattini_2group(out.Q, seed);

    if (prof.l() >= 2 && !out.phiQ.has_subgroup(out.X))
        throw domain_error("named_subgroups: X_n is not inside Phi(Q_n)");
    if (out.P.order() != out.Q.order() * 2 || out.Y.order() != out.Yp.order() * 2)
        throw domain_error("named_subgroups: index-2 invariants violated");
    return out;
}

// ---------------------------------------------------------------------------

Matrix action_on_M(const Permutation& g, int n, const Field& f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, g.apply(i), 1);
    return m;
}

namespace {

// Rows of the action on the basis {gamma_i + gamma_n : i < dim}, where the
// missing basis vectors expand as: index dim..expand-1 -> the sum of all
// basis rows, index n-1 -> zero.
Matrix plus_basis_action(const Permutation& g, int n, int dim, const Field& f) {
    Matrix m(dim, dim, f);
    auto add_tilde = [&](int row, int j) {
        if (j < dim) {
            m.set(row, j, m.get(row, j) ^ 1u);
        } else if (j < n - 1) {
            for (int c = 0; c < dim; ++c) m.set(row, c, m.get(row, c) ^ 1u);
        } // j == n-1 contributes zero
    };
    const int last = g.apply(n - 1);
    for (int i = 0; i < dim; ++i) {
        add_tilde(i, g.apply(i));
        add_tilde(i, last);
    }
    return m;
}

} // namespace

Matrix action_on_Mprime(const Permutation& g, int n, const Field& f) {
    return plus_basis_action(g, n, n - 1, f);
}

Matrix action_on_D(const Permutation& g, int n, const Field& f) {
    return n % 2 ? plus_basis_action(g, n, n - 1, f)
                 : plus_basis_action(g, n, n - 2, f);
}

Matrix m_vector_to_mprime(const Matrix& v) {
    const int n = v.cols();
    unsigned sum = 0;
    for (int i = 0; i < n; ++i) sum ^= v.get(0, i);
    if (sum) throw domain_error("m_vector_to_mprime: coefficient sum is nonzero");
    Matrix out(1, n - 1, v.field());
    for (int i = 0; i < n - 1; ++i)
        if (unsigned x = v.get(0, i)) out.set(0, i, x);
    return out;
}

Matrix mprime_vector_to_d(const Matrix& v) {
    const int d = v.cols() - 1;
    Matrix out(1, d, v.field());
    unsigned lastc = v.get(0, d);
    for (int i = 0; i < d; ++i) out.set(0, i, v.get(0, i) ^ lastc);
    return out;
}

NaturalModules natural_modules(int n, const Field& f, std::uint64_t seed) {
    if (n < 3) throw domain_error("natural_modules: n must be at least 3");
    NaturalModules out;
    out.n = n;
    out.field = &f;
    PermGroup sn = symmetric_group(n, seed);
    PermGroup an = alternating_group(n, seed);

    auto build = [&](const PermGroup& grp, auto actionfn, int dim, std::string label) {
        std::vector<Matrix> actions;
        for (const Permutation& g : grp.generators()) actions.push_back(actionfn(g, n, f));
        return GModule(grp, f, dim, std::move(actions), std::move(label),
                       [actionfn, n, &f](const Permutation& g) { return actionfn(g, n, f); });
    };
    std::string suffix = "(n=" + std::to_string(n) + ")";
    out.M = build(sn, action_on_M, n, "M" + suffix);
    out.Mp = build(sn, action_on_Mprime, n - 1, "M'" + suffix);
    out.D = build(sn, action_on_D, n % 2 ? n - 1 : n - 2, "D" + suffix);
    out.E = build(an, action_on_D, n % 2 ? n - 1 : n - 2, "E" + suffix);
    return out;
}

std::vector<int> delta_positions(int n) {
    TwoAdicProfile prof = two_adic_profile(n);
    if (n % 2) throw domain_error("delta_positions: n must be even");
    std::vector<int> delta(n);
    for (int j = 0; j < prof.l(); ++j) {
        Permutation yj = Permutation::identity(n);
        for (int s = prof.exponents[j]; s >= 1; --s)
            yj = yj * w_perm(prof.starts[j], 1 << s, n);
        int point = prof.starts[j];
        for (int i = 0; i < prof.parts[j]; ++i) {
            delta[prof.starts[j] + i] = point;
            point = yj.apply(point);
        }
    }
    return delta;
}

DistinguishedVectors distinguished_vectors(int n, const Field& f) {
    if (n < 4 || n % 2)
        throw domain_error("distinguished_vectors: n must be even and at least 4");
    TwoAdicProfile prof = two_adic_profile(n);
    std::vector<int> delta = delta_positions(n);
    DistinguishedVectors out;
    out.zero_plus = Matrix(1, n, f);
    out.plus = Matrix(1, n, f);
    for (int i = 0; i < n; ++i) out.plus.set(0, i, 1);
    for (int j = 0; j < prof.l(); ++j) {
        Matrix h1(1, n, f), h2(1, n, f);
        for (int i = 0; i < prof.parts[j] / 2; ++i) {
            h1.set(0, delta[prof.starts[j] + 2 * i], 1);
            h2.set(0, delta[prof.starts[j] + 2 * i + 1], 1);
        }
        out.block.push_back(h1 + h2);
        out.zero_plus = out.zero_plus + h2;
        out.half1.push_back(std::move(h1));
        out.half2.push_back(std::move(h2));
    }
    return out;
}

int top_quotient_image_order(const PermGroup& h, int j, const TwoAdicProfile& prof) {
    if (prof.parts[j] <= 2)
        throw domain_error("top_quotient_image: block has no half-swap quotient");
    auto [b0, b1] = prof.block(j);
    auto [h1lo, h1hi] = prof.half1(j);
    bool swaps = false;
    for (const Permutation& g : h.generators()) {
        int in1 = 0, in2 = 0;
        for (int p = h1lo; p < h1hi; ++p) {
            int q = g.apply(p);
            if (q < b0 || q >= b1)
                throw domain_error("top_quotient_image: group does not preserve the block");
            (q < h1hi ? in1 : in2)++;
        }
        if (in1 && in2)
            throw domain_error("top_quotient_image: group does not respect the halves");
        if (in2) swaps = true;
    }
    return swaps ? 2 : 1;
}

SplitBases lemma71_bases(int n, const Field& f) {
    TwoAdicProfile prof = two_adic_profile(n);
    if (n % 2 || prof.l() != 3 || prof.n_l() != 2)
        throw domain_error("lemma71_bases: profile must have l = 3 and n_l = 2");
    std::vector<int> delta = delta_positions(n);
    const int n1 = prof.parts[0];
    const int n2 = prof.parts[1];
    SplitBases out;
    out.b1 = Matrix(n1, n, f);
    out.b2 = Matrix(n2, n, f);
    auto flip = [&](Matrix& m, int row, int pos) {
        m.set(row, delta[pos], m.get(row, delta[pos]) ^ 1u);
    };
    // b_1 = delta_1 + delta_{n-1} + sum of odd delta positions of block 2
    flip(out.b1, 0, 0);
    flip(out.b1, 0, n - 2);
    for (int i = 0; i < n2 / 2; ++i) flip(out.b1, 0, n1 + 2 * i);
    for (int jrow = 2; jrow <= n1; ++jrow) {
        flip(out.b1, jrow - 1, jrow - 1);
        flip(out.b1, jrow - 1, jrow - 2);
        flip(out.b1, jrow - 1, n - 2);
        flip(out.b1, jrow - 1, n - 1);
    }
    flip(out.b2, 0, n1);
    flip(out.b2, 0, n - 2);
    for (int i = 0; i < n1 / 2; ++i) flip(out.b2, 0, 2 * i);
    for (int jrow = 2; jrow <= n2; ++jrow) {
        flip(out.b2, jrow - 1, n1 + jrow - 1);
        flip(out.b2, jrow - 1, n1 + jrow - 2);
        flip(out.b2, jrow - 1, n - 2);
        flip(out.b2, jrow - 1, n - 1);
    }
    return out;
}

std::vector<Matrix> prop81_endo_basis(int n, const Field& f) {
    TwoAdicProfile prof = two_adic_profile(n);
    if (n % 2 || prof.l() != 2 || prof.n_l() != 2 || n <= 6)
        throw domain_error("prop81_endo_basis: profile must have l = 2, n_l = 2, n > 6");
    const int d = n - 2;
    const int half = d / 2;
    std::vector<Matrix> phi(6, Matrix(d, d, f));
    for (int i = 0; i < half; ++i) phi[0].set(i, i, 1);
    for (int i = half; i < d; ++i) phi[1].set(i, i, 1);
    for (int r = 0; r < half; ++r)
        for (int c = 0; c < half; ++c) phi[2].set(r, c, 1);
    for (int r = half; r < d; ++r)
        for (int c = half; c < d; ++c) phi[3].set(r, c, 1);
    for (int r = 0; r < half; ++r)
        for (int c = half; c < d; ++c) phi[4].set(r, c, 1);
    for (int r = half; r < d; ++r)
        for (int c = 0; c < half; ++c) phi[5].set(r, c, 1);
    return phi;
}

Remark82Data remark82_data(std::uint64_t seed) {
    Remark82Data out;
    auto p = [](const char* s) { return Permutation::parse(s, 6); };
    out.Q6 = PermGroup::from_generators_known_order(
        {p("(1,3)(2,4)"), p("(1,2)(3,4)"), p("(3,4)(5,6)")}, 8, seed);
    out.Q = PermGroup::from_generators_known_order(
        {p("(1,2)(3,4)"), p("(3,4)(5,6)")}, 4, seed);
    for (const Permutation& g : out.Q6.generators())
        out.action_gf2.push_back(action_on_D(g, 6, gf(1)));

    const Field& f4 = gf(2);
    const unsigned w = 2; // omega
    out.base_change = Matrix(4, 4, f4);
    out.base_change.set(0, 0, 1);
    out.base_change.set(0, 3, w);
    out.base_change.set(1, 1, 1);
    out.base_change.set(1, 2, w);
    out.base_change.set(2, 2, 1);
    out.base_change.set(2, 1, w);
    out.base_change.set(3, 3, 1);
    out.base_change.set(3, 0, w);

    auto cinv = invert(out.base_change);
    for (const Matrix& a : out.action_gf2)
        out.action_gf4.push_back(out.base_change * extend_scalars(a, f4) * *cinv);

    // U is spanned by the first two rows of the base change; actions of Q's
    // generators are the upper-left blocks
    std::vector<Matrix> u_actions;
    for (int gi : {1, 2}) { // Q's generators are Q6's second and third
        Matrix blk(2, 2, f4);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) blk.set(r, c, out.action_gf4[gi].get(r, c));
        u_actions.push_back(std::move(blk));
    }
    out.U = GModule(out.Q, f4, 2, std::move(u_actions), "U(n=6)");
    return out;
}

} // namespace natvert
