#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "natvert/gmod.hpp"
#include "natvert/group.hpp"
#include "natvert/matrix.hpp"
#include "natvert/perm.hpp"

namespace natvert {

// 2-adic expansion n = n_1 + ... + n_l with n_1 > ... > n_l >= 2 powers of
// two; governs the block structure of the Sylow 2-subgroups. Odd n uses the
// expansion of n-1 (the last point is untouched).
struct TwoAdicProfile {
    int n = 0;        // as requested
    int even_n = 0;   // n for even n, n-1 otherwise
    std::vector<int> parts;
    std::vector<int> exponents;
    std::vector<int> starts; // 0-based block starts

    int l() const { return int(parts.size()); }
    int n_l() const { return parts.back(); }
    std::pair<int, int> block(int j) const { // 0-based [start, end)
        return {starts[j], starts[j] + parts[j]};
    }
    std::pair<int, int> half1(int j) const {
        return {starts[j], starts[j] + parts[j] / 2};
    }
    std::pair<int, int> half2(int j) const {
        return {starts[j] + parts[j] / 2, starts[j] + parts[j]};
    }
};

TwoAdicProfile two_adic_profile(int n);

// 2-part of n! via Legendre's formula.
int nu2_factorial(int n);
u128 sylow2_order_sym(int n);
u128 sylow2_order_alt(int n);
u128 factorial_u128(int n);

enum class CaseTag { n3, n4, n6, odd, two_power, nl_gt2, nl2_l2, nl2_l3, nl2_lge4 };
CaseTag case_tag(int n);
const char* case_tag_name(CaseTag tag);

PermGroup symmetric_group(int n, std::uint64_t seed = 0);
PermGroup alternating_group(int n, std::uint64_t seed = 0);

// Generator families for the Sylow 2-subgroups: the sets W and W'.
std::vector<Permutation> sylow_sym_gens(int n);
std::vector<Permutation> sylow_alt_gens(int n);
PermGroup sylow_sym(int n, std::uint64_t seed = 0);
PermGroup sylow_alt(int n, std::uint64_t seed = 0);
// P_m / Q_m acting on {1..m} inside degree `degree`; trivial for m < 2
// (resp. m < 4 with Q_2 trivial).
PermGroup embedded_sylow_sym(int m, int degree, std::uint64_t seed = 0);
PermGroup embedded_sylow_alt(int m, int degree, std::uint64_t seed = 0);

// Even-part subgroup G cap A_n via Schreier generators of the index-2
// subgroup; returns G itself when every generator is even.
PermGroup even_part(const PermGroup& g, std::uint64_t seed = 0);

struct NamedSubgroups {
    int n = 0;
    TwoAdicProfile profile;
    PermGroup P, Q;       // Sylow 2-subgroups of S_n and A_n
    PermGroup B, Bp;      // base subgroup B_n and B_n' = B_n cap A_n
    PermGroup Y, Yp;      // Y_n and Y_n' = Y_n cap A_n
    PermGroup X;          // X_n = <x_{n_j}>
    PermGroup phiP, phiQ; // Frattini subgroups
    std::vector<Permutation> y;  // y_{n_j} per block
    std::vector<Permutation> yp; // y'_{n_j} = y_{n_j} y_{n_l}
    std::vector<Permutation> x;  // x_{n_j} = y_{n_j}^2
};

NamedSubgroups named_subgroups(int n, std::uint64_t seed = 0);

// The natural permutation module chain M > M' > M'' and the simple heads,
// with direct permutation-action hooks.
struct NaturalModules {
    int n = 0;
    const Field* field = &gf(1);
    GModule M;  // dim n over S_n
    GModule Mp; // M', dim n-1 over S_n
    GModule D;  // n even: M'/M'' of dim n-2; n odd: D = M'
    GModule E;  // D with the acting group A_n
};

NaturalModules natural_modules(int n, const Field& f, std::uint64_t seed = 0);

// Action matrices on the bases of M / M' / D for an arbitrary permutation.
Matrix action_on_M(const Permutation& g, int n, const Field& f);
Matrix action_on_Mprime(const Permutation& g, int n, const Field& f);
Matrix action_on_D(const Permutation& g, int n, const Field& f);

// Coordinates: an M-vector with zero coefficient sum in the basis
// {gamma_i + gamma_n}; and its image in D = M'/M'' (n even).
Matrix m_vector_to_mprime(const Matrix& v);
Matrix mprime_vector_to_d(const Matrix& v);

// The delta re-indexing: position i (0-based) holds gamma_{delta_perm[i]}.
std::vector<int> delta_positions(int n);

struct DistinguishedVectors {
    // everything in gamma coordinates of M (1 x n rows)
    std::vector<Matrix> half1;  // delta_{j'}^+
    std::vector<Matrix> half2;  // delta_{j''}^+
    std::vector<Matrix> block;  // delta_j^+
    Matrix zero_plus;           // delta_0^+
    Matrix plus;                // delta^+
};

DistinguishedVectors distinguished_vectors(int n, const Field& f);

// Image of H's block-j component in the half-swap quotient of P_{n_j};
// returns 1 (trivial) or 2 (full C_2). Requires n_j > 2.
int top_quotient_image_order(const PermGroup& h, int j, const TwoAdicProfile& prof);

// Explicit half-sum bases of the two Y'-invariant complements (profiles
// with l = 3, n_l = 2); rows in gamma coordinates.
struct SplitBases {
    Matrix b1; // n_1 rows
    Matrix b2; // n_2 rows
};
SplitBases lemma71_bases(int n, const Field& f);

// The six block-projection/socle endomorphisms of D for profiles with
// l = 2, n_l = 2 and n > 6, as (n-2) x (n-2) matrices.
std::vector<Matrix> prop81_endo_basis(int n, const Field& f);

// The fixed n = 6 data: the dihedral Sylow Q_6, the Klein subgroup Q, the
// action matrices over GF(2), the omega base change and the two-block
// action matrices over GF(4), and the 2-dimensional module U over Q.
struct Remark82Data {
    PermGroup Q6;
    PermGroup Q;
    std::vector<Matrix> action_gf2;    // actions of Q6's three generators on E
    Matrix base_change;                // rows: U basis then V basis, over GF(4)
    std::vector<Matrix> action_gf4;    // the same actions in the U+V basis
    GModule U;                         // over Q, GF(4), dim 2
};
Remark82Data remark82_data(std::uint64_t seed = 0);

} // namespace natvert
