#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natvert/field.hpp"
#include "natvert/rng.hpp"

namespace natvert {

// Dense matrix over GF(2^k), bit-packed. One row occupies
// ceil(cols*k/64) words; entry c of a row sits at bits [c*k, c*k+k),
// little-endian within each word. Row vectors act on the right: v*A.
// Matrices are treated as immutable values once built; the mutating row
// operations below are building blocks for the elimination kernels.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const Field& f);

    static Matrix identity(int n, const Field& f);
    static Matrix random(int rows, int cols, const Field& f, Rng& rng);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return *f_; }
    int words_per_row() const { return wpr_; }

    unsigned get(int r, int c) const;
    void set(int r, int c, unsigned v);

    std::uint64_t* row(int r) { return data_.data() + std::size_t(r) * wpr_; }
    const std::uint64_t* row(int r) const { return data_.data() + std::size_t(r) * wpr_; }

    // dst += src (coefficient-wise xor; valid for any k in characteristic 2)
    void row_xor(int dst, const std::uint64_t* src);
    // dst += scalar * src
    void row_addmul(int dst, const std::uint64_t* src, unsigned scalar);
    void row_scale(int r, unsigned scalar);
    void swap_rows(int a, int b);
    bool row_is_zero(int r) const;
    int row_leading_col(int r) const; // -1 when the row is zero

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    bool operator==(const Matrix& rhs) const;
    bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

    Matrix transpose() const;
    Matrix pow(unsigned long long e) const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix row_as_matrix(int r) const;         // 1 x cols slice
    Matrix extract_rows(const std::vector<int>& idx) const;
    Matrix vstack(const Matrix& below) const;
    Matrix vec() const;                        // 1 x rows*cols, row-major
    static Matrix unvec(const Matrix& v, int rows, int cols);

private:
    int rows_ = 0;
    int cols_ = 0;
    const Field* f_ = &gf(1);
    int wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

struct RrefResult {
    Matrix mat;
    int rank = 0;
    std::vector<int> pivots;
};

// Reduced row echelon form. The elimination below/above the pivot is the
// data-parallel kernel; the serial per-entry reference used to validate it
// lives in the test suite.
RrefResult rref(Matrix a);
int rank(const Matrix& a);

// Basis of {v : v*A = 0} as a full-rref matrix (possibly 0 rows).
Matrix kernel_basis(const Matrix& a);

std::optional<Matrix> invert(const Matrix& a);

// Solve X*A = B; returns X (B.rows x A.rows) or nullopt when unsolvable.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);

// Incremental row-space basis with optional combination tracking.
// Rows are kept forward-reduced with normalized leading entries.
class Echelon {
public:
    Echelon(int cols, const Field& f, int tag_cols = 0);

    // Reduces v (1 x cols) against the basis, extending the basis if a
    // nonzero residue remains. Returns true when the basis grew. tag (1 x
    // tag_cols) is carried through the same row operations; when the
    // residue is zero the final tag expresses the input as a combination
    // of previously added tags.
    bool add(Matrix v, Matrix* tag = nullptr, Matrix* tag_out = nullptr);

    int dim() const { return int(pivot_cols_.size()); }
    // Basis rows as a fully reduced rref matrix.
    Matrix rref_basis() const;

private:
    int cols_;
    const Field* f_;
    int tag_cols_;
    std::vector<Matrix> rows_;
    std::vector<Matrix> tags_;
    std::vector<int> pivot_cols_;
};

// Row space in reduced echelon form.
struct Subspace {
    int ambient = 0;
    Matrix basis; // full rref, no zero rows

    int dim() const { return basis.rows(); }
    static Subspace from_rows(const Matrix& rows);
    static Subspace zero(int ambient, const Field& f);
    static Subspace full(int ambient, const Field& f);
};

Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersect(const Subspace& u, const Subspace& v);
bool subspace_contains(const Subspace& u, const Subspace& v); // v <= u
bool subspace_contains_vector(const Subspace& u, const Matrix& v);
// Coset representatives completing v's basis inside u; requires v <= u.
Matrix quotient_basis(const Subspace& u, const Subspace& v);

// Smallest subspace containing the seed rows and closed under all actions.
Subspace spin(const Matrix& seeds, const std::vector<Matrix>& actions);

// Entrywise canonical embedding into a larger field; preserves rank.
Matrix extend_scalars(const Matrix& a, const Field& dst);

// Text fixture format: "rows cols k" header, then one base-16 digit per
// entry, one line per row. Bit-exact round trip.
std::string matrix_to_fixture(const Matrix& a);
Matrix matrix_from_fixture(const std::string& text);

} // namespace natvert
