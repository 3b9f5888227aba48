#include "natvert/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "natvert/errors.hpp"

namespace natvert {

Matrix::Matrix(int rows, int cols, const Field& f)
    : rows_(rows), cols_(cols), f_(&f),
      wpr_(cols == 0 ? 0 : int((std::size_t(cols) * f.k() + 63) / 64)),
      data_(std::size_t(rows) * wpr_, 0) {}

Matrix Matrix::identity(int n, const Field& f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::random(int rows, int cols, const Field& f, Rng& rng) {
    Matrix m(rows, cols, f);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m.set(r, c, unsigned(rng.below(f.order())));
    return m;
}

unsigned Matrix::get(int r, int c) const {
    const int k = f_->k();
    const std::size_t bit = std::size_t(c) * k;
    const std::uint64_t* w = row(r) + (bit >> 6);
    const unsigned off = bit & 63;
    const unsigned mask = (1u << k) - 1;
    if (off + k <= 64) return unsigned(*w >> off) & mask;
    // k=3 entries may straddle a word boundary
    unsigned lo = unsigned(*w >> off);
    unsigned hi = unsigned(w[1] << (64 - off));
    return (lo | hi) & mask;
}

void Matrix::set(int r, int c, unsigned v) {
    const int k = f_->k();
    const std::size_t bit = std::size_t(c) * k;
    std::uint64_t* w = row(r) + (bit >> 6);
    const unsigned off = bit & 63;
    const std::uint64_t mask = (1ull << k) - 1;
    if (off + k <= 64) {
        *w = (*w & ~(mask << off)) | (std::uint64_t(v) << off);
        return;
    }
    const unsigned nlo = 64 - off;
    *w = (*w & ~(mask << off)) | (std::uint64_t(v) << off);
    w[1] = (w[1] & ~(mask >> nlo)) | (std::uint64_t(v) >> nlo);
}

void Matrix::row_xor(int dst, const std::uint64_t* src) {
    std::uint64_t* d = row(dst);
    for (int i = 0; i < wpr_; ++i) d[i] ^= src[i];
}

void Matrix::row_addmul(int dst, const std::uint64_t* src, unsigned scalar) {
    if (scalar == 0) return;
    if (scalar == 1 || f_->k() == 1) {
        row_xor(dst, src);
        return;
    }
    // per-entry scaled accumulate; k >= 2 matrices stay desk-sized
    const Field& f = *f_;
    const int k = f.k();
    const unsigned mask = (1u << k) - 1;
    for (int c = 0; c < cols_; ++c) {
        const std::size_t bit = std::size_t(c) * k;
        const std::uint64_t* w = src + (bit >> 6);
        const unsigned off = bit & 63;
        unsigned v;
        if (off + k <= 64) {
            v = unsigned(*w >> off) & mask;
        } else {
            v = (unsigned(*w >> off) | unsigned(w[1] << (64 - off))) & mask;
        }
        if (v) set(dst, c, get(dst, c) ^ f.mul(scalar, v));
    }
}

void Matrix::row_scale(int r, unsigned scalar) {
    if (scalar == 1) return;
    for (int c = 0; c < cols_; ++c) set(r, c, f_->mul(get(r, c), scalar));
}

void Matrix::swap_rows(int a, int b) {
    if (a == b) return;
    std::uint64_t* ra = row(a);
    std::uint64_t* rb = row(b);
    for (int i = 0; i < wpr_; ++i) std::swap(ra[i], rb[i]);
}

bool Matrix::row_is_zero(int r) const {
    const std::uint64_t* w = row(r);
    for (int i = 0; i < wpr_; ++i)
        if (w[i]) return false;
    return true;
}

int Matrix::row_leading_col(int r) const {
    const std::uint64_t* w = row(r);
    const int k = f_->k();
    for (int i = 0; i < wpr_; ++i) {
        if (!w[i]) continue;
        // first nonzero word narrows the search to at most 64/k + 1 entries
        int first_bit = i * 64 + __builtin_ctzll(w[i]);
        int c = first_bit / k;
        for (; c < cols_; ++c)
            if (get(r, c)) return c;
    }
    return -1;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_ || f_ != rhs.f_)
        throw domain_error("matrix: incompatible shapes or fields in product");
    Matrix out(rows_, rhs.cols_, *f_);
    if (f_->k() == 1) {
        if (rows_ >= 64) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < rows_; ++i) {
                for (int j = 0; j < cols_; ++j)
                    if (get(i, j)) out.row_xor(i, rhs.row(j));
            }
        } else {
            for (int i = 0; i < rows_; ++i)
                for (int j = 0; j < cols_; ++j)
                    if (get(i, j)) out.row_xor(i, rhs.row(j));
        }
    } else {
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) {
                unsigned a = get(i, j);
                if (a) out.row_addmul(i, rhs.row(j), a);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || f_ != rhs.f_)
        throw domain_error("matrix: incompatible shapes or fields in sum");
    Matrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] ^= rhs.data_[i];
    return out;
}

bool Matrix::operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && f_ == rhs.f_ &&
           data_ == rhs.data_;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_, *f_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            unsigned v = get(r, c);
            if (v) out.set(c, r, v);
        }
    return out;
}

Matrix Matrix::pow(unsigned long long e) const {
    if (rows_ != cols_) throw domain_error("matrix: pow of non-square matrix");
    Matrix result = identity(rows_, *f_);
    Matrix base = *this;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

bool Matrix::is_zero() const {
    for (std::uint64_t w : data_)
        if (w) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_, *f_);
}

Matrix Matrix::row_as_matrix(int r) const {
    Matrix out(1, cols_, *f_);
    std::copy(row(r), row(r) + wpr_, out.row(0));
    return out;
}

Matrix Matrix::extract_rows(const std::vector<int>& idx) const {
    Matrix out(int(idx.size()), cols_, *f_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        std::copy(row(idx[i]), row(idx[i]) + wpr_, out.row(int(i)));
    return out;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (cols_ != below.cols_ || f_ != below.f_)
        throw domain_error("matrix: vstack shape mismatch");
    Matrix out(rows_ + below.rows_, cols_, *f_);
    std::copy(data_.begin(), data_.end(), out.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(),
              out.data_.begin() + data_.size());
    return out;
}

Matrix Matrix::vec() const {
    Matrix out(1, rows_ * cols_, *f_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            unsigned v = get(r, c);
            if (v) out.set(0, r * cols_ + c, v);
        }
    return out;
}

Matrix Matrix::unvec(const Matrix& v, int rows, int cols) {
    if (v.rows() != 1 || v.cols() != rows * cols)
        throw domain_error("matrix: unvec shape mismatch");
    Matrix out(rows, cols, v.field());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            unsigned x = v.get(0, r * cols + c);
            if (x) out.set(r, c, x);
        }
    return out;
}

// ---------------------------------------------------------------------------

RrefResult rref(Matrix a) {
    const int rows = a.rows();
    const int cols = a.cols();
    const Field& f = a.field();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a.get(i, c)) { p = i; break; }
        if (p < 0) continue;
        a.swap_rows(r, p);
        unsigned lead = a.get(r, c);
        if (lead != 1) a.row_scale(r, f.inv(lead));
        const std::uint64_t* pr = a.row(r);
        if (rows >= 256) {
#pragma omp parallel for schedule(static)
            for (int i = 0; i < rows; ++i) {
                if (i == r) continue;
                unsigned v = a.get(i, c);
                if (v) a.row_addmul(i, pr, v);
            }
        } else {
            for (int i = 0; i < rows; ++i) {
                if (i == r) continue;
                unsigned v = a.get(i, c);
                if (v) a.row_addmul(i, pr, v);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return RrefResult{std::move(a), r, std::move(pivots)};
}

int rank(const Matrix& a) { return rref(a).rank; }

namespace {

// Elimination with a row-operation transcript: returns (R, T, pivots) with
// T*A = R, T invertible, R in rref.
struct TrackedRref {
    Matrix r;
    Matrix t;
    std::vector<int> pivots;
    int rank;
};

TrackedRref rref_tracked(Matrix a) {
    const int rows = a.rows();
    const int cols = a.cols();
    const Field& f = a.field();
    Matrix t = Matrix::identity(rows, f);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a.get(i, c)) { p = i; break; }
        if (p < 0) continue;
        a.swap_rows(r, p);
        t.swap_rows(r, p);
        unsigned lead = a.get(r, c);
        if (lead != 1) {
            unsigned s = f.inv(lead);
            a.row_scale(r, s);
            t.row_scale(r, s);
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            unsigned v = a.get(i, c);
            if (v) {
                a.row_addmul(i, a.row(r), v);
                t.row_addmul(i, t.row(r), v);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return TrackedRref{std::move(a), std::move(t), std::move(pivots), r};
}

} // namespace

Matrix kernel_basis(const Matrix& a) {
    TrackedRref tr = rref_tracked(a);
    std::vector<int> zero_rows;
    for (int i = tr.rank; i < a.rows(); ++i) zero_rows.push_back(i);
    Matrix k = tr.t.extract_rows(zero_rows);
    return rref(std::move(k)).mat;
}

std::optional<Matrix> invert(const Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    TrackedRref tr = rref_tracked(a);
    if (tr.rank != a.rows()) return std::nullopt;
    return tr.t;
}

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) throw domain_error("solve_left: width mismatch");
    TrackedRref tr = rref_tracked(a);
    const Field& f = a.field();
    Matrix x(b.rows(), a.rows(), f);
    for (int i = 0; i < b.rows(); ++i) {
        Matrix v = b.row_as_matrix(i);
        for (int j = 0; j < tr.rank; ++j) {
            unsigned c = v.get(0, tr.pivots[j]);
            if (c) {
                v.row_addmul(0, tr.r.row(j), c);
                x.row_addmul(i, tr.t.row(j), c);
            }
        }
        if (!v.row_is_zero(0)) return std::nullopt;
    }
    return x;
}

// ---------------------------------------------------------------------------

Echelon::Echelon(int cols, const Field& f, int tag_cols)
    : cols_(cols), f_(&f), tag_cols_(tag_cols) {}

bool Echelon::add(Matrix v, Matrix* tag, Matrix* tag_out) {
    Matrix t = tag ? *tag : Matrix(1, std::max(tag_cols_, 1), *f_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        unsigned c = v.get(0, pivot_cols_[i]);
        if (c) {
            v.row_addmul(0, rows_[i].row(0), c);
            if (tag_cols_) t.row_addmul(0, tags_[i].row(0), c);
        }
    }
    int lead = v.row_leading_col(0);
    if (lead < 0) {
        if (tag_out) *tag_out = std::move(t);
        return false;
    }
    unsigned s = v.get(0, lead);
    if (s != 1) {
        unsigned inv = f_->inv(s);
        v.row_scale(0, inv);
        if (tag_cols_) t.row_scale(0, inv);
    }
    rows_.push_back(std::move(v));
    tags_.push_back(std::move(t));
    pivot_cols_.push_back(lead);
    return true;
}

Matrix Echelon::rref_basis() const {
    Matrix m(int(rows_.size()), cols_, *f_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (int c = 0; c < cols_; ++c) {
            unsigned v = rows_[i].get(0, c);
            if (v) m.set(int(i), c, v);
        }
    return rref(std::move(m)).mat;
}

// ---------------------------------------------------------------------------

Subspace Subspace::from_rows(const Matrix& rows) {
    RrefResult r = rref(rows);
    std::vector<int> keep;
    for (int i = 0; i < r.rank; ++i) keep.push_back(i);
    return Subspace{rows.cols(), r.mat.extract_rows(keep)};
}

Subspace Subspace::zero(int ambient, const Field& f) {
    return Subspace{ambient, Matrix(0, ambient, f)};
}

Subspace Subspace::full(int ambient, const Field& f) {
    return Subspace{ambient, Matrix::identity(ambient, f)};
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient != v.ambient) throw domain_error("subspace: ambient mismatch");
    return Subspace::from_rows(u.basis.vstack(v.basis));
}

Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient != v.ambient) throw domain_error("subspace: ambient mismatch");
    if (u.dim() == 0 || v.dim() == 0)
        return Subspace::zero(u.ambient, u.basis.field());
    // kernel rows (x | y) of the stacked basis satisfy x*U = y*V
    Matrix stacked = u.basis.vstack(v.basis);
    Matrix k = kernel_basis(stacked);
    Matrix result(k.rows(), u.ambient, u.basis.field());
    for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < u.dim(); ++j) {
            unsigned c = k.get(i, j);
            if (c) result.row_addmul(i, u.basis.row(j), c);
        }
    return Subspace::from_rows(result);
}

bool subspace_contains(const Subspace& u, const Subspace& v) {
    if (u.ambient != v.ambient) throw domain_error("subspace: ambient mismatch");
    for (int i = 0; i < v.dim(); ++i)
        if (!subspace_contains_vector(u, v.basis.row_as_matrix(i))) return false;
    return true;
}

bool subspace_contains_vector(const Subspace& u, const Matrix& v) {
    Matrix w = v;
    for (int i = 0; i < u.dim(); ++i) {
        int pc = u.basis.row_leading_col(i);
        unsigned c = w.get(0, pc);
        if (c) w.row_addmul(0, u.basis.row(i), c);
    }
    return w.row_is_zero(0);
}

Matrix quotient_basis(const Subspace& u, const Subspace& v) {
    if (!subspace_contains(u, v))
        throw domain_error("quotient_basis: second subspace is not contained in first");
    Echelon ech(u.ambient, u.basis.field());
    for (int i = 0; i < v.dim(); ++i) ech.add(v.basis.row_as_matrix(i));
    std::vector<int> reps;
    for (int i = 0; i < u.dim(); ++i)
        if (ech.add(u.basis.row_as_matrix(i))) reps.push_back(i);
    return u.basis.extract_rows(reps);
}

Subspace spin(const Matrix& seeds, const std::vector<Matrix>& actions) {
    const Field& f = seeds.field();
    const int n = seeds.cols();
    for (const Matrix& a : actions) {
        if (a.rows() != a.cols() || a.rows() != n)
            throw domain_error("spin: actions must be square of seed width");
    }
    Echelon ech(n, f);
    std::vector<Matrix> work;
    for (int i = 0; i < seeds.rows(); ++i) {
        Matrix v = seeds.row_as_matrix(i);
        if (ech.add(v)) work.push_back(seeds.row_as_matrix(i));
    }
    for (std::size_t head = 0; head < work.size(); ++head) {
        for (const Matrix& a : actions) {
            Matrix w = work[head] * a;
            Matrix copy = w;
            if (ech.add(std::move(copy))) work.push_back(std::move(w));
        }
    }
    return Subspace{n, ech.rref_basis()};
}

Matrix extend_scalars(const Matrix& a, const Field& dst) {
    const Field& src = a.field();
    if (&src == &dst) return a;
    Matrix out(a.rows(), a.cols(), dst);
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c) {
            unsigned v = a.get(r, c);
            if (v) out.set(r, c, embed(v, src, dst));
        }
    return out;
}

// ---------------------------------------------------------------------------

std::string matrix_to_fixture(const Matrix& a) {
    static const char* digits = "0123456789abcdef";
    std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) +
                      " " + std::to_string(a.field().k()) + "\n";
    for (int r = 0; r < a.rows(); ++r) {
        for (int c = 0; c < a.cols(); ++c) out += digits[a.get(r, c)];
        out += '\n';
    }
    return out;
}

Matrix matrix_from_fixture(const std::string& text) {
    std::istringstream in(text);
    int rows, cols, k;
    if (!(in >> rows >> cols >> k)) throw parse_error("matrix fixture: bad header");
    if (k < 1 || k > 4) throw parse_error("matrix fixture: bad field degree");
    Matrix m(rows, cols, gf(k));
    for (int r = 0; r < rows; ++r) {
        std::string line;
        if (!(in >> line) && cols > 0) throw parse_error("matrix fixture: missing row");
        if (int(line.size()) != cols) throw parse_error("matrix fixture: bad row width");
        for (int c = 0; c < cols; ++c) {
            char ch = line[c];
            unsigned v;
            if (ch >= '0' && ch <= '9') v = unsigned(ch - '0');
            else if (ch >= 'a' && ch <= 'f') v = unsigned(ch - 'a' + 10);
            else throw parse_error("matrix fixture: bad digit");
            if (v >= m.field().order()) throw parse_error("matrix fixture: entry out of field");
            m.set(r, c, v);
        }
    }
    return m;
}

} // namespace natvert
