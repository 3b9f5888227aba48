#pragma once

// Serial reference implementation used as an independent oracle for the
// bit-packed kernels: entries are stored one per byte and elimination is
// textbook row reduction, no packing, no parallelism. Kept deliberately
// separate from the library's code paths.

#include <vector>

#include "natvert/field.hpp"
#include "natvert/matrix.hpp"

namespace natvert::testsupport {

struct NaiveMatrix {
    int rows = 0;
    int cols = 0;
    const Field* f = &gf(1);
    std::vector<unsigned> e; // row-major

    NaiveMatrix() = default;
    NaiveMatrix(int r, int c, const Field& field)
        : rows(r), cols(c), f(&field), e(std::size_t(r) * c, 0) {}

    unsigned& at(int r, int c) { return e[std::size_t(r) * cols + c]; }
    unsigned at(int r, int c) const { return e[std::size_t(r) * cols + c]; }

    static NaiveMatrix from_packed(const Matrix& m) {
        NaiveMatrix out(m.rows(), m.cols(), m.field());
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) out.at(r, c) = m.get(r, c);
        return out;
    }

    Matrix to_packed() const {
        Matrix out(rows, cols, *f);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (at(r, c)) out.set(r, c, at(r, c));
        return out;
    }
};

inline NaiveMatrix naive_mul(const NaiveMatrix& a, const NaiveMatrix& b) {
    NaiveMatrix out(a.rows, b.cols, *a.f);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            unsigned v = a.at(i, j);
            if (!v) continue;
            for (int c = 0; c < b.cols; ++c)
                out.at(i, c) ^= a.f->mul(v, b.at(j, c));
        }
    return out;
}

// Returns rank; reduces m to reduced row echelon form in place.
inline int naive_rref(NaiveMatrix& m) {
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pivot = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c)) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.e[std::size_t(r) * m.cols + j],
                                                   m.e[std::size_t(pivot) * m.cols + j]);
        unsigned inv = m.f->inv(m.at(r, c));
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.f->mul(m.at(r, j), inv);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            unsigned v = m.at(i, c);
            if (!v) continue;
            for (int j = 0; j < m.cols; ++j)
                m.at(i, j) ^= m.f->mul(v, m.at(r, j));
        }
        ++r;
    }
    return r;
}

inline int naive_rank(const NaiveMatrix& m) {
    NaiveMatrix copy = m;
    return naive_rref(copy);
}

// Kernel {v : v*A = 0} dimension via rank of the transpose-free identity:
// dim = rows - rank.
inline int naive_kernel_dim(const NaiveMatrix& m) { return m.rows - naive_rank(m); }

} // namespace natvert::testsupport
