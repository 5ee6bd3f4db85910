#pragma once

// Small dense integer-matrix helpers: products, determinants, exact rational
// solves and the Smith normal form. Sizes here are tiny (lattice ranks), so
// the simple algorithms are the right ones.

#include "cellulo/common.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace cellulo {

struct IntMat {
    std::size_t rows = 0, cols = 0;
    std::vector<long long> a;  // row-major

    IntMat() = default;
    IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    long long& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    long long operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator<(const IntMat& o) const { return a < o.a; }  // same shape assumed

    friend IntMat operator*(const IntMat& x, const IntMat& y) {
        IntMat r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                long long v = x(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
            }
        return r;
    }

    std::vector<long long> apply(const std::vector<long long>& v) const {
        std::vector<long long> r(rows, 0);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        std::vector<Rat> r(rows, Rat(0));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                if ((*this)(i, j) != 0) r[i] += Rat((*this)(i, j)) * v[j];
        return r;
    }

    IntMat transpose() const {
        IntMat t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

inline Int det(const IntMat& m) {
    // Fraction-free Bareiss elimination.
    std::size_t n = m.rows;
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return n == 0 ? Int(1) : Int(sign) * a[n - 1][n - 1];
}

/// Exact inverse of a matrix with determinant +-1. Throws otherwise.
inline IntMat unimodular_inverse(const IntMat& m) {
    std::size_t n = m.rows;
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
        a[i][n + i] = Rat(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (p < n && a[p][col] == Rat(0)) ++p;
        if (p == n) throw std::invalid_argument("unimodular_inverse: singular matrix");
        std::swap(a[col], a[p]);
        Rat piv = a[col][col];
        for (std::size_t j = 0; j < 2 * n; ++j) a[col][j] /= piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a[i][col] == Rat(0)) continue;
            Rat f = a[i][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
        }
    }
    IntMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = rat_to_int(a[i][n + j]);
    return inv;
}

/// Solves A x = b exactly over the rationals; empty result if inconsistent.
/// A need not be square; if the solution space is positive-dimensional the
/// particular solution with free variables set to 0 is returned.
inline bool solve_rational(const std::vector<std::vector<Rat>>& A0,
                           const std::vector<Rat>& b0, std::vector<Rat>& x) {
    auto A = A0;
    auto b = b0;
    std::size_t m = A.size(), n = m ? A[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && A[p][col] == Rat(0)) ++p;
        if (p == m) continue;
        std::swap(A[row], A[p]);
        std::swap(b[row], b[p]);
        Rat piv = A[row][col];
        for (std::size_t j = col; j < n; ++j) A[row][j] /= piv;
        b[row] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col] == Rat(0)) continue;
            Rat f = A[i][col];
            for (std::size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
            b[i] -= f * b[row];
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < m; ++i)
        if (b[i] != Rat(0)) return false;
    x.assign(n, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return true;
}

struct SmithForm {
    IntMat d;        // diagonal, d[i] | d[i+1]
    IntMat left;     // unimodular
    IntMat right;    // unimodular; left * a * right == d
};

/// Smith normal form by elementary row/column operations.
inline SmithForm smith_normal_form(const IntMat& input) {
    SmithForm s;
    s.d = input;
    s.left = IntMat::identity(input.rows);
    s.right = IntMat::identity(input.cols);
    IntMat& d = s.d;

    auto row_add = [&](std::size_t dst, std::size_t src, long long f) {
        for (std::size_t j = 0; j < d.cols; ++j) d(dst, j) += f * d(src, j);
        for (std::size_t j = 0; j < s.left.cols; ++j) s.left(dst, j) += f * s.left(src, j);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, long long f) {
        for (std::size_t i = 0; i < d.rows; ++i) d(i, dst) += f * d(i, src);
        for (std::size_t i = 0; i < s.right.rows; ++i) s.right(i, dst) += f * s.right(i, src);
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < d.cols; ++k) std::swap(d(i, k), d(j, k));
        for (std::size_t k = 0; k < s.left.cols; ++k) std::swap(s.left(i, k), s.left(j, k));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < d.rows; ++k) std::swap(d(k, i), d(k, j));
        for (std::size_t k = 0; k < s.right.rows; ++k) std::swap(s.right(k, i), s.right(k, j));
    };
    auto row_negate = [&](std::size_t i) {
        for (std::size_t k = 0; k < d.cols; ++k) d(i, k) = -d(i, k);
        for (std::size_t k = 0; k < s.left.cols; ++k) s.left(i, k) = -s.left(i, k);
    };

    std::size_t t = 0;
    while (t < d.rows && t < d.cols) {
        // find a nonzero pivot at or below/right of (t, t)
        std::size_t pi = t, pj = t;
        bool found = false;
        long long best = 0;
        for (std::size_t i = t; i < d.rows; ++i)
            for (std::size_t j = t; j < d.cols; ++j)
                if (d(i, j) != 0 && (!found || std::abs(d(i, j)) < best)) {
                    found = true;
                    best = std::abs(d(i, j));
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < d.rows; ++i) {
                if (d(i, t) == 0) continue;
                long long q = floordiv(d(i, t), std::abs(d(t, t))) * (d(t, t) > 0 ? 1 : -1);
                row_add(i, t, -q);
                if (d(i, t) != 0) {
                    row_swap(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < d.cols; ++j) {
                if (d(t, j) == 0) continue;
                long long q = floordiv(d(t, j), std::abs(d(t, t))) * (d(t, t) > 0 ? 1 : -1);
                col_add(j, t, -q);
                if (d(t, j) != 0) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
        }
        ++t;
    }
    // positive diagonal, then enforce the divisibility chain
    for (std::size_t i = 0; i < std::min(d.rows, d.cols); ++i)
        if (d(i, i) < 0) row_negate(i);
    bool changed = true;
    std::size_t r = std::min(d.rows, d.cols);
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < r; ++i) {
            long long x = d(i, i), y = d(i + 1, i + 1);
            if (x != 0 && y % x == 0) continue;
            if (x == 0 && y == 0) continue;
            // fold entry (i+1, i+1) into row i and redo the 2x2 block
            col_add(i, i + 1, 1);
            std::size_t t2 = i;
            while (t2 <= i + 1) {
                bool dirty = true;
                while (dirty) {
                    dirty = false;
                    for (std::size_t ii = t2 + 1; ii < d.rows; ++ii) {
                        if (d(ii, t2) == 0) continue;
                        long long q = floordiv(d(ii, t2), std::abs(d(t2, t2))) * (d(t2, t2) > 0 ? 1 : -1);
                        row_add(ii, t2, -q);
                        if (d(ii, t2) != 0) {
                            row_swap(t2, ii);
                            dirty = true;
                        }
                    }
                    for (std::size_t jj = t2 + 1; jj < d.cols; ++jj) {
                        if (d(t2, jj) == 0) continue;
                        long long q = floordiv(d(t2, jj), std::abs(d(t2, t2))) * (d(t2, t2) > 0 ? 1 : -1);
                        col_add(jj, t2, -q);
                        if (d(t2, jj) != 0) {
                            col_swap(t2, jj);
                            dirty = true;
                        }
                    }
                }
                if (d(t2, t2) < 0) row_negate(t2);
                ++t2;
            }
            changed = true;
        }
    }
    return s;
}

} // namespace cellulo
