#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nilmoore/rational.hpp"

namespace nilmoore {

/// Dense row-major matrix over an exact scalar (Rat or Int). Shapes are tiny
/// (n <= 12), so there is no sparsity or blocking anywhere.
template <typename T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> entries)
        : rows_(rows), cols_(cols), data_(entries) {
        if (data_.size() != rows * cols) throw ShapeMismatch("matrix literal has wrong entry count");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix(0, 0);
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw ShapeMismatch("ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_cols(const std::vector<std::vector<T>>& cols) {
        if (cols.empty()) return Matrix(0, 0);
        Matrix m(cols.front().size(), cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != m.rows_) throw ShapeMismatch("ragged column list");
            for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_col(std::size_t j, const std::vector<T>& c) {
        if (c.size() != rows_) throw ShapeMismatch("set_col: length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    std::vector<T> operator*(const std::vector<T>& v) const {
        if (cols_ != v.size()) throw ShapeMismatch("matrix-vector shape mismatch");
        std::vector<T> r(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        require_same_shape(o, "sum");
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        require_same_shape(o, "difference");
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
        return r;
    }

    friend Matrix operator*(const T& c, const Matrix& m) {
        Matrix r(m.rows_, m.cols_);
        for (std::size_t i = 0; i < m.data_.size(); ++i) r.data_[i] = c * m.data_[i];
        return r;
    }

    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const T& x : data_)
            if (x != T(0)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += " ";
                if constexpr (std::is_same_v<T, Rat>)
                    s += rat_str((*this)(i, j));
                else
                    s += (*this)(i, j).str();
            }
        }
        return s + "]";
    }

  private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch(std::string("matrix ") + op + " shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline IntMatrix to_integer(const RatMatrix& m) {
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_int(m(i, j));
    return r;
}

inline bool is_integer_matrix(const RatMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!is_integer(m(i, j))) return false;
    return true;
}

/// Smallest positive d with d*M integral, and the scaled integer matrix.
/// Normal forms are integer algorithms; rational inputs go through here.
inline std::pair<IntMatrix, Int> clear_denominators(const RatMatrix& m) {
    Int d = 1;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) d = lcm_int(d, denominator(m(i, j)));
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = numerator(m(i, j)) * (d / denominator(m(i, j)));
    return {r, d};
}

// -- exact Gaussian elimination over the rationals ----------------------------

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(r, p);
        Rat inv = Rat(1) / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return rref(m).size(); }

inline Rat det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("determinant of non-square matrix");
    RatMatrix a = m;
    Rat d = 1;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t p = c;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) return Rat(0);
        if (p != c) {
            a.swap_rows(c, p);
            d = -d;
        }
        d *= a(c, c);
        Rat inv = Rat(1) / a(c, c);
        for (std::size_t i = c + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Rat f = a(i, c) * inv;
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(c, j);
        }
    }
    return d;
}

inline Int det(const IntMatrix& m) {
    Rat d = det(to_rational(m));
    return to_int(d);
}

/// Basis of the right null space { v : M v = 0 }. Empty for full column rank.
inline std::vector<Vec> kernel_basis(const RatMatrix& m) {
    RatMatrix r = m;
    std::vector<std::size_t> pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.cols(), Rat(0));
        v[free] = 1;
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -r(pr, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solves M x = b exactly; nullopt when inconsistent. Underdetermined systems
/// return the solution with all free variables zero.
inline std::optional<Vec> solve(const RatMatrix& m, const Vec& b) {
    if (b.size() != m.rows()) throw ShapeMismatch("solve: rhs length mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.cols(), Rat(0));
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug(pr, m.cols());
    return x;
}

/// Columnwise solve M X = B; nullopt if any column is inconsistent.
inline std::optional<RatMatrix> solve_all(const RatMatrix& m, const RatMatrix& b) {
    if (b.rows() != m.rows()) throw ShapeMismatch("solve_all: shape mismatch");
    RatMatrix x(m.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto xa = solve(m, b.col(j));
        if (!xa) return std::nullopt;
        x.set_col(j, *xa);
    }
    return x;
}

inline RatMatrix inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("inverse of non-square matrix");
    auto x = solve_all(m, RatMatrix::identity(m.rows()));
    if (!x || rank(m) != m.rows()) throw SingularMatrix("matrix is singular");
    return *x;
}

/// Pfaffian of a skew-symmetric matrix by recursive first-row expansion.
/// Exact; zero for odd sizes. pf(A)^2 = det(A).
inline Rat pfaffian(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeMismatch("pfaffian of non-square matrix");
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != -a(j, i)) throw ShapeMismatch("pfaffian of non-skew matrix");
    std::vector<std::size_t> idx(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) idx[i] = i;

    // pf on the submatrix indexed by idx
    auto rec = [&a](auto&& self, std::vector<std::size_t> ix) -> Rat {
        if (ix.size() % 2 == 1) return Rat(0);
        if (ix.empty()) return Rat(1);
        Rat s = 0;
        int sign = 1;
        for (std::size_t j = 1; j < ix.size(); ++j) {
            const Rat& a0j = a(ix[0], ix[j]);
            if (a0j != 0) {
                std::vector<std::size_t> rest;
                rest.reserve(ix.size() - 2);
                for (std::size_t k = 1; k < ix.size(); ++k)
                    if (k != j) rest.push_back(ix[k]);
                s += Rat(sign) * a0j * self(self, std::move(rest));
            }
            sign = -sign;
        }
        return s;
    };
    return rec(rec, std::move(idx));
}

// -- subspace helpers ---------------------------------------------------------

/// Canonical basis (as matrix columns) of the span of the given vectors,
/// via RREF rows. Deterministic: equal spans give equal matrices.
inline RatMatrix span_basis(const std::vector<Vec>& vectors, std::size_t ambient) {
    RatMatrix rows(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient) throw ShapeMismatch("span_basis: vector length mismatch");
        for (std::size_t j = 0; j < ambient; ++j) rows(i, j) = vectors[i][j];
    }
    std::vector<std::size_t> pivots = rref(rows);
    RatMatrix basis(ambient, pivots.size());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t j = 0; j < ambient; ++j) basis(j, r) = rows(r, j);
    return basis;
}

/// Is v in the column span of basis?
inline bool in_span(const RatMatrix& basis, const Vec& v) {
    if (basis.cols() == 0) return vec_is_zero(v);
    return solve(basis, v).has_value();
}

}  // namespace nilmoore
