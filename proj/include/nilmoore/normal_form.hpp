#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "nilmoore/matrix.hpp"

namespace nilmoore {

/// Row Hermite normal form H = U * M.
///
/// Convention used throughout the library: row echelon, pivots positive,
/// entries above each pivot reduced into [0, pivot).
struct HermiteForm {
    IntMatrix h;
    IntMatrix u;
};

inline HermiteForm hermite_form(const IntMatrix& m) {
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        // gcd-reduce column c on rows r.. until at most one nonzero remains
        for (;;) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i)
                if (h(i, c) != 0 && (best == h.rows() || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == h.rows()) break;  // column is zero from row r down
            if (best != r) {
                h.swap_rows(r, best);
                u.swap_rows(r, best);
            }
            bool clean = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0) continue;
                Int q = round_div(h(i, c), h(r, c));
                for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) -= q * h(r, j);
                for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) -= q * u(r, j);
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            for (std::size_t j = 0; j < h.cols(); ++j) h(r, j) = -h(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(h(i, c), h(r, c));
            if (q == 0) continue;
            for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) -= q * h(r, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) -= q * u(r, j);
        }
        ++r;
    }
    return {std::move(h), std::move(u)};
}

/// Smith normal form U * original * V = D with D = diag(d_1, ..), d_i >= 0
/// and d_i | d_{i+1}; U, V unimodular. Deterministic gcd-driven pivoting.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    IntMatrix original;

    std::vector<Int> elementary_divisors() const {
        std::vector<Int> out;
        for (std::size_t t = 0; t < std::min(d.rows(), d.cols()); ++t)
            if (d(t, t) != 0) out.push_back(d(t, t));
        return out;
    }
};

inline SmithDecomposition smith_form(const IntMatrix& m) {
    IntMatrix d = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());

    auto row_op = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t j = 0; j < d.cols(); ++j) d(dst, j) -= q * d(src, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(dst, j) -= q * u(src, j);
    };
    auto col_op = [&](std::size_t dst, std::size_t src, const Int& q) {
        for (std::size_t i = 0; i < d.rows(); ++i) d(i, dst) -= q * d(i, src);
        for (std::size_t i = 0; i < v.rows(); ++i) v(i, dst) -= q * v(i, src);
    };

    std::size_t t = 0;
    const std::size_t tmax = std::min(d.rows(), d.cols());
    while (t < tmax) {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        std::size_t pi = d.rows(), pj = d.cols();
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j)
                if (d(i, j) != 0 && (pi == d.rows() || abs(d(i, j)) < abs(d(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi == d.rows()) break;  // all zero: done
        if (pi != t) {
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if (pj != t) {
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        bool settled = false;
        while (!settled) {
            settled = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d(i, t) == 0) continue;
                Int q = round_div(d(i, t), d(t, t));
                row_op(i, t, q);
                if (d(i, t) != 0) {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    settled = false;
                }
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d(t, j) == 0) continue;
                Int q = round_div(d(t, j), d(t, t));
                col_op(j, t, q);
                if (d(t, j) != 0) {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    settled = false;
                }
            }
            if (!settled) continue;
            // divisibility fix-up: pivot must divide the trailing submatrix
            for (std::size_t i = t + 1; i < d.rows() && settled; ++i)
                for (std::size_t j = t + 1; j < d.cols() && settled; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        row_op(t, i, Int(-1));  // add row i to row t
                        settled = false;
                    }
        }
        if (d(t, t) < 0) {
            for (std::size_t j = 0; j < d.cols(); ++j) d(t, j) = -d(t, j);
            for (std::size_t j = 0; j < u.cols(); ++j) u(t, j) = -u(t, j);
        }
        ++t;
    }
    return {std::move(u), std::move(d), std::move(v), m};
}

/// Z-basis of { x in Z^n : M x = 0 }, as matrix columns. Always saturated:
/// any integer vector in the rational kernel is an integer combination.
inline IntMatrix integer_kernel(const IntMatrix& m) {
    SmithDecomposition s = smith_form(m);
    std::size_t r = s.elementary_divisors().size();
    IntMatrix k(m.cols(), m.cols() - r);
    for (std::size_t j = r; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - r) = s.v(i, j);
    return k;
}

/// Extension columns E such that [K | E] is unimodular. Requires K to have
/// full column rank and be saturated in Z^n (all elementary divisors 1).
inline IntMatrix unimodular_completion(const IntMatrix& k) {
    const std::size_t n = k.rows(), r = k.cols();
    SmithDecomposition s = smith_form(k);
    auto divs = s.elementary_divisors();
    if (divs.size() != r) throw RankMismatch("completion: columns are dependent");
    for (const Int& d : divs)
        if (d != 1) throw NotASublattice("completion: column lattice is not saturated");
    // U K V = [I; 0]  =>  columns r.. of U^{-1} extend the column lattice of K
    RatMatrix uinv = inverse(to_rational(s.u));
    IntMatrix e(n, n - r);
    for (std::size_t j = r; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) e(i, j - r) = to_int(uinv(i, j));
    return e;
}

}  // namespace nilmoore
