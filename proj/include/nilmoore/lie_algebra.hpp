#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nilmoore/matrix.hpp"

namespace nilmoore {

/// One sparse structure-constant term: [X_i, X_j] += c * X_k, with i < j
/// (0-based indices). Antisymmetry is structural, only i < j is accepted.
struct BracketTerm {
    std::size_t i, j, k;
    Rat c;
};

/// Element of the algebra in the coordinate basis X_1..X_n.
struct AlgebraElement {
    Vec coords;
};

/// Element of the dual space in the dual coordinate basis X_1*..X_n*.
/// The pairing <l, X> is the coordinate dot product.
struct DualElement {
    Vec coords;

    bool operator==(const DualElement& o) const { return coords == o.coords; }
};

/// Group element of the simply connected group, stored in exponential
/// coordinates of the first kind: the element is exp(log_coordinates).
struct GroupElement {
    AlgebraElement log_coordinates;
};

inline Rat pairing(const DualElement& l, const AlgebraElement& x) { return dot(l.coords, x.coords); }

/// A nilpotent Lie algebra over Q, defined by rational structure constants.
/// Construction validates the Jacobi identity and nilpotency; instances are
/// immutable afterwards and all member operations are pure.
class LieAlgebra {
  public:
    /// Builds and certifies the algebra. Throws JacobiViolation or
    /// NotNilpotent when the constants do not define a nilpotent Lie algebra.
    static LieAlgebra validate(std::size_t n, std::vector<std::string> names, const std::vector<BracketTerm>& terms) {
        LieAlgebra g;
        g.n_ = n;
        g.names_ = std::move(names);
        if (g.names_.empty())
            for (std::size_t i = 1; i <= n; ++i) g.names_.push_back("X" + std::to_string(i));
        if (g.names_.size() != n) throw ShapeMismatch("need one name per basis vector");

        g.table_.assign(n, std::vector<Vec>(n, Vec(n, Rat(0))));
        for (const auto& t : terms) {
            if (t.i >= n || t.j >= n || t.k >= n) throw ShapeMismatch("bracket index out of range");
            if (t.i >= t.j) throw ShapeMismatch("bracket terms must have i < j (antisymmetry is structural)");
            g.table_[t.i][t.j][t.k] += t.c;
            g.table_[t.j][t.i][t.k] -= t.c;
        }

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    Vec s = g.bracket_coords(g.table_[j][k], i);
                    vec_axpy(s, Rat(1), g.bracket_coords(g.table_[k][i], j));
                    vec_axpy(s, Rat(1), g.bracket_coords(g.table_[i][j], k));
                    if (!vec_is_zero(s))
                        throw JacobiViolation(i, j, k, "Jacobi identity fails on (" + g.names_[i] + ", " +
                                                           g.names_[j] + ", " + g.names_[k] + ")");
                }

        g.compute_lower_central_series();
        return g;
    }

    std::size_t dim() const { return n_; }
    const std::vector<std::string>& names() const { return names_; }

    /// Nilpotency step: the length of the lower central series before zero.
    std::size_t step() const { return lcs_.size() - 1; }

    /// Bases of g = g^1 >= g^2 = [g,g] >= ... >= g^{step+1} = 0, as matrix
    /// columns; the final entry is the zero subspace.
    const std::vector<RatMatrix>& lower_central_series() const { return lcs_; }

    const RatMatrix& derived_subalgebra() const { return lcs_[1]; }

    Vec bracket(const Vec& x, const Vec& y) const {
        if (x.size() != n_ || y.size() != n_) throw ShapeMismatch("bracket: coordinate length mismatch");
        Vec r(n_, Rat(0));
        for (std::size_t i = 0; i < n_; ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (y[j] == 0 || i == j) continue;
                vec_axpy(r, x[i] * y[j], table_[i][j]);
            }
        }
        return r;
    }

    /// Matrix of ad(x): y -> [x, y] in the coordinate basis.
    RatMatrix ad_matrix(const Vec& x) const {
        RatMatrix m(n_, n_);
        for (std::size_t j = 0; j < n_; ++j) {
            Vec e(n_, Rat(0));
            e[j] = 1;
            m.set_col(j, bracket(x, e));
        }
        return m;
    }

    /// Ad(exp x) = sum ad(x)^k / k!, a finite sum by nilpotency.
    RatMatrix adjoint_exp(const Vec& x) const {
        RatMatrix result = RatMatrix::identity(n_);
        RatMatrix ad = ad_matrix(x);
        RatMatrix power = RatMatrix::identity(n_);
        Rat factorial = 1;
        for (std::size_t k = 1; k <= n_; ++k) {
            power = ad * power;
            if (power.is_zero()) break;
            factorial *= Rat(k);
            result = result + Rat(1) / factorial * power;
        }
        return result;
    }

    /// Coadjoint action of exp(x) on dual coordinates: transpose of
    /// Ad(exp(-x)). Satisfies <coAd(exp x) f, Ad(exp x) v> = <f, v>.
    RatMatrix coadjoint_exp(const Vec& x) const {
        Vec neg(n_);
        for (std::size_t i = 0; i < n_; ++i) neg[i] = -x[i];
        return adjoint_exp(neg).transpose();
    }

    /// Coadjoint action of a product of exponentials, leftmost factor first.
    RatMatrix coadjoint_word(const std::vector<GroupElement>& word) const {
        RatMatrix m = RatMatrix::identity(n_);
        for (const GroupElement& w : word) m = m * coadjoint_exp(w.log_coordinates.coords);
        return m;
    }

  private:
    LieAlgebra() = default;

    // bracket of a coordinate vector against basis vector e_i, i.e. [v, e_i]
    Vec bracket_coords(const Vec& v, std::size_t i) const {
        Vec e(n_, Rat(0));
        e[i] = 1;
        return bracket(v, e);
    }

    void compute_lower_central_series() {
        lcs_.clear();
        lcs_.push_back(span_basis(standard_basis(), n_));
        for (;;) {
            const RatMatrix& prev = lcs_.back();
            if (prev.cols() == 0) break;
            std::vector<Vec> gens;
            for (std::size_t i = 0; i < n_; ++i) {
                Vec e(n_, Rat(0));
                e[i] = 1;
                for (std::size_t j = 0; j < prev.cols(); ++j) {
                    Vec b = bracket(e, prev.col(j));
                    if (!vec_is_zero(b)) gens.push_back(std::move(b));
                }
            }
            RatMatrix next = span_basis(gens, n_);
            if (next.cols() == prev.cols())
                throw NotNilpotent("lower central series stabilizes at dimension " + std::to_string(prev.cols()) +
                                   ", basis " + prev.str());
            lcs_.push_back(std::move(next));
        }
    }

    std::vector<Vec> standard_basis() const {
        std::vector<Vec> b;
        for (std::size_t i = 0; i < n_; ++i) {
            Vec e(n_, Rat(0));
            e[i] = 1;
            b.push_back(std::move(e));
        }
        return b;
    }

    std::size_t n_ = 0;
    std::vector<std::string> names_;
    std::vector<std::vector<Vec>> table_;  // table_[i][j] = coordinates of [X_i, X_j]
    std::vector<RatMatrix> lcs_;
};

}  // namespace nilmoore
