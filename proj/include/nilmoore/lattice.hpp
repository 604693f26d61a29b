#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nilmoore/normal_form.hpp"

namespace nilmoore {

/// A finitely generated free Z-module sitting in Q^ambient, stored as a
/// full-column-rank rational basis matrix (columns = Z-basis vectors).
/// Equality is basis-independent: both sides are compared in a canonical
/// column Hermite form.
class ZLattice {
  public:
    ZLattice(std::size_t ambient, RatMatrix basis) : ambient_(ambient), basis_(std::move(basis)) {
        if (basis_.rows() != ambient_) throw ShapeMismatch("lattice basis has wrong ambient dimension");
        if (rank(basis_) != basis_.cols()) throw RankMismatch("lattice basis columns are dependent");
    }

    static ZLattice standard(std::size_t n) { return ZLattice(n, RatMatrix::identity(n)); }

    /// Lattice generated by arbitrary (possibly dependent) rational vectors.
    static ZLattice from_generators(std::size_t ambient, const std::vector<Vec>& gens) {
        RatMatrix g = RatMatrix::from_cols(std::vector<std::vector<Rat>>(gens.begin(), gens.end()));
        if (gens.empty()) g = RatMatrix(ambient, 0);
        auto [gi, scale] = clear_denominators(g);
        HermiteForm hf = hermite_form(gi.transpose());
        std::vector<Vec> cols;
        for (std::size_t i = 0; i < hf.h.rows(); ++i) {
            bool zero = true;
            for (std::size_t j = 0; j < hf.h.cols(); ++j) zero = zero && hf.h(i, j) == 0;
            if (zero) continue;
            Vec c(ambient);
            for (std::size_t j = 0; j < ambient; ++j) c[j] = Rat(hf.h(i, j), scale);
            cols.push_back(std::move(c));
        }
        RatMatrix basis = cols.empty() ? RatMatrix(ambient, 0)
                                       : RatMatrix::from_cols(std::vector<std::vector<Rat>>(cols.begin(), cols.end()));
        return ZLattice(ambient, std::move(basis));
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t lattice_rank() const { return basis_.cols(); }
    const RatMatrix& basis() const { return basis_; }

    /// Canonical basis: column Hermite form of the denominator-cleared basis,
    /// scaled back. Two bases of the same lattice give the same matrix.
    RatMatrix canonical_basis() const {
        auto [bi, scale] = clear_denominators(basis_);
        HermiteForm hf = hermite_form(bi.transpose());
        RatMatrix canon(ambient_, basis_.cols());
        for (std::size_t i = 0; i < basis_.cols(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) canon(j, i) = Rat(hf.h(i, j), scale);
        return canon;
    }

    bool operator==(const ZLattice& o) const {
        return ambient_ == o.ambient_ && lattice_rank() == o.lattice_rank() && canonical_basis() == o.canonical_basis();
    }
    bool operator!=(const ZLattice& o) const { return !(*this == o); }

    bool contains(const Vec& v) const {
        auto x = solve(basis_, v);
        if (!x) return false;
        for (const Rat& c : *x)
            if (!is_integer(c)) return false;
        return true;
    }

    /// Coordinates of v in this basis; nullopt when v is outside the Q-span.
    std::optional<Vec> coordinates(const Vec& v) const { return solve(basis_, v); }

    /// Dual lattice { f : <f, v> in Z for all v in the lattice }. Only full
    /// rank lattices have a discrete dual.
    ZLattice dual() const {
        if (lattice_rank() != ambient_) throw NotFullRank("dual of a non-full-rank lattice");
        return ZLattice(ambient_, inverse(basis_).transpose());
    }

  private:
    std::size_t ambient_;
    RatMatrix basis_;
};

/// Index [L : L0] of a finite-index sublattice, as the product of the
/// elementary divisors of the change-of-basis matrix.
inline Int sublattice_index(const ZLattice& l, const ZLattice& l0) {
    if (l.lattice_rank() != l0.lattice_rank()) throw RankMismatch("sublattice_index: ranks differ");
    auto c = solve_all(l.basis(), l0.basis());
    if (!c) throw RankMismatch("sublattice_index: spans differ");
    if (!is_integer_matrix(*c)) throw NotASublattice("sublattice_index: change of basis is not integral");
    IntMatrix ci = to_integer(*c);
    Int index = 1;
    for (const Int& d : smith_form(ci).elementary_divisors()) index *= d;
    if (index == 0 || index != abs(det(ci))) throw RankMismatch("sublattice_index: degenerate change of basis");
    return index;
}

/// Saturated sublattice L n span(subspace columns): every lattice point inside
/// the subspace is an integer combination of the returned basis.
inline ZLattice intersect_subspace(const ZLattice& l, const RatMatrix& subspace) {
    if (subspace.rows() != l.ambient()) throw ShapeMismatch("intersect_subspace: ambient mismatch");
    // annihilator rows of the subspace: rows p with p * subspace = 0
    std::vector<Vec> ann = kernel_basis(subspace.transpose());
    RatMatrix p = RatMatrix::from_rows(std::vector<std::vector<Rat>>(ann.begin(), ann.end()));
    if (ann.empty()) p = RatMatrix(0, l.ambient());
    // lattice coordinates x with (P B) x = 0
    RatMatrix pb = p * l.basis();
    auto [pbi, scale] = clear_denominators(pb);
    (void)scale;  // row scaling does not change the kernel
    IntMatrix k = integer_kernel(pbi);
    return ZLattice(l.ambient(), l.basis() * to_rational(k));
}

/// Extension of a saturated sublattice basis to a Z-basis of L. The returned
/// vectors together with sub_basis's columns (in order) form a Z-basis of L.
inline std::vector<Vec> complete_lattice_basis(const ZLattice& l, const RatMatrix& sub_basis) {
    auto k = solve_all(l.basis(), sub_basis);
    if (!k) throw RankMismatch("complete_lattice_basis: sublattice outside the span");
    if (!is_integer_matrix(*k)) throw NotASublattice("complete_lattice_basis: not a sublattice");
    IntMatrix e = unimodular_completion(to_integer(*k));
    RatMatrix ext = l.basis() * to_rational(e);
    std::vector<Vec> out;
    for (std::size_t j = 0; j < ext.cols(); ++j) out.push_back(ext.col(j));
    return out;
}

}  // namespace nilmoore
