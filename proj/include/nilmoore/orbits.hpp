#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilmoore/multiplicity.hpp"
#include "nilmoore/union_find.hpp"

namespace nilmoore {

/// Coadjoint orbit of a two-step algebra: the affine subspace l + g(l)^perp.
struct AffineOrbit {
    DualElement basepoint;
    RatMatrix stabilizer;  // basis of g(l)
    RatMatrix direction;   // basis of g(l)^perp = annihilator of the stabilizer

    /// Membership is the linear test (f - l) perp g(l).
    bool contains(const DualElement& f) const {
        Vec diff = vec_sub(f.coords, basepoint.coords);
        for (std::size_t j = 0; j < stabilizer.cols(); ++j)
            if (dot(diff, stabilizer.col(j)) != 0) return false;
        return true;
    }
};

inline AffineOrbit two_step_orbit(const LieAlgebra& g, const DualElement& l) {
    if (g.step() > 2)
        throw StepTooLarge("affine orbit form requires step <= 2, algebra has step " + std::to_string(g.step()));
    SkewFormReport sf = skew_form(g, l);
    // annihilator of g(l): functionals vanishing on every stabilizer vector
    RatMatrix direction = span_basis(kernel_basis(sf.stabilizer.transpose()), g.dim());
    return {l, sf.stabilizer, std::move(direction)};
}

/// Gamma-orbit classes of O n g*_Gamma.
struct GammaOrbitClasses {
    enum class Method { closed_form, enumerated };

    std::vector<DualElement> representatives;
    Int count = 0;
    Method method = Method::closed_form;
    bool window_warning = false;  // a generator image left the window and no wrap rule was given
};

/// Closed-form class count for two-step algebras: in the dual coordinates of
/// a Malcev basis through g(l), Gamma translates f by the row lattice of A_l
/// inside Z^{n-s}, so the count is the sublattice index det(A_l) and the
/// classes are the Smith residue system.
inline GammaOrbitClasses count_orbits_two_step(const LieAlgebra& g, const LatticeSubgroup& gamma,
                                               const DualElement& l) {
    if (g.step() > 2)
        throw StepTooLarge("closed-form count requires step <= 2, algebra has step " + std::to_string(g.step()));
    if (!in_dual_lattice(gamma, l)) throw NotInDualLattice("functional is not integral on log(Gamma)");

    GammaOrbitClasses out;
    out.method = GammaOrbitClasses::Method::closed_form;

    SkewFormReport sf = skew_form(g, l);
    if (sf.full_stabilizer) {  // orbit is the single point l
        out.representatives = {l};
        out.count = 1;
        return out;
    }

    AMatrixReport am = a_matrix(g, gamma, l);
    const std::size_t n = g.dim(), s = am.malcev.pass_through, m = n - s;

    // columns e_j of the translation lattice L0 inside L = Z^m
    IntMatrix e = to_integer(am.a.transpose());
    SmithDecomposition smith = smith_form(e);
    Int count = 1;
    for (const Int& d : smith.elementary_divisors()) count *= d;
    if (Rat(count) != Rat(am.det_a)) throw Error("internal: divisor product disagrees with det(A_l)");
    out.count = count;

    // residue system: y in prod [0, d_i), x = U^{-1} y are L-coordinates
    RatMatrix uinv = inverse(to_rational(smith.u));
    RatMatrix dual_rows = inverse(am.malcev.matrix());  // row i = v_i^* in dual coordinates
    std::vector<Int> y(m, Int(0));
    for (;;) {
        Vec yr(m);
        for (std::size_t i = 0; i < m; ++i) yr[i] = Rat(y[i]);
        Vec x = uinv * yr;
        Vec rep = l.coords;
        for (std::size_t i = 0; i < m; ++i) vec_axpy(rep, x[i], dual_rows.row(s + i));
        out.representatives.push_back(DualElement{std::move(rep)});
        // odometer over the diagonal box, lexicographic
        std::size_t pos = m;
        while (pos-- > 0) {
            if (++y[pos] < smith.d(pos, pos)) break;
            y[pos] = 0;
            if (pos == 0) {
                pos = static_cast<std::size_t>(-1);
                break;
            }
        }
        if (pos == static_cast<std::size_t>(-1)) break;
    }
    if (Int(out.representatives.size()) != count) throw Error("internal: residue system has wrong size");
    return out;
}

/// Optional canonicalization of points that leave a finite window.
using WrapRule = std::function<std::optional<DualElement>(const DualElement&)>;

/// Independent brute-force orbit identification: union-find over a finite
/// window of dual-lattice points, joining p with coAd(gamma) p for the given
/// generators and their inverses. A wrap rule may map images back into the
/// window; without one, escaping images only set window_warning.
inline GammaOrbitClasses enumerate_gamma_orbits(const LieAlgebra& g, const LatticeSubgroup& gamma,
                                                const std::vector<DualElement>& points,
                                                const std::vector<GroupElement>& generators,
                                                const WrapRule& wrap = nullptr) {
    for (const DualElement& p : points)
        if (!in_dual_lattice(gamma, p))
            throw NotInDualLattice("window point " + vec_str(p.coords) + " is not in the integral dual");

    std::map<Vec, std::size_t> index;
    for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i].coords, i);

    std::vector<RatMatrix> action;
    for (const GroupElement& w : generators) {
        action.push_back(g.coadjoint_exp(w.log_coordinates.coords));
        Vec neg = w.log_coordinates.coords;
        for (Rat& c : neg) c = -c;
        action.push_back(g.coadjoint_exp(neg));
    }

    UnionFind uf(points.size());
    bool warning = false;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (const RatMatrix& m : action) {
            DualElement image{m * points[i].coords};
            auto it = index.find(image.coords);
            if (it == index.end() && wrap) {
                if (auto wrapped = wrap(image)) it = index.find(wrapped->coords);
            }
            if (it != index.end())
                uf.unite(i, it->second);
            else
                warning = true;
        }

    GammaOrbitClasses out;
    out.method = GammaOrbitClasses::Method::enumerated;
    out.window_warning = warning;
    std::map<std::size_t, std::size_t> first_of_root;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t r = uf.find(i);
        if (!first_of_root.count(r)) first_of_root[r] = i;
    }
    std::vector<std::size_t> firsts;
    for (const auto& [root, first] : first_of_root) firsts.push_back(first);
    std::sort(firsts.begin(), firsts.end());
    for (std::size_t i : firsts) out.representatives.push_back(points[i]);
    out.count = Int(out.representatives.size());
    return out;
}

/// Does the coadjoint orbit of l meet the integral dual? Solved exactly as an
/// integral feasibility problem: exists c with B^T (l + D c) in Z^n, i.e.
/// P B^T l must lie in the lattice generated by the columns of P, where P
/// spans the left kernel of B^T D.
inline bool spectrum_condition(const LieAlgebra& g, const LatticeSubgroup& gamma, const DualElement& l) {
    if (g.step() > 2)
        throw StepTooLarge("spectrum condition requires step <= 2, algebra has step " + std::to_string(g.step()));
    AffineOrbit orbit = two_step_orbit(g, l);
    const RatMatrix bt = gamma.log_basis.basis().transpose();
    const RatMatrix m = bt * orbit.direction;
    const Vec r = bt * l.coords;

    std::vector<Vec> ann = kernel_basis(m.transpose());
    if (ann.empty()) return true;  // the orbit sweeps every residue
    RatMatrix p = RatMatrix::from_rows(std::vector<std::vector<Rat>>(ann.begin(), ann.end()));
    Vec w = p * r;
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < p.cols(); ++j) gens.push_back(p.col(j));
    ZLattice image = ZLattice::from_generators(p.rows(), gens);
    if (image.lattice_rank() == 0) return vec_is_zero(w);
    return image.contains(w);
}

// -- the three-step filiform counterexample ------------------------------------

/// Everything the built-in counterexample computes, in one record.
struct FiliformCounterexample {
    LieAlgebra algebra;
    LatticeSubgroup gamma;
    DualElement l;                  // X1*
    GammaOrbitClasses classes;      // 18 window classes, enumerated
    std::vector<Rat> class_weights; // c(Omega) per class, each 1/6
    Int det_a;                      // 36
    Int pfaffian_a;                 // |pf| = 6
    MooreVerdict verdict;           // mult 3, count 18, holds = false
    std::size_t action_checks = 0;  // random coadjoint spot checks performed
};

namespace detail {

/// f_{t,s} = X1* + t X2* + (t^2/2) X3* + (s/6) X4*.
inline DualElement filiform_point(const Rat& t, const Rat& s) {
    return DualElement{Vec{Rat(1), t, t * t / 2, s / 6}};
}

/// Closed form of Ad*(exp(r X2) exp(s X3) exp(6t X4)) f_{t0,s0}.
inline DualElement filiform_action_closed_form(const Rat& r, const Rat& s, const Rat& t, const Rat& t0,
                                               const Rat& s0) {
    Rat t1 = t0 - 6 * t;
    return DualElement{Vec{Rat(1), t1, t1 * t1 / 2, s0 / 6 + s * t0 + r - 6 * s * t}};
}

}  // namespace detail

/// Builds the 4-dimensional filiform algebra with [X4,X2] = X1, [X4,X3] = X2,
/// the lattice subgroup exp(Z X1 + Z X2 + Z X3 + 6Z X4) and l = X1*, and
/// reproduces the failure of the Moore formula: 18 orbit classes of weight
/// 1/6, multiplicity 3, and 3^2 = 9 != 18. Every ingredient is recomputed
/// and cross-checked here, not hardcoded.
inline FiliformCounterexample filiform_counterexample(std::size_t action_checks = 50, std::uint64_t seed = 20090615) {
    std::vector<BracketTerm> terms{
        {1, 3, 0, Rat(-1)},  // [X2, X4] = -X1
        {2, 3, 1, Rat(-1)},  // [X3, X4] = -X2
    };
    LieAlgebra g = LieAlgebra::validate(4, {"X1", "X2", "X3", "X4"}, terms);
    if (g.step() != 3) throw Error("internal: filiform algebra must have step 3");

    RatMatrix basis = RatMatrix::identity(4);
    basis(3, 3) = 6;
    LatticeSubgroup gamma = verify_lattice_subgroup(g, ZLattice(4, basis));
    DualElement l{Vec{Rat(1), Rat(0), Rat(0), Rat(0)}};

    // integral dual is Z-span{X1*, X2*, X3*, (1/6) X4*}
    RatMatrix dual_expected = RatMatrix::identity(4);
    dual_expected(3, 3) = Rat(1, 6);
    if (integral_dual(gamma) != ZLattice(4, dual_expected)) throw Error("internal: unexpected integral dual");

    // the ideal m = span{X1,X2,X3} is a rational polarization at l
    RatMatrix m_basis(4, 3);
    m_basis(0, 0) = 1;
    m_basis(1, 1) = 1;
    m_basis(2, 2) = 1;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            if (dot(l.coords, g.bracket(m_basis.col(a), m_basis.col(b))) != 0)
                throw Error("internal: m is not isotropic at l");
    SkewFormReport sf = skew_form(g, l);
    if (2 * m_basis.cols() != g.dim() + sf.stabilizer.cols())
        throw Error("internal: m does not have polarization dimension");
    ZLattice m_cap_gamma = intersect_subspace(gamma.log_basis, m_basis);
    for (std::size_t j = 0; j < m_cap_gamma.basis().cols(); ++j)
        if (!is_integer(dot(l.coords, m_cap_gamma.basis().col(j))))
            throw Error("internal: <l, m n log(Gamma)> is not integral");

    // window of O n g*_Gamma: t in {0,2,4}, s in {0..5}; Gamma translates
    // (t,s) by 6Z x 6Z, so the window is a fundamental domain
    std::vector<DualElement> window;
    for (int t = 0; t < 6; t += 2)
        for (int s = 0; s < 6; ++s) window.push_back(detail::filiform_point(Rat(t), Rat(s)));

    std::vector<GroupElement> gens;
    for (std::size_t j = 0; j < 4; ++j) gens.push_back(GroupElement{AlgebraElement{gamma.log_basis.basis().col(j)}});

    WrapRule wrap = [](const DualElement& f) -> std::optional<DualElement> {
        // recognize f = f_transform(t,s) and reduce (t, s) mod 6 into the window
        if (f.coords.size() != 4 || f.coords[0] != 1) return std::nullopt;
        Rat t = f.coords[1], s = 6 * f.coords[3];
        if (f.coords[2] != t * t / 2 || !is_integer(t) || !is_integer(s)) return std::nullopt;
        Int ti = ((to_int(t) % 6) + 6) % 6;
        Int si = ((to_int(s) % 6) + 6) % 6;
        return detail::filiform_point(Rat(ti), Rat(si));
    };

    FiliformCounterexample out{std::move(g), std::move(gamma), l, {}, {}, 0, 0, {}, 0};
    out.classes = enumerate_gamma_orbits(out.algebra, out.gamma, window, gens, wrap);
    if (out.classes.window_warning) throw Error("internal: window is not Gamma-stable under the wrap rule");

    // every class weight is det(A_f)^{-1/2} = 1/6
    Rat mult = 0;
    for (const DualElement& f : out.classes.representatives) {
        AMatrixReport am = a_matrix(out.algebra, out.gamma, f);
        out.class_weights.push_back(am.c_omega);
        mult += am.c_omega;
    }
    AMatrixReport am_l = a_matrix(out.algebra, out.gamma, l);
    out.det_a = am_l.det_a;
    out.pfaffian_a = abs(am_l.pfaffian_a);
    out.verdict = make_moore_verdict(mult, out.classes.count);

    // spot-check the coadjoint action against the closed form, and the orbit
    // parametrization: f_{t,s} = coAd(exp(-t X4) exp(s X2)) l
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-12, 12);
    for (std::size_t c = 0; c < action_checks; ++c) {
        Rat r(small(rng)), s(small(rng)), t(small(rng));
        Rat t0(2 * small(rng)), s0(small(rng));
        std::vector<GroupElement> word{
            GroupElement{AlgebraElement{Vec{Rat(0), r, Rat(0), Rat(0)}}},
            GroupElement{AlgebraElement{Vec{Rat(0), Rat(0), s, Rat(0)}}},
            GroupElement{AlgebraElement{Vec{Rat(0), Rat(0), Rat(0), 6 * t}}},
        };
        DualElement computed{out.algebra.coadjoint_word(word) * detail::filiform_point(t0, s0).coords};
        if (!(computed == detail::filiform_action_closed_form(r, s, t, t0, s0)))
            throw Error("internal: coadjoint action disagrees with the closed form");

        Rat tp(small(rng)), sp(small(rng));
        std::vector<GroupElement> reach{
            GroupElement{AlgebraElement{Vec{Rat(0), Rat(0), Rat(0), -tp}}},
            GroupElement{AlgebraElement{Vec{Rat(0), sp / 6, Rat(0), Rat(0)}}},
        };
        DualElement reached{out.algebra.coadjoint_word(reach) * l.coords};
        if (!(reached == detail::filiform_point(tp, sp)))
            throw Error("internal: orbit parametrization point is not reachable");
        ++out.action_checks;
    }
    return out;
}

}  // namespace nilmoore
