#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilmoore/lattice_subgroup.hpp"

namespace nilmoore {

/// The skew form B_l(X,Y) = <l, [X,Y]> together with its radical
/// g(l) = ker(B_l), the stabilizer of l under the coadjoint action.
struct SkewFormReport {
    DualElement l;
    RatMatrix b;           // n x n, antisymmetric
    RatMatrix stabilizer;  // basis columns of g(l) = ker(B_l)
    bool full_stabilizer;  // g(l) = g, i.e. B_l = 0
};

inline SkewFormReport skew_form(const LieAlgebra& g, const DualElement& l) {
    const std::size_t n = g.dim();
    if (l.coords.size() != n) throw ShapeMismatch("functional has wrong dimension");
    RatMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec ei(n, Rat(0));
        ei[i] = 1;
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec ej(n, Rat(0));
            ej[j] = 1;
            Rat v = dot(l.coords, g.bracket(ei, ej));
            b(i, j) = v;
            b(j, i) = -v;
        }
    }
    RatMatrix stab = span_basis(kernel_basis(b), n);
    bool full = stab.cols() == n;
    return {l, std::move(b), std::move(stab), full};
}

/// The skew matrix A_l of B_l on the Malcev vectors beyond g(l), its
/// determinant and Pfaffian, and the orbit weight c = det(A_l)^{-1/2}.
struct AMatrixReport {
    MalcevBasis malcev;
    RatMatrix a;  // (n-s) x (n-s), integer entries
    Int det_a;
    Int pfaffian_a;
    Rat c_omega;  // 1/|pfaffian|
};

/// A_l evaluated on a caller-supplied Malcev basis through g(l). Exposed
/// separately so the basis-independence of det(A_l) can be tested with
/// genuinely different bases.
inline AMatrixReport a_matrix_on_basis(const LieAlgebra& g, const DualElement& l, MalcevBasis malcev) {
    const std::size_t n = g.dim();
    const std::size_t s = malcev.pass_through;
    if (n == s) throw FullStabilizer("stabilizer is the whole algebra; A_l is empty");
    if ((n - s) % 2 != 0) throw ShapeMismatch("A_l must be even-dimensional; basis does not pass through g(l)");

    RatMatrix a(n - s, n - s);
    for (std::size_t i = s; i < n; ++i)
        for (std::size_t j = s; j < n; ++j) a(i - s, j - s) = dot(l.coords, g.bracket(malcev.vectors[i], malcev.vectors[j]));
    if (!is_integer_matrix(a))
        throw Error("A_l is not integral; functional is not integral on log(Gamma)");

    Rat pf = pfaffian(a);
    Int pfi = to_int(pf);
    Int d = to_int(det(a));
    if (pfi * pfi != d) throw Error("internal: pfaffian^2 != det on a skew integer matrix");
    if (d <= 0) throw Error("A_l is degenerate; basis does not pass through g(l)");
    return {std::move(malcev), std::move(a), std::move(d), pfi, Rat(1) / Rat(abs(pfi))};
}

/// Builds the Malcev basis through g(l) and evaluates A_l on it.
/// Requires g(l) != g and l integral on log(Gamma).
inline AMatrixReport a_matrix(const LieAlgebra& g, const LatticeSubgroup& gamma, const DualElement& l) {
    if (!in_dual_lattice(gamma, l))
        throw NotInDualLattice("functional is not integral on log(Gamma)");
    SkewFormReport sf = skew_form(g, l);
    if (sf.full_stabilizer) throw FullStabilizer("B_l = 0: stabilizer is the whole algebra");
    MalcevBasis malcev = weak_malcev_through(g, gamma, sf.stabilizer);
    return a_matrix_on_basis(g, l, std::move(malcev));
}

/// Everything computed for one functional: the Moore-formula bookkeeping.
struct OrbitReport {
    DualElement l;
    bool full_stabilizer = false;
    std::optional<AMatrixReport> a;  // absent when g(l) = g
    Int count = 1;                   // #[O n g*_Gamma / Gamma]
    Rat mult = 1;                    // multiplicity of pi_l in L^2(G/Gamma)
    bool moore_holds = true;         // mult^2 == count
    bool moore_inequality = true;    // mult <= count
};

/// Closed-form multiplicity for two-step algebras: 1 on flat orbits, else
/// |pfaffian(A_l)| with class count det(A_l). Moore's identity mult^2 = count
/// holds by construction here; it is still evaluated, never assumed.
inline OrbitReport multiplicity_two_step(const LieAlgebra& g, const LatticeSubgroup& gamma, const DualElement& l) {
    if (g.step() > 2)
        throw StepTooLarge("closed form requires step <= 2, algebra has step " + std::to_string(g.step()));
    if (!in_dual_lattice(gamma, l))
        throw NotInDualLattice("functional is not integral on log(Gamma): multiplicity 0");

    OrbitReport r;
    r.l = l;
    SkewFormReport sf = skew_form(g, l);
    if (sf.full_stabilizer) {
        r.full_stabilizer = true;  // orbit is the single point l
        r.count = 1;
        r.mult = 1;
    } else {
        AMatrixReport am = a_matrix(g, gamma, l);
        r.count = am.det_a;
        r.mult = Rat(abs(am.pfaffian_a));
        r.a = std::move(am);
    }
    r.moore_holds = r.mult * r.mult == Rat(r.count);
    r.moore_inequality = r.mult <= Rat(r.count);
    return r;
}

/// Corwin-Greenleaf sum: mult = sum over Gamma-orbit classes of
/// c(Omega) = det(A_f)^{-1/2}, evaluated per representative. Works in any
/// step once the caller supplies the classes.
inline Rat multiplicity_corwin_greenleaf(const LieAlgebra& g, const LatticeSubgroup& gamma, const DualElement& l,
                                         const std::vector<DualElement>& orbit_classes) {
    if (orbit_classes.empty()) throw EmptySpectrum("no Gamma-orbit classes: multiplicity 0");
    SkewFormReport sf = skew_form(g, l);
    if (sf.full_stabilizer) return Rat(1);
    Rat mult = 0;
    for (const DualElement& f : orbit_classes) mult += a_matrix(g, gamma, f).c_omega;
    return mult;
}

/// The Moore verdict for one functional.
struct MooreVerdict {
    Rat mult;
    Int count;
    Rat mult_squared;
    bool holds;             // mult^2 == count
    bool inequality_holds;  // mult <= count
};

inline MooreVerdict make_moore_verdict(Rat mult, Int count) {
    MooreVerdict v;
    v.mult = mult;
    v.count = count;
    v.mult_squared = mult * mult;
    v.holds = v.mult_squared == Rat(count);
    v.inequality_holds = mult <= Rat(count);
    return v;
}

/// Two-step verdict via the closed form.
inline MooreVerdict moore_check(const LieAlgebra& g, const LatticeSubgroup& gamma, const DualElement& l) {
    OrbitReport r = multiplicity_two_step(g, gamma, l);
    return make_moore_verdict(r.mult, r.count);
}

/// Verdict from caller-supplied Gamma-orbit classes (any step).
inline MooreVerdict moore_check_with_classes(const LieAlgebra& g, const LatticeSubgroup& gamma, const DualElement& l,
                                             const std::vector<DualElement>& orbit_classes) {
    Rat mult = multiplicity_corwin_greenleaf(g, gamma, l, orbit_classes);
    return make_moore_verdict(mult, Int(orbit_classes.size()));
}

}  // namespace nilmoore
