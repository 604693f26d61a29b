#pragma once

// Test-only helpers: seeded random two-step algebras with verified lattice
// subgroups, and a Smith-free brute-force enumeration of Gamma-orbit classes
// used as the independent oracle against the closed-form count.

#include <cstdint>
#include <random>
#include <vector>

#include "nilmoore/orbits.hpp"
#include "nilmoore/problem.hpp"

namespace nilmoore::testing {

struct TwoStepCase {
    LieAlgebra g;
    LatticeSubgroup gamma;
};

/// Random two-step algebra: generator directions X_1..X_m, central directions
/// Z_1..Z_z with [X_i, X_j] a random integer vector of Z's. The lattice takes
/// integer-scaled generators and (1/2h)-scaled central vectors, which keeps
/// exp of the lattice closed (all BCH corrections are half-integer central),
/// optionally re-presented through a unimodular change of basis.
inline TwoStepCase random_two_step(std::mt19937_64& rng, std::size_t max_dim = 8, bool scramble = false) {
    for (;;) {
        std::uniform_int_distribution<std::size_t> gen_dim(2, max_dim - 1);
        std::size_t m = gen_dim(rng);
        std::uniform_int_distribution<std::size_t> cen_dim(1, max_dim - m);
        std::size_t z = cen_dim(rng);
        std::size_t n = m + z;

        std::uniform_int_distribution<int> coeff(-2, 2);
        std::uniform_int_distribution<int> sparse(0, 2);
        std::vector<BracketTerm> terms;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = 0; k < z; ++k) {
                    if (sparse(rng) != 0) continue;  // keep the tensor sparse
                    int c = coeff(rng);
                    if (c != 0) terms.push_back({i, j, m + k, Rat(c)});
                }
        if (terms.empty()) continue;

        LieAlgebra g = LieAlgebra::validate(n, {}, terms);
        if (g.step() != 2) continue;

        RatMatrix basis(n, n);
        std::uniform_int_distribution<int> gen_scale(1, 3);
        std::uniform_int_distribution<int> half_scale(1, 3);
        for (std::size_t i = 0; i < m; ++i) basis(i, i) = gen_scale(rng);
        for (std::size_t k = 0; k < z; ++k) basis(m + k, m + k) = Rat(1, 2 * half_scale(rng));

        if (scramble) {  // a few elementary column operations, still the same lattice
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (int ops = 0; ops < 3; ++ops) {
                std::size_t a = pick(rng), b = pick(rng);
                if (a == b) continue;
                for (std::size_t r = 0; r < n; ++r) basis(r, a) += basis(r, b);
            }
        }

        ClosureCheckOptions opts;
        opts.word_length = 3;
        opts.samples = 20;
        opts.seed = rng();
        LatticeSubgroup gamma = verify_lattice_subgroup(g, ZLattice(n, basis), opts);
        return {std::move(g), std::move(gamma)};
    }
}

inline DualElement random_integral_functional(std::mt19937_64& rng, const LatticeSubgroup& gamma, int bound = 2) {
    ZLattice dual = integral_dual(gamma);
    std::uniform_int_distribution<int> coeff(-bound, bound);
    for (;;) {
        Vec l(dual.ambient(), Rat(0));
        for (std::size_t j = 0; j < dual.ambient(); ++j) vec_axpy(l, Rat(coeff(rng)), dual.basis().col(j));
        if (!vec_is_zero(l)) return DualElement{l};
    }
}

/// Size of the integer bounding box the brute-force enumeration would scan.
inline Int parallelepiped_box_volume(const RatMatrix& c) {
    Int volume = 1;
    for (std::size_t i = 0; i < c.rows(); ++i) {
        Int width = 1;
        for (std::size_t j = 0; j < c.cols(); ++j) width += abs(to_int(c(i, j)));
        volume *= width;
    }
    return volume;
}

/// Integer points of Z^m in the half-open parallelepiped { C t : t in [0,1)^m }.
/// Brute force over a bounding box; exact membership via t = C^{-1} p.
inline std::vector<Vec> parallelepiped_points(const RatMatrix& c) {
    const std::size_t m = c.rows();
    RatMatrix cinv = inverse(c);
    std::vector<Int> lo(m, Int(0)), hi(m, Int(0));
    for (std::size_t i = 0; i < m; ++i) {
        Int neg = 0, pos = 0;
        for (std::size_t j = 0; j < m; ++j) {
            Int e = to_int(c(i, j));
            (e < 0 ? neg : pos) += e;
        }
        lo[i] = neg;
        hi[i] = pos;
    }
    std::vector<Vec> points;
    std::vector<Int> p(m);
    for (std::size_t i = 0; i < m; ++i) p[i] = lo[i];
    for (;;) {
        Vec pr(m);
        for (std::size_t i = 0; i < m; ++i) pr[i] = Rat(p[i]);
        Vec t = cinv * pr;
        bool inside = true;
        for (const Rat& ti : t) inside = inside && ti >= 0 && ti < 1;
        if (inside) points.push_back(pr);
        std::size_t pos = m;
        while (pos-- > 0) {
            if (++p[pos] <= hi[pos]) break;
            p[pos] = lo[pos];
            if (pos == 0) return points;
        }
    }
}

/// Window of orbit-class candidates for a two-step (g, Gamma, l) pair plus a
/// wrap rule, built without any Smith/Hermite machinery: representatives are
/// l + sum x_i v*_{s+i} for x in the fundamental parallelepiped of the
/// translation lattice, and wrapping reduces coordinates mod that lattice.
struct IndependentWindow {
    std::vector<DualElement> points;
    WrapRule wrap;
};

inline IndependentWindow independent_window(const LieAlgebra& g, const DualElement& l, const AMatrixReport& am) {
    const std::size_t n = g.dim(), s = am.malcev.pass_through, m = n - s;
    RatMatrix c = am.a.transpose();  // columns e_j
    RatMatrix cinv = inverse(c);
    RatMatrix dual_rows = inverse(am.malcev.matrix());
    RatMatrix malcev = am.malcev.matrix();

    auto to_dual = [=](const Vec& x) {
        Vec f = l.coords;
        for (std::size_t i = 0; i < m; ++i) vec_axpy(f, x[i], dual_rows.row(s + i));
        return DualElement{f};
    };

    IndependentWindow w;
    for (const Vec& x : parallelepiped_points(c)) w.points.push_back(to_dual(x));
    w.wrap = [=](const DualElement& f) -> std::optional<DualElement> {
        Vec x(m);
        for (std::size_t i = 0; i < m; ++i) x[i] = dot(vec_sub(f.coords, l.coords), malcev.col(s + i));
        Vec t = cinv * x;
        Vec frac(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (!is_integer(x[i])) return std::nullopt;
            frac[i] = t[i] - Rat(floor_div(numerator(t[i]), denominator(t[i])));
        }
        return to_dual(c * frac);
    };
    return w;
}

}  // namespace nilmoore::testing
