#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nilmoore/bch.hpp"
#include "nilmoore/lattice.hpp"
#include "nilmoore/lie_algebra.hpp"

namespace nilmoore {

/// Parameters of the randomized closure check. The check is a certificate up
/// to the given word length, not a proof; see verify_lattice_subgroup.
struct ClosureCheckOptions {
    std::size_t word_length = 4;
    std::size_t samples = 200;
    std::uint64_t seed = 0;
};

/// A lattice subgroup Gamma: a uniform subgroup whose log is an additive
/// lattice. Only the lattice log(Gamma) is stored; the group is exp of it.
struct LatticeSubgroup {
    ZLattice log_basis;
    ClosureCheckOptions certified;  // parameters the closure check ran with
};

/// Certifies that exp(L) is a subgroup: exhaustive pairwise BCH products of
/// basis vectors, then seeded random words of bounded length, each folded
/// through BCH and tested for membership in L. Throws NotClosed with the
/// first witness word found.
inline LatticeSubgroup verify_lattice_subgroup(const LieAlgebra& g, const ZLattice& l,
                                               const ClosureCheckOptions& opts = {}) {
    if (l.ambient() != g.dim()) throw ShapeMismatch("lattice lives in the wrong ambient space");
    if (l.lattice_rank() != g.dim()) throw NotFullRank("log(Gamma) must be full rank (Gamma cocompact)");

    const std::size_t n = g.dim();
    auto gen_vector = [&](int signed_index) {
        Vec v = l.basis().col(static_cast<std::size_t>(std::abs(signed_index)) - 1);
        if (signed_index < 0)
            for (Rat& c : v) c = -c;
        return v;
    };
    auto check_word = [&](const std::vector<int>& word) {
        Vec z(n, Rat(0));
        for (int s : word) z = bch_product(g, z, gen_vector(s));
        if (!l.contains(z)) {
            std::string w;
            for (int s : word) w += (w.empty() ? "" : " ") + std::to_string(s);
            throw NotClosed(word, "exp(L) is not closed: word [" + w + "] has log " + vec_str(z) + " outside L");
        }
    };

    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            if (i == j) continue;
            check_word({static_cast<int>(i), static_cast<int>(j)});
            check_word({static_cast<int>(i), -static_cast<int>(j)});
        }

    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> len_dist(2, std::max<std::size_t>(2, opts.word_length));
    std::uniform_int_distribution<int> gen_dist(1, static_cast<int>(n));
    std::uniform_int_distribution<int> sign_dist(0, 1);
    for (std::size_t s = 0; s < opts.samples; ++s) {
        std::vector<int> word(len_dist(rng));
        for (int& c : word) c = gen_dist(rng) * (sign_dist(rng) ? 1 : -1);
        check_word(word);
    }
    return LatticeSubgroup{l, opts};
}

/// The integral dual g*_Gamma = { l : <l, log(Gamma)> in Z }.
inline ZLattice integral_dual(const LatticeSubgroup& gamma) { return gamma.log_basis.dual(); }

/// Whether <l, v> in Z for every lattice basis vector v.
inline bool in_dual_lattice(const LatticeSubgroup& gamma, const DualElement& l) {
    for (std::size_t j = 0; j < gamma.log_basis.basis().cols(); ++j)
        if (!is_integer(dot(l.coords, gamma.log_basis.basis().col(j)))) return false;
    return true;
}

/// An ordered basis whose prefixes span subalgebras (weak) or ideals
/// (strong), forming a Z-basis of log(Gamma), with the first
/// pass_through vectors spanning a distinguished subalgebra.
struct MalcevBasis {
    enum class Kind { weak, strong };

    std::vector<Vec> vectors;
    std::size_t pass_through = 0;  // s: prefix length spanning the subalgebra
    Kind kind = Kind::weak;

    RatMatrix matrix() const {
        return RatMatrix::from_cols(std::vector<std::vector<Rat>>(vectors.begin(), vectors.end()));
    }
};

namespace detail {

inline bool prefix_is_subalgebra(const LieAlgebra& g, const std::vector<Vec>& vectors, std::size_t len) {
    RatMatrix span = RatMatrix::from_cols(std::vector<std::vector<Rat>>(vectors.begin(), vectors.begin() + len));
    for (std::size_t a = 0; a < len; ++a)
        for (std::size_t b = a + 1; b < len; ++b)
            if (!in_span(span, g.bracket(vectors[a], vectors[b]))) return false;
    return true;
}

inline bool prefix_is_ideal(const LieAlgebra& g, const std::vector<Vec>& vectors, std::size_t len) {
    RatMatrix span = RatMatrix::from_cols(std::vector<std::vector<Rat>>(vectors.begin(), vectors.begin() + len));
    for (std::size_t i = 0; i < g.dim(); ++i) {
        Vec e(g.dim(), Rat(0));
        e[i] = 1;
        for (std::size_t b = 0; b < len; ++b)
            if (!in_span(span, g.bracket(e, vectors[b]))) return false;
    }
    return true;
}

/// Depth of v in the lower central series: the largest k with v in g^k.
inline std::size_t central_depth(const LieAlgebra& g, const Vec& v) {
    const auto& lcs = g.lower_central_series();
    std::size_t depth = 1;
    for (std::size_t k = 1; k < lcs.size(); ++k)
        if (in_span(lcs[k], v)) depth = k + 1;
    return depth;
}

/// LCS-adapted Z-basis of the saturated sublattice S = L n h: vectors from
/// deeper central layers come first. Built by extending a basis of S n g^k
/// layer by layer. Every prefix of the result spans a subalgebra whenever h
/// itself is one (brackets fall into strictly deeper layers of h).
inline std::vector<Vec> depth_ordered_sublattice_basis(const LieAlgebra& g, const ZLattice& s) {
    const auto& lcs = g.lower_central_series();
    std::vector<Vec> basis;  // grows from the deepest layer up
    for (std::size_t k = lcs.size(); k-- > 0;) {
        ZLattice layer = intersect_subspace(s, lcs[k]);
        if (layer.lattice_rank() == basis.size()) continue;
        if (basis.empty()) {
            for (std::size_t j = 0; j < layer.basis().cols(); ++j) basis.push_back(layer.basis().col(j));
        } else {
            RatMatrix prev = RatMatrix::from_cols(std::vector<std::vector<Rat>>(basis.begin(), basis.end()));
            for (Vec& v : complete_lattice_basis(layer, prev)) basis.push_back(std::move(v));
        }
    }
    return basis;
}

/// Backtracking search for an ordering of the extension vectors keeping all
/// prefixes bracket-closed. Candidates are offered deepest-first, which makes
/// the search succeed without backtracking in the two-step and filiform cases.
inline bool order_extension(const LieAlgebra& g, std::vector<Vec>& chosen, std::vector<Vec>& remaining) {
    if (remaining.empty()) return true;
    std::stable_sort(remaining.begin(), remaining.end(), [&](const Vec& a, const Vec& b) {
        return central_depth(g, a) > central_depth(g, b);
    });
    for (std::size_t pick = 0; pick < remaining.size(); ++pick) {
        std::vector<Vec> rest = remaining;
        Vec v = rest[pick];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pick));
        chosen.push_back(v);
        if (prefix_is_subalgebra(g, chosen, chosen.size()) && order_extension(g, chosen, rest)) return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace detail

/// Weak Malcev basis strongly based on Gamma and passing through the rational
/// subalgebra h (given by basis columns): computes the saturated sublattice
/// log(Gamma) n h, orders it by central depth, extends it to a Z-basis of
/// log(Gamma) by Hermite/Smith completion, and searches extension orderings
/// for prefix closure. Throws ChainNotFound when no ordering is closed.
inline MalcevBasis weak_malcev_through(const LieAlgebra& g, const LatticeSubgroup& gamma, const RatMatrix& h) {
    const std::size_t n = g.dim();
    if (h.rows() != n) throw ShapeMismatch("subalgebra basis has wrong ambient dimension");

    // contract: h must be a subalgebra
    for (std::size_t a = 0; a < h.cols(); ++a)
        for (std::size_t b = a + 1; b < h.cols(); ++b)
            if (!in_span(h, g.bracket(h.col(a), h.col(b))))
                throw NotASubalgebra("passing-through subspace is not bracket-closed");

    ZLattice sub = intersect_subspace(gamma.log_basis, h);
    if (sub.lattice_rank() != rank(h))
        throw RankMismatch("subalgebra is not rational with respect to log(Gamma)");

    std::vector<Vec> head = detail::depth_ordered_sublattice_basis(g, sub);
    const std::size_t s = head.size();

    if (!detail::prefix_is_subalgebra(g, head, s))  // cannot happen for a subalgebra h; kept as a hard check
        throw ChainNotFound("no closed chain inside the passing-through subalgebra");
    for (std::size_t i = 1; i < s; ++i)
        if (!detail::prefix_is_subalgebra(g, head, i)) throw ChainNotFound("prefix inside h is not closed");

    RatMatrix head_m = RatMatrix::from_cols(std::vector<std::vector<Rat>>(head.begin(), head.end()));
    if (s == 0) head_m = RatMatrix(n, 0);
    std::vector<Vec> extension = complete_lattice_basis(gamma.log_basis, head_m);

    std::vector<Vec> chain = head;
    if (!detail::order_extension(g, chain, extension))
        throw ChainNotFound("no ordering of the extension vectors keeps every prefix bracket-closed");

    MalcevBasis basis;
    basis.vectors = std::move(chain);
    basis.pass_through = s;

    // certify Proposition-style invariants: Z-basis of log(Gamma), closed prefixes
    RatMatrix m = basis.matrix();
    auto change = solve_all(gamma.log_basis.basis(), m);
    if (!change || !is_integer_matrix(*change) || abs(det(to_integer(*change))) != 1)
        throw ChainNotFound("internal: result is not a Z-basis of log(Gamma)");

    basis.kind = MalcevBasis::Kind::strong;
    for (std::size_t i = 1; i <= n; ++i)
        if (!detail::prefix_is_ideal(g, basis.vectors, i)) {
            basis.kind = MalcevBasis::Kind::weak;
            break;
        }
    return basis;
}

}  // namespace nilmoore
