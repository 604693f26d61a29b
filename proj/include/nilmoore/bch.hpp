#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nilmoore/lie_algebra.hpp"

namespace nilmoore {

namespace detail {

/// Word coefficients of log(exp x exp y) in the free associative algebra,
/// complete through total degree 5. Words whose first two letters coincide
/// are omitted: their left-nested bracket vanishes identically.
struct BchWordTerm {
    const char* word;  // 'x' / 'y' letters
    long num;
    long den;
};

inline constexpr BchWordTerm kBchWords[] = {
    {"x", 1, 1},       {"y", 1, 1},       {"xy", 1, 2},       {"yx", -1, 2},      {"xyx", -1, 6},
    {"xyy", 1, 12},    {"yxx", 1, 12},    {"yxy", -1, 6},     {"xyxy", -1, 12},   {"yxyx", 1, 12},
    {"xyxxx", 1, 180}, {"xyxxy", -1, 120}, {"xyxyx", 1, 30},  {"xyxyy", -1, 120}, {"xyyxx", -1, 120},
    {"xyyxy", -1, 120}, {"xyyyx", 1, 180}, {"xyyyy", -1, 720}, {"yxxxx", -1, 720}, {"yxxxy", 1, 180},
    {"yxxyx", -1, 120}, {"yxxyy", -1, 120}, {"yxyxx", -1, 120}, {"yxyxy", 1, 30},  {"yxyyx", -1, 120},
    {"yxyyy", 1, 180},
};

}  // namespace detail

/// log(exp X exp Y) via the degree-5 truncation of the Dynkin series:
/// each stored word w contributes coeff(w)/|w| times its left-nested bracket
/// [...[[w_1,w_2],w_3]...,w_n] (Dynkin-Specht-Wever projection). Exact for
/// algebras of step <= 5; larger steps are rejected.
inline Vec bch_product(const LieAlgebra& g, const Vec& x, const Vec& y) {
    if (g.step() > 5)
        throw StepTooLarge("bch_product supports step <= 5, algebra has step " + std::to_string(g.step()));
    Vec acc(g.dim(), Rat(0));
    for (const auto& term : detail::kBchWords) {
        std::size_t len = 0;
        while (term.word[len] != '\0') ++len;
        if (len > g.step()) continue;  // brackets of this depth vanish
        Vec v = term.word[0] == 'x' ? x : y;
        for (std::size_t i = 1; i < len && !vec_is_zero(v); ++i) v = g.bracket(v, term.word[i] == 'x' ? x : y);
        vec_axpy(acc, Rat(term.num, term.den * static_cast<long>(len)), v);
    }
    return acc;
}

inline GroupElement group_product(const LieAlgebra& g, const GroupElement& a, const GroupElement& b) {
    return {AlgebraElement{bch_product(g, a.log_coordinates.coords, b.log_coordinates.coords)}};
}

/// log of exp(w_1) exp(w_2) ... exp(w_k), folded left to right.
inline Vec log_of_word(const LieAlgebra& g, const std::vector<Vec>& factors) {
    Vec z(g.dim(), Rat(0));
    for (const Vec& f : factors) z = bch_product(g, z, f);
    return z;
}

}  // namespace nilmoore
