#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "fairdice/dice.hpp"

namespace fairdice {

// The unique-up-to-swap minimizing pair for two n-sided dice: one die
// concentrated on sides 1 and n, the other flat in the interior with
// lighter endpoints. d_min = 1/(2(2n-1)(3n-2)).
struct OptimalPair {
    int n = 0;
    DieQ point_mass;  // (1/2, 0, ..., 0, 1/2)
    DieQ plateau;     // (2/(3n-2), 3/(3n-2), ..., 3/(3n-2), 2/(3n-2))
    Rational d_min;

    std::vector<DieQ> dice() const { return {point_mass, plateau}; }
};

// Vertex data of f(s) = (3/8)s^2 + (1-s)^2/(2n-4), the lower-bound
// parabola in s = c_2 + c_{n+1} + c_{2n}. Defined for n >= 3.
struct LowerBoundCurve {
    int n = 0;
    Rational vertex_s;      // 4/(3n-2)
    Rational vertex_value;  // 3/(2(3n-2))
};

Rational minimal_distance(int n);  // 1/(2(2n-1)(3n-2)), n >= 2

OptimalPair optimal_pair(int n);

// The c_j profile of the optimal pair, stated directly: endpoints
// 1/(3n-2), middle sum n+1 gets 2/(3n-2), everything else 3/(2(3n-2)).
SumDistribution<Rational> optimal_sum_profile(int n);

LowerBoundCurve lower_bound_curve(int n);

// One die whose interior matches a flat profile, plus m-1 copies of the
// half-half endpoint die. Conjectured (not proven) optimal for m > 2;
// specializes to the proven pair at m = 2 with the roles swapped.
std::vector<DieQ> conjectured_m_dice(int n, int m);

// The published numerically-optimized identical symmetric die for n = 6,
// renormalized so its float weights sum to exactly 1. Kept as a
// regression reference: two copies of it are strictly worse than the
// true optimum.
DieD gasarch_kruskal_die(int n = 6);

// c_{n+1} - 2 sqrt(c_2 c_{2n}), the slack in the AM-GM bound for a
// two-dice sum distribution. Nonnegative (up to rounding) whenever the
// source dice are nonnegative; zero exactly at the optimal profile.
template <class S>
double amgm_residual(const SumDistribution<S>& dist) {
    if (dist.m != 2) throw InvalidInput("amgm_residual: requires m = 2");
    const double c2 = scalar_traits<S>::to_double(dist.at_sum(2));
    const double cmid = scalar_traits<S>::to_double(dist.at_sum(dist.n + 1));
    const double c2n = scalar_traits<S>::to_double(dist.at_sum(2 * dist.n));
    return cmid - 2.0 * std::sqrt(c2 * c2n);
}

template <class S>
struct Lemma2Decomposition {
    S lhs;                       // 8(x^2+y^2+z^2) - 3(x+y+z)^2
    std::array<S, 4> rhs_terms;  // 2(z^2-4xy), (z-x-y)^2, (z-2x)^2, (z-2y)^2
};

// Algebraic identity behind the 3/8 bound: lhs equals the sum of the
// four terms for all reals; the inequality lhs >= 0 needs z^2 >= 4xy.
template <class S>
Lemma2Decomposition<S> lemma2_decomposition(const S& x, const S& y, const S& z) {
    Lemma2Decomposition<S> d;
    const S sum = x + y + z;
    d.lhs = S(8) * (x * x + y * y + z * z) - S(3) * sum * sum;
    d.rhs_terms[0] = S(2) * (z * z - S(4) * x * y);
    const S a = z - x - y;
    const S b = z - S(2) * x;
    const S c = z - S(2) * y;
    d.rhs_terms[1] = a * a;
    d.rhs_terms[2] = b * b;
    d.rhs_terms[3] = c * c;
    return d;
}

// f(s) = (3/8)s^2 + (1-s)^2/(2n-4). Minimized at s = 4/(3n-2) with value
// 3/(2(3n-2)); see lower_bound_curve. n = 2 is rejected (empty interior).
template <class S>
S lower_bound_f(int n, const S& s) {
    if (n < 3) throw InvalidInput("lower_bound_f: requires n >= 3");
    const S one_minus = S(1) - s;
    return scalar_traits<S>::ratio(3, 8) * s * s +
           scalar_traits<S>::ratio(1, 2 * n - 4) * one_minus * one_minus;
}

}  // namespace fairdice
