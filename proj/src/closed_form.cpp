#include "fairdice/closed_form.hpp"

#include <numeric>

namespace fairdice {

Rational minimal_distance(int n) {
    if (n < 2) throw InvalidInput("minimal_distance: requires n >= 2");
    return Rational(1, 2L * (2 * n - 1) * (3 * n - 2));
}

OptimalPair optimal_pair(int n) {
    if (n < 2) throw InvalidInput("optimal_pair: requires n >= 2");
    OptimalPair pair;
    pair.n = n;

    pair.point_mass.n = n;
    pair.point_mass.weights.assign(static_cast<std::size_t>(n), Rational(0));
    pair.point_mass.weights.front() = Rational(1, 2);
    pair.point_mass.weights.back() = Rational(1, 2);

    const long den = 3L * n - 2;
    pair.plateau.n = n;
    pair.plateau.weights.assign(static_cast<std::size_t>(n), Rational(3, den));
    pair.plateau.weights.front() = Rational(2, den);
    pair.plateau.weights.back() = Rational(2, den);

    pair.d_min = minimal_distance(n);
    return pair;
}

SumDistribution<Rational> optimal_sum_profile(int n) {
    if (n < 2) throw InvalidInput("optimal_sum_profile: requires n >= 2");
    const long den = 3L * n - 2;
    SumDistribution<Rational> dist;
    dist.m = 2;
    dist.n = n;
    dist.c.assign(static_cast<std::size_t>(2 * n - 1), Rational(3, 2 * den));
    dist.c.front() = Rational(1, den);                          // sum 2
    dist.c.back() = Rational(1, den);                           // sum 2n
    dist.c[static_cast<std::size_t>(n - 1)] = Rational(2, den); // sum n+1
    dist.uniform_value = Rational(1, 2L * n - 1);
    return dist;
}

LowerBoundCurve lower_bound_curve(int n) {
    if (n < 3) throw InvalidInput("lower_bound_curve: requires n >= 3");
    LowerBoundCurve curve;
    curve.n = n;
    curve.vertex_s = Rational(4, 3L * n - 2);
    curve.vertex_value = Rational(3, 2L * (3 * n - 2));
    return curve;
}

std::vector<DieQ> conjectured_m_dice(int n, int m) {
    if (n < 2) throw InvalidInput("conjectured_m_dice: requires n >= 2");
    if (m < 2) throw InvalidInput("conjectured_m_dice: requires m >= 2");

    const long den = static_cast<long>(n - 2) * (2L * m - 1) + 2L * m;

    DieQ first;
    first.n = n;
    first.weights.assign(static_cast<std::size_t>(n), Rational(2L * m - 1, den));
    first.weights.front() = Rational(m, den);
    first.weights.back() = Rational(m, den);

    DieQ halves;
    halves.n = n;
    halves.weights.assign(static_cast<std::size_t>(n), Rational(0));
    halves.weights.front() = Rational(1, 2);
    halves.weights.back() = Rational(1, 2);

    std::vector<DieQ> dice;
    dice.reserve(static_cast<std::size_t>(m));
    dice.push_back(std::move(first));
    for (int k = 1; k < m; ++k) dice.push_back(halves);
    return dice;
}

DieD gasarch_kruskal_die(int n) {
    if (n != 6) throw UnsupportedInput("gasarch_kruskal_die: published weights exist only for n = 6");
    DieD die;
    die.n = 6;
    die.weights = {0.243883, 0.137480, 0.118637, 0.118637, 0.137480, 0.243883};
    // The six printed decimals need not sum to 1 exactly in binary.
    const double sum = std::accumulate(die.weights.begin(), die.weights.end(), 0.0);
    for (double& w : die.weights) w /= sum;
    return die;
}

}  // namespace fairdice
