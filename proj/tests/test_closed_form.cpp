#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fairdice/closed_form.hpp"
#include "test_support.hpp"

using namespace fairdice;
using testsupport::random_rational;
using testsupport::random_simplex_die;

TEST_CASE("optimal_pair: n = 3") {
    const OptimalPair pair = optimal_pair(3);
    CHECK(pair.point_mass.weights ==
          std::vector<Rational>{Rational(1, 2), Rational(0), Rational(1, 2)});
    CHECK(pair.plateau.weights ==
          std::vector<Rational>{Rational(2, 7), Rational(3, 7), Rational(2, 7)});
    CHECK(pair.d_min == Rational(1, 70));
}

TEST_CASE("optimal_pair: n = 2 degenerates to two fair coins") {
    const OptimalPair pair = optimal_pair(2);
    CHECK(pair.point_mass.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(pair.plateau.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(pair.d_min == Rational(1, 24));
}

TEST_CASE("optimal_pair: n = 6") {
    const OptimalPair pair = optimal_pair(6);
    CHECK(pair.plateau.weights ==
          std::vector<Rational>{Rational(2, 16), Rational(3, 16), Rational(3, 16), Rational(3, 16),
                                Rational(3, 16), Rational(2, 16)});
    CHECK(pair.d_min == Rational(1, 352));
    CHECK_THROWS_AS(optimal_pair(1), InvalidInput);
}

TEST_CASE("optimal pair exactness for n = 2..50") {
    for (int n = 2; n <= 50; ++n) {
        const OptimalPair pair = optimal_pair(n);
        CHECK(validate_die(pair.point_mass).valid());
        CHECK(validate_die(pair.plateau).valid());
        const auto dist = convolve(pair.dice());
        CHECK(distance_to_uniform(dist) == pair.d_min);
        CHECK(pair.d_min == minimal_distance(n));

        const auto profile = optimal_sum_profile(n);
        CHECK(dist.c == profile.c);
        CHECK(dist.uniform_value == profile.uniform_value);
    }
}

TEST_CASE("optimal_sum_profile: stated values") {
    const auto p3 = optimal_sum_profile(3);
    CHECK(p3.c == std::vector<Rational>{Rational(1, 7), Rational(3, 14), Rational(2, 7),
                                        Rational(3, 14), Rational(1, 7)});

    const auto p2 = optimal_sum_profile(2);
    CHECK(p2.c == std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4)});

    for (int n : {2, 3, 4, 10, 37}) {
        const auto profile = optimal_sum_profile(n);
        Rational total(0);
        for (const Rational& cj : profile.c) total += cj;
        CHECK(total == Rational(1));
    }
    CHECK_THROWS_AS(optimal_sum_profile(0), InvalidInput);
}

TEST_CASE("amgm_residual: zero at the optimal profile") {
    for (int n = 2; n <= 8; ++n) {
        CHECK(std::abs(amgm_residual(optimal_sum_profile(n))) <= 1e-12);
    }
}

TEST_CASE("amgm_residual: fair six-sided pair and point masses") {
    DieQ fair;
    fair.n = 6;
    fair.weights.assign(6, Rational(1, 6));
    CHECK(amgm_residual(convolve<Rational>({fair, fair})) == doctest::Approx(4.0 / 36.0).epsilon(1e-12));

    DieD lo{3, {1.0, 0.0, 0.0}, false};
    DieD hi{3, {0.0, 0.0, 1.0}, false};
    CHECK(amgm_residual(convolve<double>({lo, hi})) == doctest::Approx(1.0));
}

TEST_CASE("amgm_residual: rejects m != 2") {
    DieQ coin;
    coin.n = 2;
    coin.weights.assign(2, Rational(1, 2));
    CHECK_THROWS_AS(amgm_residual(convolve<Rational>({coin, coin, coin})), InvalidInput);
}

TEST_CASE("property: amgm_residual is nonnegative for nonnegative dice") {
    std::mt19937_64 rng(23);
    for (int n : {3, 6}) {
        for (int trial = 0; trial < 10000; ++trial) {
            const std::vector<DieD> dice = {random_simplex_die(rng, n), random_simplex_die(rng, n)};
            CHECK(amgm_residual(convolve(dice)) >= -1e-12);
        }
    }
}

TEST_CASE("lemma2_decomposition: equality case and fixed points") {
    auto eq = lemma2_decomposition(Rational(1, 4), Rational(1, 4), Rational(1, 2));
    CHECK(eq.lhs == Rational(0));
    for (const Rational& t : eq.rhs_terms) CHECK(t == Rational(0));

    auto ones = lemma2_decomposition(Rational(1), Rational(1), Rational(1));
    CHECK(ones.lhs == Rational(-3));
    CHECK(ones.rhs_terms == std::array<Rational, 4>{Rational(-6), Rational(1), Rational(1), Rational(1)});

    auto unit = lemma2_decomposition(Rational(0), Rational(0), Rational(1));
    CHECK(unit.lhs == Rational(5));
    CHECK(unit.rhs_terms == std::array<Rational, 4>{Rational(2), Rational(1), Rational(1), Rational(1)});
}

TEST_CASE("property: lemma2 identity holds exactly for random rational triples") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10000; ++trial) {
        const Rational x = random_rational(rng);
        const Rational y = random_rational(rng);
        const Rational z = random_rational(rng);
        const auto d = lemma2_decomposition(x, y, z);
        CHECK(d.lhs == d.rhs_terms[0] + d.rhs_terms[1] + d.rhs_terms[2] + d.rhs_terms[3]);
    }
}

TEST_CASE("lower_bound_f: stated values") {
    CHECK(lower_bound_f(3, Rational(4, 7)) == Rational(3, 14));
    for (int n : {3, 5, 12}) CHECK(lower_bound_f(n, Rational(1)) == Rational(3, 8));

    const LowerBoundCurve curve4 = lower_bound_curve(4);
    CHECK(curve4.vertex_s == Rational(2, 5));
    CHECK(curve4.vertex_value == Rational(3, 20));
    CHECK(lower_bound_f(4, 0.39) > lower_bound_f(4, 0.40));
    CHECK(lower_bound_f(4, 0.41) > lower_bound_f(4, 0.40));

    CHECK_THROWS_AS(lower_bound_f(2, Rational(1, 2)), InvalidInput);
    CHECK_THROWS_AS(lower_bound_curve(2), InvalidInput);
}

TEST_CASE("lower_bound_f: vertex is the exact minimum for n = 3..50") {
    for (int n = 3; n <= 50; ++n) {
        const LowerBoundCurve curve = lower_bound_curve(n);
        CHECK(lower_bound_f(n, curve.vertex_s) == curve.vertex_value);
        CHECK(curve.vertex_value == Rational(3, 2L * (3 * n - 2)));
        const Rational eps(1, 1000);
        CHECK(lower_bound_f(n, curve.vertex_s + eps) > curve.vertex_value);
        CHECK(lower_bound_f(n, curve.vertex_s - eps) > curve.vertex_value);
    }
}

TEST_CASE("conjectured_m_dice: m = 3, n = 5") {
    const auto dice = conjectured_m_dice(5, 3);
    REQUIRE(dice.size() == 3);
    CHECK(dice[0].weights == std::vector<Rational>{Rational(3, 21), Rational(5, 21), Rational(5, 21),
                                                   Rational(5, 21), Rational(3, 21)});
    for (int k = 1; k < 3; ++k)
        CHECK(dice[static_cast<std::size_t>(k)].weights ==
              std::vector<Rational>{Rational(1, 2), Rational(0), Rational(0), Rational(0),
                                    Rational(1, 2)});
    for (const DieQ& d : dice) CHECK(validate_die(d).valid());
}

TEST_CASE("conjectured_m_dice: m = 2 specializes to the proven pair, roles swapped") {
    for (int n = 2; n <= 10; ++n) {
        const auto dice = conjectured_m_dice(n, 2);
        const OptimalPair pair = optimal_pair(n);
        REQUIRE(dice.size() == 2);
        CHECK(dice[0].weights == pair.plateau.weights);
        CHECK(dice[1].weights == pair.point_mass.weights);
    }
    CHECK_THROWS_AS(conjectured_m_dice(1, 2), InvalidInput);
    CHECK_THROWS_AS(conjectured_m_dice(3, 1), InvalidInput);
}

TEST_CASE("gasarch_kruskal_die: symmetric, normalized, and strictly suboptimal") {
    const DieD die = gasarch_kruskal_die();
    REQUIRE(die.n == 6);
    double sum = 0.0;
    for (double w : die.weights) sum += w;
    CHECK(std::abs(sum - 1.0) <= 1e-15);
    for (int i = 1; i <= 6; ++i) CHECK(die.weight(i) == die.weight(7 - i));

    const double d_pair = distance_to_uniform(convolve<double>({die, die}));
    CHECK(d_pair > 1.0 / 352.0);
    // frozen via exact-rational evaluation of the published decimals
    CHECK(d_pair == doctest::Approx(0.013393416623736869).epsilon(1e-12));

    CHECK_THROWS_AS(gasarch_kruskal_die(5), UnsupportedInput);
}

TEST_CASE("property: random nonnegative pairs never beat the closed-form minimum") {
    std::mt19937_64 rng(31);
    for (int n : {3, 4, 5, 6}) {
        const double d_min = minimal_distance(n).to_double();
        const OptimalPair pair = optimal_pair(n);
        for (int trial = 0; trial < 10000; ++trial) {
            const std::vector<DieD> dice = {random_simplex_die(rng, n), random_simplex_die(rng, n)};
            const double d = testsupport::objective_d(dice);
            CHECK(d >= d_min - 1e-15);
            if (d <= d_min + 1e-9) {
                // equality implies the Theorem 1 pair (up to swapping)
                auto matches = [&](const DieD& a, const DieQ& b) {
                    for (int i = 0; i < n; ++i)
                        if (std::abs(a.weights[static_cast<std::size_t>(i)] -
                                     b.weights[static_cast<std::size_t>(i)].to_double()) > 1e-3)
                            return false;
                    return true;
                };
                const bool direct = matches(dice[0], pair.point_mass) && matches(dice[1], pair.plateau);
                const bool swapped = matches(dice[0], pair.plateau) && matches(dice[1], pair.point_mass);
                CHECK((direct || swapped));
            }
        }
    }
}

TEST_CASE("rate: n^2 * d_min decreases monotonically to 1/12") {
    Rational previous = minimal_distance(2) * Rational(4);
    for (int n = 3; n <= 200; ++n) {
        const Rational scaled = minimal_distance(n) * Rational(static_cast<long>(n) * n);
        CHECK(scaled < previous);
        CHECK(scaled > Rational(1, 12));
        previous = scaled;
    }
    for (int n = 10; n <= 200; ++n) {
        const Rational scaled = minimal_distance(n) * Rational(static_cast<long>(n) * n);
        CHECK(abs(scaled - Rational(1, 12)) < Rational(1, n));
    }
}
