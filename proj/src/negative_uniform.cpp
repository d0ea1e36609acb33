#include "fairdice/negative_uniform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fairdice {

namespace {

void require_theorem_inputs(int n, int m) {
    if (m < 2) throw InvalidInput("negative_uniform: requires m >= 2");
    if (n < 2) throw InvalidInput("negative_uniform: requires n >= 2");
}

Partition validated_partition(int n, int m, const Partition& partition) {
    const int total = m * (n - 1) / 2;
    const std::size_t group_size = static_cast<std::size_t>((n - 1) / 2);
    if (partition.size() != static_cast<std::size_t>(m))
        throw InvalidInput("partition: expected one group per die");
    std::vector<bool> seen(static_cast<std::size_t>(total) + 1, false);
    for (const std::vector<int>& group : partition) {
        if (group.size() != group_size)
            throw InvalidInput("partition: each group must hold (n-1)/2 root indices");
        for (int k : group) {
            if (k < 1 || k > total) throw InvalidInput("partition: root index out of range");
            if (seen[static_cast<std::size_t>(k)]) throw InvalidInput("partition: duplicate root index");
            seen[static_cast<std::size_t>(k)] = true;
        }
    }
    return partition;
}

}  // namespace

std::vector<QuadraticFactor> t_polynomial_factors(int n, int m) {
    require_theorem_inputs(n, m);
    if (n % 2 == 0)
        throw ParityError("t_polynomial_factors: impossible for even n (Theorem 2)");

    const int N = m * (n - 1) + 1;  // odd, so T has no root at -1
    std::vector<QuadraticFactor> factors;
    factors.reserve(static_cast<std::size_t>((N - 1) / 2));
    for (int k = 1; k <= (N - 1) / 2; ++k) {
        QuadraticFactor q;
        q.k = k;
        q.modulus = N;
        q.coeffs = {1.0, -2.0 * std::cos(2.0 * std::numbers::pi * k / N), 1.0};
        factors.push_back(q);
    }
    return factors;
}

Partition default_partition(int n, int m) {
    const int total = m * (n - 1) / 2;
    Partition partition(static_cast<std::size_t>(m));
    for (int k = 1; k <= total; ++k)
        partition[static_cast<std::size_t>((k - 1) % m)].push_back(k);
    return partition;
}

ConstructionResult construct_uniform_dice(int n, int m, const std::optional<Partition>& partition) {
    require_theorem_inputs(n, m);

    ConstructionResult result;
    if (n % 2 == 0) {
        result.outcome = ConstructionOutcome::Impossible;
        result.reason = "n even (Theorem 2)";
        return result;
    }

    const std::vector<QuadraticFactor> factors = t_polynomial_factors(n, m);
    result.partition =
        partition ? validated_partition(n, m, *partition) : default_partition(n, m);

    result.outcome = ConstructionOutcome::Dice;
    result.dice.reserve(static_cast<std::size_t>(m));
    for (const std::vector<int>& group : result.partition) {
        std::vector<double> poly{1.0};
        for (int k : group) {
            const QuadraticFactor& q = factors[static_cast<std::size_t>(k - 1)];
            poly = convolve_vectors<double>(poly, {q.coeffs.begin(), q.coeffs.end()});
        }
        // Degree n-1 polynomial; dividing by its coefficient sum makes the
        // weights sum to 1 (the sum is positive: every factor is positive at 1).
        double total = 0.0;
        for (double a : poly) total += a;
        DieD die;
        die.n = n;
        die.allow_negative = true;
        die.weights.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) die.weights[static_cast<std::size_t>(i)] = poly[static_cast<std::size_t>(i)] / total;
        result.dice.push_back(std::move(die));
    }

    result.max_uniform_error = verify_uniform(result.dice);
    return result;
}

double verify_uniform(const std::vector<DieD>& dice) {
    const SumDistribution<double> dist = convolve(dice);
    double worst = 0.0;
    for (double cj : dist.c) worst = std::max(worst, std::abs(cj - dist.uniform_value));
    return worst;
}

}  // namespace fairdice
