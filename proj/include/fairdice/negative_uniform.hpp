#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fairdice/dice.hpp"

namespace fairdice {

// Monic real quadratic x^2 - 2cos(2*pi*k/N)x + 1 pairing the conjugate
// k-th and (N-k)-th roots of unity, N = m(n-1)+1.
struct QuadraticFactor {
    int k = 0;        // root index, 1..(N-1)/2
    int modulus = 0;  // N
    std::array<double, 3> coeffs{1.0, 0.0, 1.0};

    double value_at_one() const { return coeffs[0] + coeffs[1] + coeffs[2]; }
};

// Assignment of quadratic root indices to dice: m groups of (n-1)/2.
using Partition = std::vector<std::vector<int>>;

enum class ConstructionOutcome { Dice, Impossible };

// Either m negative-weight dice with a uniform sum, or the even-n
// impossibility verdict. The verdict is an answer, not an error.
struct ConstructionResult {
    ConstructionOutcome outcome = ConstructionOutcome::Impossible;
    std::vector<DieD> dice;
    Partition partition;
    double max_uniform_error = 0.0;
    std::string reason;  // set when impossible

    bool possible() const { return outcome == ConstructionOutcome::Dice; }
};

// The m(n-1)/2 real quadratic factors of T(x) = 1 + x + ... + x^{m(n-1)}.
// Requires odd n >= 3 and m >= 2; even n raises ParityError since T then
// has no such factorization into degree-(n-1) real nonvanishing blocks.
std::vector<QuadraticFactor> t_polynomial_factors(int n, int m);

// Round-robin default: root index k goes to die (k-1) mod m.
Partition default_partition(int n, int m);

// For odd n: multiply each group's quadratics into a degree-(n-1)
// polynomial, normalize by its value at 1, read coefficients as side
// weights 1..n. Any valid partition works. For even n: Impossible.
ConstructionResult construct_uniform_dice(int n, int m,
                                          const std::optional<Partition>& partition = std::nullopt);

// max_j |c_j - 1/(m(n-1)+1)| of the float convolution.
double verify_uniform(const std::vector<DieD>& dice);

}  // namespace fairdice
