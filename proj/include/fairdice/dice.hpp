#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "fairdice/errors.hpp"
#include "fairdice/rational.hpp"

namespace fairdice {

// The scalar field is a compile-time choice: exact Rational or double.
// Mixing modes within one computation is a type error, not a runtime check.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double ratio(long num, long den) { return static_cast<double>(num) / static_cast<double>(den); }
    static double to_double(double x) { return x; }
    static constexpr const char* mode_name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational ratio(long num, long den) { return Rational(num, den); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static constexpr const char* mode_name() { return "rational"; }
};

// An n-sided die. weights[i] is the weight of side i+1. Weights are
// expected to sum to 1; nothing is enforced at construction, validate_die
// reports violations.
template <class S>
struct Die {
    int n = 0;
    std::vector<S> weights;
    bool allow_negative = false;

    S weight(int side) const { return weights[static_cast<std::size_t>(side - 1)]; }
};

using DieQ = Die<Rational>;
using DieD = Die<double>;

// Distribution of the sum of m n-sided dice: c[j - m] is the probability
// of total j, for j = m..mn. uniform_value is the height 1/(m(n-1)+1) of
// the uniform distribution on the same support.
template <class S>
struct SumDistribution {
    int m = 0;
    int n = 0;
    std::vector<S> c;
    S uniform_value{};

    int min_sum() const { return m; }
    int max_sum() const { return m * n; }
    int support_size() const { return m * (n - 1) + 1; }

    S at_sum(int j) const { return c[static_cast<std::size_t>(j - m)]; }
};

namespace detail {

template <class S>
void require_die_shape(const Die<S>& d) {
    if (d.n < 2) throw InvalidInput("die must have n >= 2 sides");
    if (d.weights.size() != static_cast<std::size_t>(d.n))
        throw InvalidInput("die weight vector length does not match n");
}

}  // namespace detail

// Plain coefficient-vector convolution: out[t] = sum_{a+b=t} x[a] y[b].
// Shared by dice sums and by polynomial expansion elsewhere.
template <class S>
std::vector<S> convolve_vectors(std::span<const S> x, std::span<const S> y) {
    if (x.empty() || y.empty()) throw InvalidInput("convolve_vectors: empty operand");
    std::vector<S> out(x.size() + y.size() - 1, S(0));
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < y.size(); ++b) out[a + b] += x[a] * y[b];
    return out;
}

template <class S>
std::vector<S> convolve_vectors(const std::vector<S>& x, const std::vector<S>& y) {
    return convolve_vectors(std::span<const S>(x), std::span<const S>(y));
}

// Sum distribution of a list of dice sharing one side count. m = 1 is
// accepted (the result is the die itself); theorem-level operations
// upstream impose their own m >= 2 preconditions.
template <class S>
SumDistribution<S> convolve(std::span<const Die<S>> dice) {
    if (dice.empty()) throw InvalidInput("convolve: empty dice list");
    const int n = dice.front().n;
    for (const Die<S>& d : dice) {
        detail::require_die_shape(d);
        if (d.n != n) throw InvalidInput("convolve: dice have mismatched side counts");
    }

    std::vector<S> acc = dice.front().weights;
    for (std::size_t k = 1; k < dice.size(); ++k)
        acc = convolve_vectors<S>(acc, dice[k].weights);

    const int m = static_cast<int>(dice.size());
    SumDistribution<S> dist;
    dist.m = m;
    dist.n = n;
    dist.c = std::move(acc);
    dist.uniform_value = scalar_traits<S>::ratio(1, m * (n - 1) + 1);
    return dist;
}

template <class S>
SumDistribution<S> convolve(const std::vector<Die<S>>& dice) {
    return convolve(std::span<const Die<S>>(dice));
}

template <class S>
SumDistribution<S> convolve(std::initializer_list<Die<S>> dice) {
    return convolve(std::span<const Die<S>>(dice.begin(), dice.size()));
}

// D = sum_j (c_j - uniform)^2, the squared L2 distance to uniform.
template <class S>
S distance_to_uniform(const SumDistribution<S>& dist) {
    S total(0);
    for (const S& cj : dist.c) {
        S e = cj - dist.uniform_value;
        total += e * e;
    }
    return total;
}

// sum_j c_j^2. For distributions whose entries sum to 1 this equals
// D + 1/(m(n-1)+1), which tests exploit as an exact cross-check.
template <class S>
S sum_of_squares(const SumDistribution<S>& dist) {
    S total(0);
    for (const S& cj : dist.c) total += cj * cj;
    return total;
}

template <class S>
struct DieValidation {
    bool shape_ok = false;
    bool sum_ok = false;
    bool signs_ok = false;
    S sum{};
    S sum_error{};                   // sum - 1
    std::vector<int> negative_sides; // 1-based; populated only when negatives are disallowed

    bool valid() const { return shape_ok && sum_ok && signs_ok; }
};

// Reports (never throws): sum deviation from 1 and, unless the die opts
// into negative weights, any sides below zero. Float mode tolerates
// |sum - 1| <= 1e-12; rational mode is exact.
template <class S>
DieValidation<S> validate_die(const Die<S>& d) {
    DieValidation<S> report;
    report.shape_ok = d.n >= 2 && d.weights.size() == static_cast<std::size_t>(d.n);
    if (!report.shape_ok) return report;

    S sum(0);
    for (const S& w : d.weights) sum += w;
    report.sum = sum;
    report.sum_error = sum - S(1);
    if constexpr (scalar_traits<S>::exact) {
        report.sum_ok = report.sum_error == S(0);
    } else {
        report.sum_ok = std::abs(report.sum_error) <= 1e-12;
    }

    report.signs_ok = true;
    if (!d.allow_negative) {
        for (int i = 0; i < d.n; ++i) {
            if (d.weights[static_cast<std::size_t>(i)] < S(0)) {
                report.negative_sides.push_back(i + 1);
                report.signs_ok = false;
            }
        }
    }
    return report;
}

}  // namespace fairdice
