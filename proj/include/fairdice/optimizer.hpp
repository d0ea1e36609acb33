#pragma once

#include <cstdint>
#include <vector>

#include "fairdice/dice.hpp"

namespace fairdice {

struct OptimizerConfig {
    int starts = 200;          // independent random restarts
    int max_iters = 50000;     // per start
    double step = 0.5;         // initial/backtracking reference step
    double armijo_beta = 0.5;  // backtracking factor, in (0,1)
    double armijo_c = 1e-4;    // sufficient-decrease constant, in (0,1)
    double grad_tol = 1e-12;   // stop when the projected-gradient residual drops below this
    std::uint64_t seed = 0;
    int threads = 0;           // 0 = hardware concurrency; starts are independent either way
};

struct StartSummary {
    int start_index = 0;
    double d_value = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_norm = 0.0;
};

struct OptimizationResult {
    std::vector<DieD> dice;    // best dice found, each on the probability simplex
    double d_value = 0.0;
    int best_start_index = -1;
    bool converged = false;    // projected-gradient residual < grad_tol at the incumbent
    double grad_norm = 0.0;
    int iterations_used = 0;   // iterations of the best start
    std::vector<StartSummary> per_start;
};

// Euclidean projection onto {w : w_i >= 0, sum w_i = 1} by sort and
// threshold.
std::vector<double> project_simplex(std::vector<double> v);

// dD/dw_i for die `which`: with e = c - uniform and g the sum
// distribution of the other dice, grad_i = 2 sum_j e_j g_{j-i}.
std::vector<double> gradient_d(const std::vector<DieD>& dice, int which);

// || x - P(x - grad) || over all dice; the first-order stationarity
// residual on the product of simplices.
double projected_gradient_norm(const std::vector<DieD>& dice);

// true per die iff |w_i - w_{n+1-i}| <= tol for all i.
std::vector<bool> check_symmetry(const std::vector<DieD>& dice, double tol);

// Optional instrumentation for a single descent run.
struct StartTrace {
    std::vector<double> f_values;             // objective at each accepted iterate
    bool record_iterates = false;
    std::vector<std::vector<DieD>> iterates;  // filled only when record_iterates
};

struct StartResult {
    std::vector<DieD> dice;
    double d_value = 0.0;
    int iterations = 0;
    bool converged = false;
    double grad_norm = 0.0;
};

// One projected-gradient descent with Armijo backtracking along the
// projection arc, from a Dirichlet(1,...,1) start drawn from the stream
// (cfg.seed, start_index). Deterministic for fixed arguments.
StartResult run_start(int n, int m, const OptimizerConfig& cfg, int start_index,
                      StartTrace* trace = nullptr);

// Best of cfg.starts independent descents. Ties break toward the lower
// start index, so parallel and serial runs agree exactly.
OptimizationResult minimize(int n, int m, const OptimizerConfig& cfg = {});

}  // namespace fairdice
