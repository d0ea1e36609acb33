#include "fairdice/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <thread>

namespace fairdice {

namespace {

using Vec = std::vector<double>;

// splitmix64; one stream per (seed, start) pair keeps runs reproducible
// regardless of thread scheduling.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform01() {  // (0, 1]
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }
};

void conv_into(const Vec& x, const Vec& y, Vec& out) {
    out.assign(x.size() + y.size() - 1, 0.0);
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double xa = x[a];
        for (std::size_t b = 0; b < y.size(); ++b) out[a + b] += xa * y[b];
    }
}

void project_simplex_into(const Vec& v, Vec& scratch, Vec& out) {
    const std::size_t d = v.size();
    scratch = v;
    std::sort(scratch.begin(), scratch.end(), std::greater<double>());
    double cumsum = 0.0;
    double tau = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        cumsum += scratch[i];
        const double t = (cumsum - 1.0) / static_cast<double>(i + 1);
        if (scratch[i] - t > 0.0) tau = t;
    }
    out.resize(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = std::max(v[i] - tau, 0.0);
}

// Objective, all gradients, and the sum distribution in one pass.
// Gradients come from prefix/suffix convolutions: the distribution of
// "all dice but k" is prefix[k] * suffix[k+1].
struct Evaluator {
    int n, m;
    double uniform;
    std::vector<Vec> prefix, suffix;  // prefix[i] = w_0*...*w_{i-1}; suffix[i] = w_i*...*w_{m-1}
    Vec others, c, e;

    Evaluator(int n_, int m_) : n(n_), m(m_) {
        uniform = 1.0 / static_cast<double>(m * (n - 1) + 1);
        prefix.resize(static_cast<std::size_t>(m) + 1);
        suffix.resize(static_cast<std::size_t>(m) + 1);
        prefix[0] = {1.0};
        suffix[static_cast<std::size_t>(m)] = {1.0};
    }

    double objective(const std::vector<Vec>& w) {
        c = w[0];
        Vec tmp;
        for (int k = 1; k < m; ++k) {
            conv_into(c, w[static_cast<std::size_t>(k)], tmp);
            c.swap(tmp);
        }
        double f = 0.0;
        for (double cj : c) {
            const double ej = cj - uniform;
            f += ej * ej;
        }
        return f;
    }

    // Fills grads[k] for every die; returns the objective.
    double objective_and_gradients(const std::vector<Vec>& w, std::vector<Vec>& grads) {
        for (int k = 0; k < m; ++k)
            conv_into(prefix[static_cast<std::size_t>(k)], w[static_cast<std::size_t>(k)],
                      prefix[static_cast<std::size_t>(k) + 1]);
        for (int k = m - 1; k >= 0; --k)
            conv_into(w[static_cast<std::size_t>(k)], suffix[static_cast<std::size_t>(k) + 1],
                      suffix[static_cast<std::size_t>(k)]);

        const Vec& full = prefix[static_cast<std::size_t>(m)];
        e.resize(full.size());
        double f = 0.0;
        for (std::size_t j = 0; j < full.size(); ++j) {
            e[j] = full[j] - uniform;
            f += e[j] * e[j];
        }

        grads.resize(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            conv_into(prefix[static_cast<std::size_t>(k)], suffix[static_cast<std::size_t>(k) + 1], others);
            Vec& g = grads[static_cast<std::size_t>(k)];
            g.assign(static_cast<std::size_t>(n), 0.0);
            for (std::size_t a = 0; a < g.size(); ++a) {
                double acc = 0.0;
                for (std::size_t b = 0; b < others.size(); ++b) acc += e[a + b] * others[b];
                g[a] = 2.0 * acc;
            }
        }
        return f;
    }
};

std::vector<Vec> weights_of(const std::vector<DieD>& dice) {
    std::vector<Vec> w;
    w.reserve(dice.size());
    for (const DieD& d : dice) w.push_back(d.weights);
    return w;
}

std::vector<DieD> dice_of(const std::vector<Vec>& w, int n) {
    std::vector<DieD> dice(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        dice[k].n = n;
        dice[k].weights = w[k];
    }
    return dice;
}

double residual_norm(const std::vector<Vec>& w, const std::vector<Vec>& grads, Vec& scratch,
                     Vec& tmp, Vec& proj) {
    double sq = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        tmp.resize(w[k].size());
        for (std::size_t i = 0; i < w[k].size(); ++i) tmp[i] = w[k][i] - grads[k][i];
        project_simplex_into(tmp, scratch, proj);
        for (std::size_t i = 0; i < w[k].size(); ++i) {
            const double d = w[k][i] - proj[i];
            sq += d * d;
        }
    }
    return std::sqrt(sq);
}

void validate_config(const OptimizerConfig& cfg) {
    if (cfg.starts < 1) throw InvalidInput("optimizer: starts must be >= 1");
    if (cfg.max_iters < 1) throw InvalidInput("optimizer: max_iters must be >= 1");
    if (!(cfg.step > 0.0)) throw InvalidInput("optimizer: step must be positive");
    if (!(cfg.armijo_beta > 0.0 && cfg.armijo_beta < 1.0))
        throw InvalidInput("optimizer: armijo_beta must lie in (0,1)");
    if (!(cfg.armijo_c > 0.0 && cfg.armijo_c < 1.0))
        throw InvalidInput("optimizer: armijo_c must lie in (0,1)");
    if (!(cfg.grad_tol > 0.0)) throw InvalidInput("optimizer: grad_tol must be positive");
    if (cfg.threads < 0) throw InvalidInput("optimizer: threads must be >= 0");
}

}  // namespace

std::vector<double> project_simplex(std::vector<double> v) {
    if (v.empty()) throw InvalidInput("project_simplex: empty vector");
    Vec scratch, out;
    project_simplex_into(v, scratch, out);
    return out;
}

std::vector<double> gradient_d(const std::vector<DieD>& dice, int which) {
    if (dice.empty()) throw InvalidInput("gradient_d: empty dice list");
    if (which < 0 || which >= static_cast<int>(dice.size()))
        throw InvalidInput("gradient_d: die index out of range");
    const int n = dice.front().n;
    for (const DieD& d : dice) {
        detail::require_die_shape(d);
        if (d.n != n) throw InvalidInput("gradient_d: dice have mismatched side counts");
    }
    Evaluator ev(n, static_cast<int>(dice.size()));
    std::vector<Vec> grads;
    ev.objective_and_gradients(weights_of(dice), grads);
    return grads[static_cast<std::size_t>(which)];
}

double projected_gradient_norm(const std::vector<DieD>& dice) {
    if (dice.empty()) throw InvalidInput("projected_gradient_norm: empty dice list");
    Evaluator ev(dice.front().n, static_cast<int>(dice.size()));
    std::vector<Vec> grads;
    const std::vector<Vec> w = weights_of(dice);
    ev.objective_and_gradients(w, grads);
    Vec scratch, tmp, proj;
    return residual_norm(w, grads, scratch, tmp, proj);
}

std::vector<bool> check_symmetry(const std::vector<DieD>& dice, double tol) {
    std::vector<bool> result(dice.size());
    for (std::size_t k = 0; k < dice.size(); ++k) {
        const Vec& w = dice[k].weights;
        bool sym = true;
        for (std::size_t i = 0; i < w.size() / 2 + 1 && sym; ++i)
            sym = std::abs(w[i] - w[w.size() - 1 - i]) <= tol;
        result[k] = sym;
    }
    return result;
}

StartResult run_start(int n, int m, const OptimizerConfig& cfg, int start_index, StartTrace* trace) {
    if (n < 2) throw InvalidInput("optimizer: requires n >= 2");
    if (m < 2) throw InvalidInput("optimizer: requires m >= 2");
    validate_config(cfg);

    SplitMix64 rng{cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(start_index + 1)};

    // Dirichlet(1,...,1) start: normalized unit exponentials.
    std::vector<Vec> w(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(n)));
    for (Vec& die : w) {
        double sum = 0.0;
        for (double& wi : die) {
            wi = -std::log(rng.uniform01());
            sum += wi;
        }
        if (sum <= 0.0) {
            die.assign(die.size(), 1.0 / static_cast<double>(n));
        } else {
            for (double& wi : die) wi /= sum;
        }
    }

    Evaluator ev(n, m);
    std::vector<Vec> grads;
    Vec scratch, tmp, proj;
    std::vector<Vec> trial(static_cast<std::size_t>(m));

    double f = ev.objective(w);
    if (trace) {
        trace->f_values.push_back(f);
        if (trace->record_iterates) trace->iterates.push_back(dice_of(w, n));
    }

    const double step_cap = 8.0;
    constexpr double step_floor = 1e-18;
    double step = cfg.step;
    double res = 0.0;
    bool converged = false;
    int iterations = 0;

    for (int it = 0; it < cfg.max_iters; ++it) {
        iterations = it + 1;
        ev.objective_and_gradients(w, grads);
        res = residual_norm(w, grads, scratch, tmp, proj);
        if (res < cfg.grad_tol) {
            converged = true;
            break;
        }

        step = std::min(step * 2.0, step_cap);
        bool accepted = false;
        while (step > step_floor) {
            double dec = 0.0;
            for (std::size_t k = 0; k < w.size(); ++k) {
                tmp.resize(w[k].size());
                for (std::size_t i = 0; i < w[k].size(); ++i) tmp[i] = w[k][i] - step * grads[k][i];
                project_simplex_into(tmp, scratch, trial[k]);
                for (std::size_t i = 0; i < w[k].size(); ++i)
                    dec += grads[k][i] * (trial[k][i] - w[k][i]);
            }
            if (dec < 0.0) {
                const double ft = ev.objective(trial);
                if (ft <= f + cfg.armijo_c * dec) {
                    for (std::size_t k = 0; k < w.size(); ++k) w[k].swap(trial[k]);
                    f = ft;
                    accepted = true;
                    break;
                }
            }
            step *= cfg.armijo_beta;
        }
        if (!accepted) break;  // no measurable descent left at this precision

        if (trace) {
            trace->f_values.push_back(f);
            if (trace->record_iterates) trace->iterates.push_back(dice_of(w, n));
        }
    }

    if (!converged) {  // final residual at the point we stopped at
        ev.objective_and_gradients(w, grads);
        res = residual_norm(w, grads, scratch, tmp, proj);
        converged = res < cfg.grad_tol;
    }

    StartResult out;
    out.dice = dice_of(w, n);
    out.d_value = ev.objective(w);
    out.iterations = iterations;
    out.converged = converged;
    out.grad_norm = res;
    return out;
}

OptimizationResult minimize(int n, int m, const OptimizerConfig& cfg) {
    if (n < 2) throw InvalidInput("optimizer: requires n >= 2");
    if (m < 2) throw InvalidInput("optimizer: requires m >= 2");
    validate_config(cfg);

    std::vector<StartResult> results(static_cast<std::size_t>(cfg.starts));

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const int threads = std::min<int>(cfg.threads > 0 ? cfg.threads : static_cast<int>(hw), cfg.starts);

    if (threads <= 1) {
        for (int s = 0; s < cfg.starts; ++s) results[static_cast<std::size_t>(s)] = run_start(n, m, cfg, s);
    } else {
        std::atomic<int> next{0};
        auto worker = [&] {
            for (;;) {
                const int s = next.fetch_add(1);
                if (s >= cfg.starts) return;
                results[static_cast<std::size_t>(s)] = run_start(n, m, cfg, s);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    // Reduce by (value, start index); identical in serial and parallel runs.
    int best = 0;
    for (int s = 1; s < cfg.starts; ++s)
        if (results[static_cast<std::size_t>(s)].d_value < results[static_cast<std::size_t>(best)].d_value)
            best = s;

    const StartResult& winner = results[static_cast<std::size_t>(best)];
    OptimizationResult out;
    out.dice = winner.dice;
    out.d_value = winner.d_value;
    out.best_start_index = best;
    out.converged = winner.converged;
    out.grad_norm = winner.grad_norm;
    out.iterations_used = winner.iterations;
    out.per_start.reserve(static_cast<std::size_t>(cfg.starts));
    for (int s = 0; s < cfg.starts; ++s) {
        const StartResult& r = results[static_cast<std::size_t>(s)];
        out.per_start.push_back({s, r.d_value, r.iterations, r.converged, r.grad_norm});
    }
    return out;
}

}  // namespace fairdice
