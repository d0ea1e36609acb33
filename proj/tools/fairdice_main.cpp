#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairdice/closed_form.hpp"
#include "fairdice/dice.hpp"
#include "fairdice/json_io.hpp"
#include "fairdice/negative_uniform.hpp"
#include "fairdice/optimizer.hpp"

namespace {

using fairdice::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitImpossible = 3;

struct CommonOpts {
    std::string json_path;
    std::string csv_path;
    std::uint64_t seed = 0;
    std::string mode = "rational";
    bool no_timestamp = false;
};

std::string iso_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json make_manifest(const std::string& subcommand, json parameters, const CommonOpts& opts) {
    json outputs = json::array();
    if (!opts.json_path.empty()) outputs.push_back(opts.json_path);
    if (!opts.csv_path.empty()) outputs.push_back(opts.csv_path);
    return json{{"subcommand", subcommand},
                {"parameters", std::move(parameters)},
                {"seed", opts.seed},
                {"mode", opts.mode},
                {"outputs", outputs},
                {"version", FAIRDICE_VERSION}};
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << contents;
}

void emit(const CommonOpts& opts, json payload, const std::string& csv) {
    if (!opts.json_path.empty()) {
        if (!opts.no_timestamp) payload["timestamp"] = iso_timestamp();
        write_file(opts.json_path, payload.dump(2) + "\n");
    }
    if (!opts.csv_path.empty()) write_file(opts.csv_path, csv);
}

std::string rational_pretty(const fairdice::Rational& r) {
    return r.to_string() + " = " + fairdice::format_double_12(r.to_double());
}

std::string weights_pretty(const fairdice::DieQ& die) {
    std::string s;
    for (std::size_t i = 0; i < die.weights.size(); ++i) {
        if (i) s += ", ";
        s += die.weights[i].to_string();
    }
    return s;
}

std::string weights_pretty(const fairdice::DieD& die) {
    std::string s;
    for (std::size_t i = 0; i < die.weights.size(); ++i) {
        if (i) s += ", ";
        s += fairdice::format_double_12(die.weights[i]);
    }
    return s;
}

template <class S>
void print_profile(const fairdice::SumDistribution<S>& dist) {
    for (int j = dist.min_sum(); j <= dist.max_sum(); ++j) {
        if constexpr (fairdice::scalar_traits<S>::exact) {
            std::cout << "  c_" << j << " = " << rational_pretty(dist.at_sum(j)) << "\n";
        } else {
            std::cout << "  c_" << j << " = " << fairdice::format_double_12(dist.at_sum(j)) << "\n";
        }
    }
}

int cmd_optimal(int n, const CommonOpts& opts) {
    const fairdice::OptimalPair pair = fairdice::optimal_pair(n);
    const auto profile = fairdice::optimal_sum_profile(n);

    std::cout << "closest-to-uniform pair for two " << n << "-sided dice (order is a convention;"
              << " the pair is unique up to swapping):\n";
    std::cout << "  die 1 (point mass): " << weights_pretty(pair.point_mass) << "\n";
    std::cout << "  die 2 (plateau):    " << weights_pretty(pair.plateau) << "\n";
    std::cout << "D_min = " << rational_pretty(pair.d_min) << "\n";
    std::cout << "sum profile:\n";
    print_profile(profile);

    json payload;
    payload["manifest"] = make_manifest("optimal", json{{"n", n}}, opts);
    if (opts.mode == "float") {
        std::vector<fairdice::DieD> dice(2);
        for (int k = 0; k < 2; ++k) {
            const fairdice::DieQ& src = k == 0 ? pair.point_mass : pair.plateau;
            dice[k].n = n;
            for (const auto& w : src.weights) dice[k].weights.push_back(w.to_double());
        }
        payload.update(fairdice::dice_file_json(dice));
    } else {
        payload.update(fairdice::dice_file_json(pair.dice()));
    }
    payload["result"] = fairdice::to_json(pair);
    payload["profile"] = fairdice::to_json(profile);
    emit(opts, payload, fairdice::sum_distribution_csv(profile));
    return kExitOk;
}

int cmd_conjecture(int n, int m, const CommonOpts& opts) {
    const std::vector<fairdice::DieQ> dice = fairdice::conjectured_m_dice(n, m);
    const auto dist = fairdice::convolve(dice);
    const fairdice::Rational d = fairdice::distance_to_uniform(dist);

    std::cout << "CONJECTURE (unproven pattern) for " << m << " dice with " << n << " sides:\n";
    for (std::size_t k = 0; k < dice.size(); ++k)
        std::cout << "  die " << (k + 1) << ": " << weights_pretty(dice[k]) << "\n";
    std::cout << "D = " << rational_pretty(d) << "\n";

    json payload;
    payload["manifest"] = make_manifest("conjecture", json{{"n", n}, {"m", m}}, opts);
    payload.update(fairdice::dice_file_json(dice));
    payload["status"] = "conjecture";
    payload["d_value"] = fairdice::rational_to_json(d);
    payload["d_value_decimal"] = d.to_double();
    payload["profile"] = fairdice::to_json(dist);
    emit(opts, payload, fairdice::sum_distribution_csv(dist));
    return kExitOk;
}

int cmd_optimize(int n, int m, const fairdice::OptimizerConfig& cfg, const CommonOpts& opts) {
    const fairdice::OptimizationResult result = fairdice::minimize(n, m, cfg);

    std::cout << "best of " << cfg.starts << " starts (seed " << cfg.seed << "):\n";
    for (std::size_t k = 0; k < result.dice.size(); ++k)
        std::cout << "  die " << (k + 1) << ": " << weights_pretty(result.dice[k]) << "\n";
    std::cout << "D = " << fairdice::format_double_12(result.d_value)
              << "  (converged: " << (result.converged ? "true" : "false")
              << ", grad_norm: " << fairdice::format_double_12(result.grad_norm)
              << ", iterations: " << result.iterations_used << ")\n";

    const std::vector<bool> sym = fairdice::check_symmetry(result.dice, 1e-6);
    std::cout << "symmetry (tol 1e-6):";
    for (std::size_t k = 0; k < sym.size(); ++k)
        std::cout << " die" << (k + 1) << "=" << (sym[k] ? "yes" : "no");
    std::cout << "\n";

    json payload;
    payload["manifest"] =
        make_manifest("optimize", json{{"n", n}, {"m", m}, {"starts", cfg.starts}}, opts);
    payload.update(fairdice::dice_file_json(result.dice));
    payload["result"] = fairdice::to_json(result, cfg);

    if (m == 2) {
        const fairdice::OptimalPair pair = fairdice::optimal_pair(n);
        const double d_closed = pair.d_min.to_double();
        // deviation up to swapping the two dice
        auto dev = [&](const fairdice::DieD& a, const fairdice::DieQ& b) {
            double worst = 0.0;
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(a.weights[static_cast<std::size_t>(i)] -
                                                 b.weights[static_cast<std::size_t>(i)].to_double()));
            return worst;
        };
        const double direct = std::max(dev(result.dice[0], pair.point_mass), dev(result.dice[1], pair.plateau));
        const double swapped = std::max(dev(result.dice[0], pair.plateau), dev(result.dice[1], pair.point_mass));
        const double deviation = std::min(direct, swapped);
        std::cout << "closed form D_min = " << rational_pretty(pair.d_min)
                  << "; gap = " << fairdice::format_double_12(result.d_value - d_closed)
                  << "; max weight deviation (up to swap) = " << fairdice::format_double_12(deviation)
                  << "\n";
        payload["closed_form"] = json{{"d_min", fairdice::rational_to_json(pair.d_min)},
                                      {"d_gap", result.d_value - d_closed},
                                      {"max_weight_deviation", deviation}};
    }

    json sym_json = json::array();
    for (bool s : sym) sym_json.push_back(s);
    payload["symmetric"] = sym_json;

    emit(opts, payload, fairdice::dice_csv(result.dice));
    return kExitOk;
}

int cmd_construct(int n, int m, const std::optional<fairdice::Partition>& partition,
                  const CommonOpts& opts) {
    const fairdice::ConstructionResult result = fairdice::construct_uniform_dice(n, m, partition);

    json payload;
    json params = json{{"n", n}, {"m", m}};
    if (partition) params["partition"] = *partition;
    payload["manifest"] = make_manifest("construct", params, opts);

    if (!result.possible()) {
        std::cout << "impossible: " << result.reason << "\n";
        payload["result"] = fairdice::to_json(result);
        emit(opts, payload, "");
        return kExitImpossible;
    }

    std::cout << "uniform-sum dice (negative weights allowed), n = " << n << ", m = " << m << ":\n";
    for (std::size_t k = 0; k < result.dice.size(); ++k) {
        std::cout << "  die " << (k + 1) << " (roots";
        for (int kk : result.partition[k]) std::cout << " " << kk;
        std::cout << "): " << weights_pretty(result.dice[k]) << "\n";
    }
    std::cout << "max uniform error = " << fairdice::format_double_12(result.max_uniform_error)
              << "\n";

    payload.update(fairdice::dice_file_json(result.dice, /*allow_negative=*/true));
    payload["result"] = fairdice::to_json(result);
    emit(opts, payload, fairdice::dice_csv(result.dice));
    return kExitOk;
}

template <class S>
int distance_report(const std::vector<fairdice::Die<S>>& dice, const CommonOpts& opts,
                    json manifest, const json& dice_echo) {
    const auto dist = fairdice::convolve(dice);
    const S d = fairdice::distance_to_uniform(dist);
    const S ss = fairdice::sum_of_squares(dist);

    std::cout << "m = " << dist.m << ", n = " << dist.n
              << ", uniform value = 1/" << dist.support_size() << "\n";
    std::cout << "sum profile:\n";
    print_profile(dist);
    if constexpr (fairdice::scalar_traits<S>::exact) {
        std::cout << "D = " << rational_pretty(d) << "\n";
        std::cout << "sum of squares = " << rational_pretty(ss) << "\n";
    } else {
        std::cout << "D = " << fairdice::format_double_12(d) << "\n";
        std::cout << "sum of squares = " << fairdice::format_double_12(ss) << "\n";
    }

    json payload;
    payload["manifest"] = std::move(manifest);
    payload.update(dice_echo);
    payload["distribution"] = fairdice::to_json(dist);
    if constexpr (fairdice::scalar_traits<S>::exact) {
        payload["d_value"] = fairdice::rational_to_json(d);
        payload["d_value_decimal"] = d.to_double();
        payload["sum_of_squares"] = fairdice::rational_to_json(ss);
    } else {
        payload["d_value"] = fairdice::scalar_traits<S>::to_double(d);
        payload["sum_of_squares"] = fairdice::scalar_traits<S>::to_double(ss);
    }
    emit(opts, payload, fairdice::sum_distribution_csv(dist));
    return kExitOk;
}

int cmd_distance(const std::string& dice_path, CommonOpts opts) {
    std::ifstream in(dice_path);
    if (!in) {
        std::cerr << "error: cannot open dice file: " << dice_path << "\n";
        return kExitUsage;
    }
    json j;
    in >> j;
    const fairdice::DiceFile file = fairdice::read_dice_file(j);

    opts.mode = file.is_rational ? "rational" : "float";
    json manifest = make_manifest("distance", json{{"dice", dice_path}}, opts);
    if (file.is_rational)
        return distance_report(file.rational_dice, opts, std::move(manifest),
                               fairdice::dice_file_json(file.rational_dice, file.allow_negative));
    return distance_report(file.float_dice, opts, std::move(manifest),
                           fairdice::dice_file_json(file.float_dice, file.allow_negative));
}

fairdice::Partition parse_partition(const std::string& text) {
    fairdice::Partition partition;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<int> indices;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            try {
                indices.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw fairdice::InvalidInput("partition: cannot parse root index '" + item + "'");
            }
        }
        partition.push_back(std::move(indices));
    }
    return partition;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted n-sided dice: closest-to-uniform sum distributions"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    CommonOpts opts;
    app.add_option("--json", opts.json_path, "write a JSON report to this path")->capture_default_str();
    app.add_option("--csv", opts.csv_path, "write CSV data to this path");
    app.add_option("--seed", opts.seed, "RNG seed")->envname("FAIRDICE_SEED");
    app.add_option("--mode", opts.mode, "scalar mode for emitted dice")
        ->check(CLI::IsMember({"rational", "float"}))
        ->default_str("rational");
    app.add_flag("--no-timestamp", opts.no_timestamp, "omit the timestamp from JSON output");

    int n = 6;
    int m = 2;
    fairdice::OptimizerConfig cfg;
    std::string dice_path;
    std::string partition_text;

    CLI::App* optimal = app.add_subcommand("optimal", "closed-form optimal pair for two dice");
    optimal->add_option("--n", n, "side count")->required();

    CLI::App* optimize = app.add_subcommand("optimize", "multi-start projected gradient descent");
    optimize->add_option("--n", n, "side count")->required();
    optimize->add_option("--m", m, "dice count")->required();
    optimize->add_option("--starts", cfg.starts, "random restarts");
    optimize->add_option("--max-iters", cfg.max_iters, "iteration cap per start");
    optimize->add_option("--step", cfg.step, "initial step size");
    optimize->add_option("--armijo-beta", cfg.armijo_beta, "backtracking factor");
    optimize->add_option("--armijo-c", cfg.armijo_c, "sufficient decrease constant");
    optimize->add_option("--grad-tol", cfg.grad_tol, "projected-gradient stopping threshold");
    optimize->add_option("--threads", cfg.threads, "worker threads (0 = auto)");

    CLI::App* construct = app.add_subcommand("construct", "negative-weight dice with uniform sums");
    construct->add_option("--n", n, "side count")->required();
    construct->add_option("--m", m, "dice count")->required();
    construct->add_option("--partition", partition_text,
                          "explicit root partition, e.g. '1,2;3,4' (default: round robin)");

    CLI::App* distance = app.add_subcommand("distance", "sum profile and D for dice from a JSON file");
    distance->add_option("--dice", dice_path, "dice file (JSON)")->required();

    CLI::App* conjecture = app.add_subcommand("conjecture", "conjectured optimal m-dice family");
    conjecture->add_option("--n", n, "side count")->required();
    conjecture->add_option("--m", m, "dice count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        cfg.seed = opts.seed;
        if (optimal->parsed()) return cmd_optimal(n, opts);
        if (optimize->parsed()) return cmd_optimize(n, m, cfg, opts);
        if (construct->parsed()) {
            std::optional<fairdice::Partition> partition;
            if (!partition_text.empty()) partition = parse_partition(partition_text);
            return cmd_construct(n, m, partition, opts);
        }
        if (distance->parsed()) return cmd_distance(dice_path, opts);
        if (conjecture->parsed()) return cmd_conjecture(n, m, opts);
    } catch (const fairdice::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
