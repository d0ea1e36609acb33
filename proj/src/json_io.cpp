#include "fairdice/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace fairdice {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string format_double_12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

json rational_to_json(const Rational& r) {
    return json{{"num", r.num_str()}, {"den", r.den_str()}};
}

Rational rational_from_json(const json& j) {
    if (j.is_object()) {
        const json& num = j.at("num");
        const json& den = j.at("den");
        const std::string ns = num.is_string() ? num.get<std::string>() : num.dump();
        const std::string ds = den.is_string() ? den.get<std::string>() : den.dump();
        return Rational::from_string(ns) / Rational::from_string(ds);
    }
    if (j.is_string()) return Rational::from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InvalidInput("rational value must be a {num,den} object, 'a/b' string, or integer");
}

json to_json(const DieQ& die) {
    json weights = json::array();
    for (const Rational& w : die.weights) weights.push_back(rational_to_json(w));
    return json{{"n", die.n},
                {"mode", "rational"},
                {"allow_negative", die.allow_negative},
                {"weights", weights}};
}

json to_json(const DieD& die) {
    return json{{"n", die.n},
                {"mode", "float"},
                {"allow_negative", die.allow_negative},
                {"weights", die.weights}};
}

template <class S>
static json dist_to_json_impl(const SumDistribution<S>& dist, auto&& encode) {
    json c = json::array();
    for (const S& cj : dist.c) c.push_back(encode(cj));
    return json{{"m", dist.m},
                {"n", dist.n},
                {"min_sum", dist.min_sum()},
                {"max_sum", dist.max_sum()},
                {"mode", scalar_traits<S>::mode_name()},
                {"uniform_value", encode(dist.uniform_value)},
                {"c", c}};
}

json to_json(const SumDistribution<Rational>& dist) {
    return dist_to_json_impl(dist, [](const Rational& r) { return rational_to_json(r); });
}

json to_json(const SumDistribution<double>& dist) {
    return dist_to_json_impl(dist, [](double x) { return x; });
}

json to_json(const OptimalPair& pair) {
    return json{{"theorem", "thm1"},
                {"n", pair.n},
                {"point_mass_die", to_json(pair.point_mass)},
                {"plateau_die", to_json(pair.plateau)},
                {"d_min", rational_to_json(pair.d_min)},
                {"d_min_decimal", pair.d_min.to_double()}};
}

json to_json(const ConstructionResult& result) {
    if (!result.possible())
        return json{{"outcome", "impossible"}, {"reason", result.reason}};
    json dice = json::array();
    for (const DieD& d : result.dice) dice.push_back(d.weights);
    return json{{"outcome", "dice"},
                {"partition", result.partition},
                {"dice", dice},
                {"max_uniform_error", result.max_uniform_error}};
}

json to_json(const OptimizationResult& result, const OptimizerConfig& cfg) {
    json dice = json::array();
    for (const DieD& d : result.dice) dice.push_back(d.weights);
    json per_start = json::array();
    for (const StartSummary& s : result.per_start)
        per_start.push_back(json{{"start", s.start_index},
                                 {"d_value", s.d_value},
                                 {"iterations", s.iterations},
                                 {"converged", s.converged},
                                 {"grad_norm", s.grad_norm}});
    return json{{"config",
                 json{{"starts", cfg.starts},
                      {"max_iters", cfg.max_iters},
                      {"step", cfg.step},
                      {"armijo_beta", cfg.armijo_beta},
                      {"armijo_c", cfg.armijo_c},
                      {"grad_tol", cfg.grad_tol},
                      {"seed", cfg.seed},
                      {"threads", cfg.threads}}},
                {"best", json{{"dice", dice},
                              {"d_value", result.d_value},
                              {"start_index", result.best_start_index},
                              {"converged", result.converged},
                              {"grad_norm", result.grad_norm},
                              {"iterations_used", result.iterations_used}}},
                {"note", "best of " + std::to_string(cfg.starts) + " starts; not a global optimality certificate"},
                {"per_start", per_start}};
}

DiceFile read_dice_file(const json& j) {
    if (!j.is_object()) throw InvalidInput("dice file: top level must be an object");
    DiceFile file;
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw InvalidInput("dice file: missing integer field 'n'");
    file.n = j.at("n").get<int>();

    const std::string mode = j.value("mode", std::string("rational"));
    if (mode == "rational") {
        file.is_rational = true;
    } else if (mode == "float") {
        file.is_rational = false;
    } else {
        throw InvalidInput("dice file: mode must be 'rational' or 'float'");
    }
    file.allow_negative = j.value("allow_negative", false);

    if (!j.contains("dice") || !j.at("dice").is_array() || j.at("dice").empty())
        throw InvalidInput("dice file: missing nonempty 'dice' array");

    for (const json& row : j.at("dice")) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(file.n))
            throw InvalidInput("dice file: each die needs exactly n weights");
        if (file.is_rational) {
            DieQ die;
            die.n = file.n;
            die.allow_negative = file.allow_negative;
            for (const json& w : row) {
                if (w.is_number_float())
                    throw InvalidInput("dice file: rational mode weights must be exact ('a/b' strings)");
                die.weights.push_back(rational_from_json(w));
            }
            file.rational_dice.push_back(std::move(die));
        } else {
            DieD die;
            die.n = file.n;
            die.allow_negative = file.allow_negative;
            for (const json& w : row) {
                if (w.is_number()) {
                    die.weights.push_back(w.get<double>());
                } else if (w.is_string()) {
                    die.weights.push_back(Rational::from_string(w.get<std::string>()).to_double());
                } else {
                    throw InvalidInput("dice file: float mode weights must be numbers");
                }
            }
            file.float_dice.push_back(std::move(die));
        }
    }
    return file;
}

json dice_file_json(const std::vector<DieQ>& dice, bool allow_negative) {
    if (dice.empty()) throw InvalidInput("dice_file_json: empty dice list");
    json rows = json::array();
    for (const DieQ& d : dice) {
        json row = json::array();
        for (const Rational& w : d.weights) row.push_back(w.to_string());
        rows.push_back(row);
    }
    return json{{"n", dice.front().n},
                {"mode", "rational"},
                {"allow_negative", allow_negative},
                {"dice", rows}};
}

json dice_file_json(const std::vector<DieD>& dice, bool allow_negative) {
    if (dice.empty()) throw InvalidInput("dice_file_json: empty dice list");
    json rows = json::array();
    for (const DieD& d : dice) rows.push_back(d.weights);
    return json{{"n", dice.front().n},
                {"mode", "float"},
                {"allow_negative", allow_negative},
                {"dice", rows}};
}

template <class S>
static std::string dist_csv_impl(const SumDistribution<S>& dist) {
    std::ostringstream out;
    out << "j,c_j\n";
    for (int j = dist.min_sum(); j <= dist.max_sum(); ++j)
        out << j << ',' << format_double(scalar_traits<S>::to_double(dist.at_sum(j))) << '\n';
    return out.str();
}

std::string sum_distribution_csv(const SumDistribution<Rational>& dist) { return dist_csv_impl(dist); }
std::string sum_distribution_csv(const SumDistribution<double>& dist) { return dist_csv_impl(dist); }

template <class S>
static std::string dice_csv_impl(const std::vector<Die<S>>& dice) {
    std::ostringstream out;
    out << "die,side,weight\n";
    for (std::size_t k = 0; k < dice.size(); ++k)
        for (int i = 1; i <= dice[k].n; ++i)
            out << (k + 1) << ',' << i << ','
                << format_double(scalar_traits<S>::to_double(dice[k].weight(i))) << '\n';
    return out.str();
}

std::string dice_csv(const std::vector<DieD>& dice) { return dice_csv_impl(dice); }
std::string dice_csv(const std::vector<DieQ>& dice) { return dice_csv_impl(dice); }

}  // namespace fairdice
