#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fairdice/closed_form.hpp"
#include "fairdice/dice.hpp"
#include "fairdice/negative_uniform.hpp"
#include "fairdice/optimizer.hpp"

namespace fairdice {

using json = nlohmann::ordered_json;

// Shortest decimal string that round-trips the double.
std::string format_double(double x);
// Fixed 12 significant digits, for human-facing output.
std::string format_double_12(double x);

json rational_to_json(const Rational& r);  // {"num": "...", "den": "..."}
// Accepts {"num","den"} objects, "a/b" strings, and integers.
Rational rational_from_json(const json& j);

json to_json(const DieQ& die);
json to_json(const DieD& die);
json to_json(const SumDistribution<Rational>& dist);
json to_json(const SumDistribution<double>& dist);
json to_json(const OptimalPair& pair);
json to_json(const ConstructionResult& result);
json to_json(const OptimizationResult& result, const OptimizerConfig& cfg);

// Dice file: {"n": int, "dice": [[w...], ...], "mode": "rational"|"float",
// "allow_negative": bool}. Rational weights travel as "num/den" strings.
// One scalar mode per file.
struct DiceFile {
    bool is_rational = true;
    bool allow_negative = false;
    int n = 0;
    std::vector<DieQ> rational_dice;  // filled when is_rational
    std::vector<DieD> float_dice;     // filled otherwise
};

DiceFile read_dice_file(const json& j);
json dice_file_json(const std::vector<DieQ>& dice, bool allow_negative = false);
json dice_file_json(const std::vector<DieD>& dice, bool allow_negative = false);

// CSV with header "j,c_j", one row per sum, decimal values.
std::string sum_distribution_csv(const SumDistribution<Rational>& dist);
std::string sum_distribution_csv(const SumDistribution<double>& dist);
// CSV with header "die,side,weight".
std::string dice_csv(const std::vector<DieD>& dice);
std::string dice_csv(const std::vector<DieQ>& dice);

}  // namespace fairdice
