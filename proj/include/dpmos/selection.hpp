#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dpmos/mechanisms.hpp"
#include "dpmos/objective.hpp"
#include "dpmos/random.hpp"

namespace dpmos {

enum class Variant { pareto_local, pareto_global, agg_local, agg_global };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);
inline bool is_pareto(Variant v) { return v == Variant::pareto_local || v == Variant::pareto_global; }

struct SelectorOptions {
    Variant variant = Variant::pareto_local;
    std::vector<double> weights;  // agg variants
    GlobalMechanism mechanism = GlobalMechanism::exponential;
};

// One private multi-objective selection (PrivPareto or PrivAgg).
std::size_t private_select(const std::vector<Objective>& objectives, const SelectorOptions& options, double epsilon,
                           RandomSource& rng);

// Pareto scores or aggregate utilities, the quantity the variant maximizes.
std::vector<double> selection_scores(const std::vector<Objective>& objectives, const SelectorOptions& options);

enum class TieBreak { random, first };

// Exact argmax of selection_scores. Random tie-breaking draws one uniform from rng.
std::size_t nonprivate_select(const std::vector<Objective>& objectives, const SelectorOptions& options, TieBreak ties,
                              RandomSource* rng);

enum class Dominance { weak, strict };

// Fraction of x2 dominated by some member of x1.
double metric_C(const std::vector<std::vector<double>>& x1, const std::vector<std::vector<double>>& x2,
                Dominance mode = Dominance::weak);

}  // namespace dpmos
