#include "dpmos/selection.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "dpmos/aggregate.hpp"
#include "dpmos/pareto.hpp"

namespace dpmos {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::pareto_local: return "pareto_local";
        case Variant::pareto_global: return "pareto_global";
        case Variant::agg_local: return "agg_local";
        case Variant::agg_global: return "agg_global";
    }
    return "?";
}

Variant parse_variant(const std::string& name) {
    for (auto v : {Variant::pareto_local, Variant::pareto_global, Variant::agg_local, Variant::agg_global})
        if (to_string(v) == name) return v;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

std::size_t private_select(const std::vector<Objective>& objectives, const SelectorOptions& options, double epsilon,
                           RandomSource& rng) {
    switch (options.variant) {
        case Variant::pareto_local: return privpareto_local(objectives, epsilon, rng);
        case Variant::pareto_global: return privpareto_global(objectives, options.mechanism, epsilon, rng);
        case Variant::agg_local: return privagg_local(objectives, options.weights, epsilon, rng);
        case Variant::agg_global: return privagg_global(objectives, options.weights, options.mechanism, epsilon, rng);
    }
    throw std::invalid_argument("unknown variant");
}

std::vector<double> selection_scores(const std::vector<Objective>& objectives, const SelectorOptions& options) {
    validate_objectives(objectives);
    if (is_pareto(options.variant)) {
        const auto ps = pareto_scores(utility_matrix(objectives));
        return {ps.begin(), ps.end()};
    }
    return aggregate_objective(objectives, options.weights).values;
}

std::size_t nonprivate_select(const std::vector<Objective>& objectives, const SelectorOptions& options, TieBreak ties,
                              RandomSource* rng) {
    const auto score = selection_scores(objectives, options);
    const double best = *std::max_element(score.begin(), score.end());
    if (ties == TieBreak::first)
        return static_cast<std::size_t>(std::find(score.begin(), score.end(), best) - score.begin());
    if (!rng) throw std::invalid_argument("random tie-breaking needs a random source");
    std::vector<double> logw(score.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < score.size(); ++r)
        if (score[r] == best) logw[r] = 0;
    return sample_log_weights(logw, *rng);
}

double metric_C(const std::vector<std::vector<double>>& x1, const std::vector<std::vector<double>>& x2,
                Dominance mode) {
    if (x2.empty()) throw std::invalid_argument("metric_C: second set is empty");
    std::size_t covered = 0;
    for (const auto& b : x2) {
        const bool hit = std::any_of(x1.begin(), x1.end(), [&](const std::vector<double>& a) {
            if (!dominates(a, b)) return false;
            return mode == Dominance::weak || a != b;
        });
        covered += hit;
    }
    return static_cast<double>(covered) / static_cast<double>(x2.size());
}

}  // namespace dpmos
