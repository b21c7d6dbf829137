#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dpmos/mechanisms.hpp"
#include "dpmos/objective.hpp"
#include "dpmos/pareto.hpp"
#include "dpmos/random.hpp"
#include "dpmos/sensitivity.hpp"

namespace dpmos {

template <class D, class C>
SensitivityFunction<D, C> scale_sensitivity(SensitivityFunction<D, C> delta, double c) {
    const double k = std::abs(c);
    SensitivityFunction<D, C> out;
    out.kind = delta.kind;
    if (delta.global) out.global = k * *delta.global;
    out.eval = [f = std::move(delta.eval), k](const D& x, std::size_t t, const C& r) { return k * f(x, t, r); };
    return out;
}

template <class D, class C>
SensitivityFunction<D, C> sum_sensitivities(std::vector<SensitivityFunction<D, C>> deltas) {
    if (deltas.empty()) throw std::invalid_argument("sum_sensitivities: empty list");
    SensitivityFunction<D, C> out;
    out.kind = SensitivityKind::global_constant;
    double g = 0;
    bool all_global = true;
    for (const auto& d : deltas) {
        if (d.kind != SensitivityKind::global_constant) out.kind = SensitivityKind::local;
        if (d.global) g += *d.global;
        else all_global = false;
    }
    if (all_global) out.global = g;
    out.eval = [deltas = std::move(deltas)](const D& x, std::size_t t, const C& r) {
        double s = 0;
        for (const auto& d : deltas) s += d(x, t, r);
        return s;
    };
    return out;
}

template <class D, class C>
SensitivityFunction<D, C> aggregate_sensitivity(const std::vector<SensitivityFunction<D, C>>& deltas,
                                                const std::vector<double>& w) {
    if (deltas.size() != w.size()) throw std::invalid_argument("aggregate_sensitivity: length mismatch");
    std::vector<SensitivityFunction<D, C>> scaled;
    for (std::size_t i = 0; i < w.size(); ++i) scaled.push_back(scale_sensitivity(deltas[i], w[i]));
    return sum_sensitivities(std::move(scaled));
}

template <class D, class C>
UtilityFunction<D, C> aggregate_utility(std::vector<UtilityFunction<D, C>> utilities, std::vector<double> w) {
    if (utilities.size() != w.size() || w.empty())
        throw std::invalid_argument("aggregate_utility: length mismatch");
    return {"aggregate", [utilities = std::move(utilities), w = std::move(w)](const D& x, const C& r) {
                double s = 0;
                for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * utilities[i](x, r);
                return s;
            }};
}

double aggregate_global_bound(const std::vector<double>& deltas_global, const std::vector<double>& w);

// u_agg and δ^agg over bound objectives.
Objective aggregate_objective(const std::vector<Objective>& objectives, const std::vector<double>& w);

std::size_t privagg_global(const std::vector<Objective>& objectives, const std::vector<double>& w,
                           GlobalMechanism mech, double epsilon, RandomSource& rng);
std::size_t privagg_local(const std::vector<Objective>& objectives, const std::vector<double>& w, double epsilon,
                          RandomSource& rng, std::size_t window = 0);
std::vector<double> privagg_local_log_weights(const std::vector<Objective>& objectives, const std::vector<double>& w,
                                             double epsilon, std::size_t window = 0);

template <class D, class C>
C privagg_global(const MultiObjectiveProblem<D, C>& p, const std::vector<double>& w, GlobalMechanism mech,
                 RandomSource& rng) {
    return p.candidates[privagg_global(p.bind(), w, mech, p.budget.epsilon(), rng)];
}

template <class D, class C>
C privagg_local(const MultiObjectiveProblem<D, C>& p, const std::vector<double>& w, RandomSource& rng) {
    return p.candidates[privagg_local(p.bind(), w, p.budget.epsilon(), rng)];
}

}  // namespace dpmos
