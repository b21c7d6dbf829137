#include "dpmos/aggregate.hpp"

#include <algorithm>

namespace dpmos {

double aggregate_global_bound(const std::vector<double>& deltas_global, const std::vector<double>& w) {
    if (deltas_global.size() != w.size()) throw std::invalid_argument("aggregate_global_bound: length mismatch");
    double s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!(deltas_global[i] >= 0)) throw std::invalid_argument("global sensitivities must be nonnegative");
        s += std::abs(w[i]) * deltas_global[i];
    }
    return s;
}

Objective aggregate_objective(const std::vector<Objective>& objectives, const std::vector<double>& w) {
    validate_objectives(objectives);
    if (objectives.size() != w.size()) throw std::invalid_argument("weight vector length does not match objectives");
    const std::size_t n = objectives.front().values.size();
    Objective agg;
    agg.values.assign(n, 0.0);
    std::vector<double> globals;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t r = 0; r < n; ++r) agg.values[r] += w[i] * objectives[i].values[r];
        globals.push_back(objectives[i].global);
    }
    agg.global = aggregate_global_bound(globals, w);
    std::vector<std::function<double(std::size_t, std::size_t)>> locals;
    std::vector<double> absw;
    for (std::size_t i = 0; i < w.size(); ++i) {
        absw.push_back(std::abs(w[i]));
        locals.push_back(objectives[i].local);
    }
    agg.local = [locals = std::move(locals), absw = std::move(absw)](std::size_t t, std::size_t r) {
        double s = 0;
        for (std::size_t i = 0; i < absw.size(); ++i)
            if (absw[i] != 0) s += absw[i] * locals[i](t, r);
        return s;
    };
    return agg;
}

std::size_t privagg_global(const std::vector<Objective>& objectives, const std::vector<double>& w,
                           GlobalMechanism mech, double epsilon, RandomSource& rng) {
    const auto agg = aggregate_objective(objectives, w);
    return run_global_mechanism(mech, agg.values, agg.global, epsilon, rng);
}

std::vector<double> privagg_local_log_weights(const std::vector<Objective>& objectives, const std::vector<double>& w,
                                             double epsilon, std::size_t window) {
    const auto agg = aggregate_objective(objectives, w);
    for (const auto& o : objectives)
        if (!o.local) throw std::invalid_argument("privagg_local requires local sensitivities");
    if (window == 0) window = default_window(agg.values.size());
    return local_dampening_log_weights(agg.values, per_candidate(agg.local), epsilon, window);
}

std::size_t privagg_local(const std::vector<Objective>& objectives, const std::vector<double>& w, double epsilon,
                          RandomSource& rng, std::size_t window) {
    return sample_log_weights(privagg_local_log_weights(objectives, w, epsilon, window), rng);
}

}  // namespace dpmos
