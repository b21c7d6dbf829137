#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <span>
#include <string>
#include <vector>

#include "dpmos/budget.hpp"
#include "dpmos/random.hpp"
#include "dpmos/sensitivity.hpp"

namespace dpmos {

enum class Noise { laplace, exponential, gumbel };

enum class GlobalMechanism { exponential, permute_and_flip, rnm_laplace, rnm_exponential, rnm_gumbel };

std::string to_string(GlobalMechanism m);
GlobalMechanism parse_global_mechanism(const std::string& name);

// Samples index i with probability proportional to exp(log_weights[i]).
// +inf entries win uniformly among themselves; all -inf falls back to uniform.
// Always consumes exactly one uniform draw.
std::size_t sample_log_weights(std::span<const double> log_weights, RandomSource& rng);

std::vector<double> normalized_probabilities(std::span<const double> log_weights);

// Global-sensitivity mechanisms over a vector of candidate utilities.
// delta_u == 0 is accepted only when every utility is equal (uniform output).
std::vector<double> exponential_log_weights(std::span<const double> u, double delta_u, double epsilon);
std::vector<double> exponential_probabilities(std::span<const double> u, double delta_u, double epsilon);
std::size_t exponential_mechanism(std::span<const double> u, double delta_u, double epsilon, RandomSource& rng);
std::size_t permute_and_flip(std::span<const double> u, double delta_u, double epsilon, RandomSource& rng);
std::size_t report_noisy_max(std::span<const double> u, double delta_u, double epsilon, Noise noise,
                             RandomSource& rng);
std::size_t run_global_mechanism(GlobalMechanism m, std::span<const double> u, double delta_u, double epsilon,
                                 RandomSource& rng);

// δ(t) for one candidate.
using SensitivitySequence = std::function<double(std::size_t)>;

// Piecewise-linear dampening of a utility value over knots
// b(0) = 0, b(i) = δ(0) + ... + δ(i-1), b(-i) = -b(i).
class DampeningFunction {
public:
    DampeningFunction(SensitivitySequence delta, std::size_t window);

    double knot(long long i) const;
    double operator()(double u) const;
    std::size_t window() const { return window_; }

private:
    SensitivitySequence delta_;
    std::size_t window_;
};

DampeningFunction build_dampening(SensitivitySequence delta, std::size_t window);

class DampeningWindowExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// δ(t, r) for every candidate r listed in `active`, written to out[r].
using LevelSensitivity =
    std::function<void(std::size_t t, std::span<const std::size_t> active, std::span<double> out)>;

LevelSensitivity per_candidate(std::function<double(std::size_t t, std::size_t r)> delta);

// Dampened values for all candidates, advancing every unresolved candidate one
// knot per level. Identical to evaluating DampeningFunction per candidate.
std::vector<double> dampened_values(std::span<const double> u, const LevelSensitivity& delta, std::size_t window);

std::vector<double> local_dampening_log_weights(std::span<const double> u, const LevelSensitivity& delta,
                                                double epsilon, std::size_t window);
std::size_t local_dampening(std::span<const double> u, const LevelSensitivity& delta, double epsilon,
                            std::size_t window, RandomSource& rng);

inline std::size_t default_window(std::size_t candidates) { return 10 * std::max<std::size_t>(candidates, 1); }

// Dataset-level selection problem.
template <class D, class C>
struct SelectionProblem {
    const D& dataset;
    std::vector<C> candidates;
    UtilityFunction<D, C> utility;
    SensitivityFunction<D, C> sensitivity;
    PrivacyBudget budget;

    std::vector<double> utilities() const {
        if (candidates.empty()) throw std::invalid_argument("selection problem has no candidates");
        std::vector<double> u;
        u.reserve(candidates.size());
        for (const auto& r : candidates) u.push_back(utility(dataset, r));
        return u;
    }

    double global() const {
        if (sensitivity.kind != SensitivityKind::global_constant || !sensitivity.global)
            throw std::invalid_argument("global mechanism requires a global-constant sensitivity");
        return *sensitivity.global;
    }

    LevelSensitivity level() const {
        return per_candidate([this](std::size_t t, std::size_t r) { return sensitivity(dataset, t, candidates[r]); });
    }
};

template <class D, class C>
C exponential_mechanism(const SelectionProblem<D, C>& p, RandomSource& rng) {
    const auto u = p.utilities();
    return p.candidates[exponential_mechanism(u, p.global(), p.budget.epsilon(), rng)];
}

template <class D, class C>
C permute_and_flip(const SelectionProblem<D, C>& p, RandomSource& rng) {
    const auto u = p.utilities();
    return p.candidates[permute_and_flip(u, p.global(), p.budget.epsilon(), rng)];
}

template <class D, class C>
C report_noisy_max(const SelectionProblem<D, C>& p, Noise noise, RandomSource& rng) {
    const auto u = p.utilities();
    return p.candidates[report_noisy_max(u, p.global(), p.budget.epsilon(), noise, rng)];
}

template <class D, class C>
C local_dampening(const SelectionProblem<D, C>& p, RandomSource& rng, std::size_t window = 0) {
    const auto u = p.utilities();
    if (window == 0) window = default_window(u.size());
    return p.candidates[local_dampening(u, p.level(), p.budget.epsilon(), window, rng)];
}

// Runs `mech` `samples` times on each dataset and returns the largest absolute
// log ratio of outcome frequencies, with add-one smoothing.
template <class D>
double empirical_dp_check(const std::function<std::size_t(const D&, RandomSource&)>& mech, const D& x, const D& y,
                          std::size_t outcomes, std::size_t samples, RandomSource& rng) {
    std::vector<double> cx(outcomes, 1.0), cy(outcomes, 1.0);
    for (std::size_t i = 0; i < samples; ++i) {
        cx.at(mech(x, rng)) += 1;
        cy.at(mech(y, rng)) += 1;
    }
    double worst = 0;
    for (std::size_t o = 0; o < outcomes; ++o) worst = std::max(worst, std::abs(std::log(cx[o] / cy[o])));
    return worst;
}

}  // namespace dpmos
