#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dpmos/mechanisms.hpp"
#include "dpmos/objective.hpp"
#include "dpmos/random.hpp"
#include "dpmos/sensitivity.hpp"

namespace dpmos {

// Weak dominance: a ⪰ b iff a_i >= b_i for every objective.
bool dominates(std::span<const double> a, std::span<const double> b);

// values[i][r]: objective i at candidate r
using UtilityMatrix = std::vector<std::vector<double>>;

UtilityMatrix utility_matrix(const std::vector<Objective>& objectives);
std::vector<double> candidate_vector(const UtilityMatrix& u, std::size_t r);

// PS(r) = -|{r' != r : r' ⪰ r}|. Two objectives use an O(n log n) sweep,
// otherwise the pairwise count.
std::vector<long> pareto_scores(const UtilityMatrix& u);

struct ParetoScoreTable {
    std::vector<long> score;
    std::vector<std::vector<std::size_t>> dom;   // candidates dominating r
    std::vector<std::vector<std::size_t>> ndom;  // the rest of R \ {r}
};

ParetoScoreTable pareto_score_table(const UtilityMatrix& u);

inline std::size_t pareto_global_sensitivity(std::size_t candidates) {
    return candidates == 0 ? 0 : candidates - 1;
}

// δ^PS over a fixed candidate pool. Prefix sums of the component
// sensitivities are accumulated in order j = 0..t and cached.
class ParetoSensitivity {
public:
    explicit ParetoSensitivity(const std::vector<Objective>& objectives);

    // direct evaluation of |dom⁻| + |ndom⁺|
    long operator()(std::size_t t, std::size_t r);

    // δ^PS(t, r) for all candidates, written to out
    void level(std::size_t t, std::span<double> out);

    std::size_t size() const { return n_; }

private:
    const std::vector<double>& prefix(std::size_t i, std::size_t t);

    std::vector<Objective> obj_;
    std::size_t n_;
    std::size_t m_;
    std::vector<std::vector<std::vector<double>>> sums_;  // [i][t][r]
};

std::size_t privpareto_global(const std::vector<Objective>& objectives, GlobalMechanism mech, double epsilon,
                              RandomSource& rng);
std::size_t privpareto_local(const std::vector<Objective>& objectives, double epsilon, RandomSource& rng,
                             std::size_t window = 0);
std::vector<double> privpareto_local_log_weights(const std::vector<Objective>& objectives, double epsilon,
                                                std::size_t window = 0);

// Dataset-level problem with m utilities over candidates C.
template <class D, class C>
struct MultiObjectiveProblem {
    const D& dataset;
    std::vector<C> candidates;
    std::vector<UtilityFunction<D, C>> utilities;
    std::vector<SensitivityFunction<D, C>> sensitivities;
    PrivacyBudget budget;

    std::vector<Objective> bind() const {
        if (utilities.empty() || utilities.size() != sensitivities.size())
            throw std::invalid_argument("problem needs m >= 1 utilities with aligned sensitivities");
        if (candidates.empty()) throw std::invalid_argument("problem has no candidates");
        std::vector<Objective> out;
        for (std::size_t i = 0; i < utilities.size(); ++i) {
            Objective o;
            for (const auto& r : candidates) o.values.push_back(utilities[i](dataset, r));
            const auto& s = sensitivities[i];
            o.local = [this, &s](std::size_t t, std::size_t r) { return s(dataset, t, candidates[r]); };
            o.global = s.global.value_or(0.0);
            out.push_back(std::move(o));
        }
        return out;
    }
};

template <class D, class C>
C privpareto_global(const MultiObjectiveProblem<D, C>& p, GlobalMechanism mech, RandomSource& rng) {
    return p.candidates[privpareto_global(p.bind(), mech, p.budget.epsilon(), rng)];
}

template <class D, class C>
C privpareto_local(const MultiObjectiveProblem<D, C>& p, RandomSource& rng) {
    return p.candidates[privpareto_local(p.bind(), p.budget.epsilon(), rng)];
}

// PS and δ^PS as dataset-level functions of a candidate index into a fixed
// candidate list, so they can go through check_admissibility.
template <class D, class C>
UtilityFunction<D, std::size_t> pareto_score_utility(std::vector<UtilityFunction<D, C>> utilities,
                                                    std::vector<C> candidates) {
    return {"pareto_score", [utilities, candidates](const D& x, const std::size_t& r) {
                UtilityMatrix u(utilities.size());
                for (std::size_t i = 0; i < utilities.size(); ++i)
                    for (const auto& c : candidates) u[i].push_back(utilities[i](x, c));
                return static_cast<double>(pareto_scores(u)[r]);
            }};
}

template <class D, class C>
SensitivityFunction<D, std::size_t> delta_ps_sensitivity(std::vector<UtilityFunction<D, C>> utilities,
                                                        std::vector<SensitivityFunction<D, C>> sensitivities,
                                                        std::vector<C> candidates) {
    SensitivityFunction<D, std::size_t> f;
    f.kind = SensitivityKind::local;
    f.global = static_cast<double>(pareto_global_sensitivity(candidates.size()));
    f.eval = [utilities, sensitivities, candidates](const D& x, std::size_t t, const std::size_t& r) {
        MultiObjectiveProblem<D, C> p{x, candidates, utilities, sensitivities, PrivacyBudget(1.0)};
        const auto objectives = p.bind();
        ParetoSensitivity ps(objectives);
        return static_cast<double>(ps(t, r));
    };
    return f;
}

}  // namespace dpmos
