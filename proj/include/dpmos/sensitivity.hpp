#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpmos {

template <class D, class C>
struct UtilityFunction {
    std::string name;
    std::function<double(const D&, const C&)> eval;

    double operator()(const D& x, const C& r) const { return eval(x, r); }
};

enum class SensitivityKind { global_constant, local };

template <class D, class C>
struct SensitivityFunction {
    SensitivityKind kind = SensitivityKind::local;
    std::optional<double> global;
    std::function<double(const D&, std::size_t, const C&)> eval;

    double operator()(const D& x, std::size_t t, const C& r) const { return eval(x, t, r); }
};

template <class D, class C>
SensitivityFunction<D, C> global_constant_sensitivity(double delta_u) {
    if (!(delta_u >= 0) || !std::isfinite(delta_u))
        throw std::invalid_argument("global sensitivity must be a finite nonnegative number");
    return {SensitivityKind::global_constant, delta_u,
            [delta_u](const D&, std::size_t, const C&) { return delta_u; }};
}

enum class NeighborKind { record_add_remove, edge_add_remove };

// Datasets are compared with operator< for deduplication, so D must be totally
// ordered with equal datasets comparing equivalent.
template <class D>
struct NeighborRelation {
    NeighborKind kind;
    std::function<std::vector<D>(const D&)> neighbors;
    std::function<std::size_t(const D&, const D&)> distance;
};

class EnumerationBudgetExceeded : public std::runtime_error {
public:
    explicit EnumerationBudgetExceeded(std::size_t budget)
        : std::runtime_error("enumeration budget of " + std::to_string(budget) +
                             " datasets exceeded") {}
};

inline constexpr std::size_t default_enumeration_budget = 100000;

namespace detail {

template <class D>
class Enumerator {
public:
    Enumerator(const NeighborRelation<D>& nb, std::size_t budget) : nb_(nb), budget_(budget) {}

    std::vector<D> neighbors(const D& x) {
        auto out = nb_.neighbors(x);
        explored_ += out.size();
        if (explored_ > budget_) throw EnumerationBudgetExceeded(budget_);
        return out;
    }

    std::vector<D> ball(const D& x, std::size_t t) {
        std::set<D> seen{x};
        std::vector<D> frontier{x};
        for (std::size_t step = 0; step < t && !frontier.empty(); ++step) {
            std::vector<D> next;
            for (const auto& y : frontier)
                for (auto& z : neighbors(y))
                    if (seen.insert(z).second) next.push_back(std::move(z));
            frontier = std::move(next);
        }
        return {seen.begin(), seen.end()};
    }

private:
    const NeighborRelation<D>& nb_;
    std::size_t budget_;
    std::size_t explored_ = 0;
};

}  // namespace detail

// Exhaustive element local sensitivity at distance t. Test oracle only.
template <class D, class C>
double brute_force_element_local_sensitivity(const UtilityFunction<D, C>& u, const D& x, std::size_t t,
                                             const C& r, const NeighborRelation<D>& nb,
                                             std::size_t budget = default_enumeration_budget) {
    detail::Enumerator<D> en(nb, budget);
    double best = 0;
    for (const auto& y : en.ball(x, t)) {
        const double uy = u(y, r);
        for (const auto& z : en.neighbors(y)) best = std::max(best, std::abs(uy - u(z, r)));
    }
    return best;
}

struct AdmissibilityViolation {
    int condition = 0;  // 1: δ(x,0,r) < LS(x,0,r); 2: δ(x,t+1,r) < δ(y,t,r)
    std::size_t instance = 0;
    std::size_t candidate = 0;
    std::size_t t = 0;
    double bound = 0;     // δ value under test
    double required = 0;  // value it had to dominate
};

struct AdmissibilityReport {
    std::vector<AdmissibilityViolation> violations;
    std::size_t checks = 0;
    bool passed() const { return violations.empty(); }
};

// Violations are reported when the bound falls short by more than a relative
// tolerance, which absorbs rounding in floating-point utilities.
template <class D, class C>
AdmissibilityReport check_admissibility(const SensitivityFunction<D, C>& delta, const UtilityFunction<D, C>& u,
                                        const std::vector<std::pair<D, std::vector<C>>>& instances,
                                        std::size_t t_max, const NeighborRelation<D>& nb,
                                        double tolerance = 1e-12,
                                        std::size_t budget = default_enumeration_budget) {
    AdmissibilityReport report;
    auto short_of = [tolerance](double bound, double required) {
        return bound < required - tolerance * std::max(1.0, std::abs(required));
    };
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& [x, candidates] = instances[i];
        detail::Enumerator<D> en(nb, budget);
        const auto ys = en.neighbors(x);
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            const C& r = candidates[c];
            const double ux = u(x, r);
            double ls = 0;
            for (const auto& y : ys) ls = std::max(ls, std::abs(ux - u(y, r)));
            const double d0 = delta(x, 0, r);
            ++report.checks;
            if (d0 < 0 || short_of(d0, ls)) report.violations.push_back({1, i, c, 0, d0, ls});
            for (std::size_t t = 0; t < t_max; ++t) {
                const double dx = delta(x, t + 1, r);
                for (const auto& y : ys) {
                    const double dy = delta(y, t, r);
                    ++report.checks;
                    if (short_of(dx, dy)) report.violations.push_back({2, i, c, t, dx, dy});
                }
            }
        }
    }
    return report;
}

template <class D, class C>
AdmissibilityReport check_admissibility(const SensitivityFunction<D, C>& delta, const UtilityFunction<D, C>& u,
                                        const std::vector<std::pair<D, C>>& instances, std::size_t t_max,
                                        const NeighborRelation<D>& nb, double tolerance = 1e-12,
                                        std::size_t budget = default_enumeration_budget) {
    std::vector<std::pair<D, std::vector<C>>> grouped;
    grouped.reserve(instances.size());
    for (const auto& [x, r] : instances) grouped.push_back({x, {r}});
    return check_admissibility(delta, u, grouped, t_max, nb, tolerance, budget);
}

}  // namespace dpmos
