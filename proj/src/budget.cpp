#include "dpmos/budget.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dpmos {

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
    if (!(epsilon > 0) || !std::isfinite(epsilon))
        throw std::invalid_argument("privacy budget must be a positive finite number, got " +
                                    std::to_string(epsilon));
}

PrivacyBudget split_budget(PrivacyBudget total, std::size_t calls) {
    if (calls == 0) throw std::invalid_argument("split_budget: calls must be at least 1");
    return PrivacyBudget(total.epsilon() / static_cast<double>(calls));
}

BudgetLedger::BudgetLedger(PrivacyBudget total, std::size_t planned_calls)
    : total_(total), per_call_(split_budget(total, planned_calls)), planned_(planned_calls) {}

double BudgetLedger::charge() {
    if (used_ >= planned_)
        throw std::logic_error("budget ledger: more mechanism calls than planned (" +
                               std::to_string(planned_) + ")");
    ++used_;
    return per_call_.epsilon();
}

std::uint64_t BudgetLedger::spent_numerator() const {
    const auto g = std::gcd(used_, planned_);
    return g == 0 ? 0 : used_ / g;
}

std::uint64_t BudgetLedger::spent_denominator() const {
    const auto g = std::gcd(used_, planned_);
    return g == 0 ? 1 : planned_ / g;
}

}  // namespace dpmos
