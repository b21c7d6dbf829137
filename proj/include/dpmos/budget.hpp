#pragma once

#include <cstddef>
#include <cstdint>

namespace dpmos {

class PrivacyBudget {
public:
    explicit PrivacyBudget(double epsilon);
    double epsilon() const { return epsilon_; }

private:
    double epsilon_;
};

PrivacyBudget split_budget(PrivacyBudget total, std::size_t calls);

// Sequential-composition ledger. Spend is tracked as the exact fraction
// used/planned of the total, so a fully used ledger equals the total exactly.
class BudgetLedger {
public:
    BudgetLedger(PrivacyBudget total, std::size_t planned_calls);

    PrivacyBudget per_call() const { return per_call_; }
    PrivacyBudget total() const { return total_; }
    std::size_t planned() const { return planned_; }
    std::size_t used() const { return used_; }

    // returns the budget for one mechanism call; throws once the plan is exhausted
    double charge();

    // spent budget as numerator/denominator of the total
    std::uint64_t spent_numerator() const;
    std::uint64_t spent_denominator() const;
    bool exhausted() const { return used_ == planned_; }

private:
    PrivacyBudget total_;
    PrivacyBudget per_call_;
    std::size_t planned_;
    std::size_t used_ = 0;
};

}  // namespace dpmos
