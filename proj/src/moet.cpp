#include "dpmos/moet.hpp"

#include <functional>
#include <stdexcept>
#include <string>

#include "dpmos/budget.hpp"

namespace dpmos {

void EvolutionConfig::validate() const {
    auto fail = [](const std::string& m) { throw std::invalid_argument("evolution config: " + m); };
    if (p < 2 || p % 2 != 0) fail("population size p must be even and at least 2");
    if (k > 0 && s == 0) fail("selection size s must be positive");
    if (s > p) fail("selection size s must not exceed p");
    if (d > d_max) fail("initial depth d must not exceed d_max");
    if (o == 0) fail("output size o must be positive");
    if (o > (k > 0 ? s + p : p)) fail("output size o exceeds the final population");
}

std::vector<Objective> tree_objectives(const std::vector<ConfusionCounts>& counts) {
    Objective t, n;
    for (const auto& c : counts) {
        t.values.push_back(tpr(c));
        n.values.push_back(tnr(c));
    }
    t.local = [counts](std::size_t step, std::size_t r) { return delta_tpr(counts[r], step); };
    n.local = [counts](std::size_t step, std::size_t r) { return delta_tnr(counts[r], step); };
    t.global = n.global = 1.0;
    return {t, n};
}

namespace {

struct Member {
    DecisionTree tree;
    ConfusionCounts counts;
};

using Selector = std::function<std::size_t(const std::vector<Objective>&)>;

std::vector<Member> select_members(std::vector<Member> pool, std::size_t count, const Selector& select) {
    std::vector<Member> chosen;
    for (std::size_t c = 0; c < count; ++c) {
        std::vector<ConfusionCounts> counts;
        for (const auto& m : pool) counts.push_back(m.counts);
        const std::size_t i = select(tree_objectives(counts));
        chosen.push_back(std::move(pool[i]));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return chosen;
}

MoetResult run_moet(const TabularDataset& x, const EvolutionConfig& cfg, RandomSource& evo, const Selector& select) {
    cfg.validate();
    const Schema& schema = x.schema();
    auto make = [&](DecisionTree t) {
        auto c = confusion(x, t);
        return Member{std::move(t), c};
    };
    MoetResult res;
    std::vector<Member> population;
    for (std::size_t i = 0; i < cfg.p; ++i) population.push_back(make(random_tree(cfg.d, schema, evo)));
    res.population_trace.push_back(population.size());

    for (std::size_t it = 0; it < cfg.k; ++it) {
        population = select_members(std::move(population), cfg.s, select);
        res.population_trace.push_back(population.size());
        for (std::size_t j = 0; j < cfg.p / 2; ++j) {
            const auto& a = population[evo.index(population.size())].tree;
            const auto& b = population[evo.index(population.size())].tree;
            auto [c1, c2] = crossover(a, b, evo);
            c1 = prune(mutate(c1, cfg.d_max, schema, evo), cfg.d_max, evo);
            c2 = prune(mutate(c2, cfg.d_max, schema, evo), cfg.d_max, evo);
            population.push_back(make(std::move(c1)));
            population.push_back(make(std::move(c2)));
        }
        res.population_trace.push_back(population.size());
    }

    auto out = select_members(std::move(population), cfg.o, select);
    res.population_trace.push_back(out.size());
    for (auto& m : out) {
        res.utilities.push_back({tpr(m.counts), tnr(m.counts)});
        res.trees.push_back(std::move(m.tree));
    }
    return res;
}

}  // namespace

MoetResult dp_moet(const TabularDataset& x, const EvolutionConfig& config, double epsilon,
                   const SelectorOptions& options, RandomSource& evolution, RandomSource& selection) {
    config.validate();
    BudgetLedger ledger(PrivacyBudget(epsilon), config.selection_calls());
    auto res = run_moet(x, config, evolution, [&](const std::vector<Objective>& objs) {
        return private_select(objs, options, ledger.charge(), selection);
    });
    if (!ledger.exhausted()) throw std::logic_error("dp_moet: budget ledger not fully spent");
    res.calls = ledger.used();
    res.per_call_epsilon = ledger.per_call().epsilon();
    return res;
}

MoetResult nodp_moet(const TabularDataset& x, const EvolutionConfig& config, const SelectorOptions& options,
                     RandomSource& evolution, RandomSource& selection) {
    std::size_t calls = 0;
    auto res = run_moet(x, config, evolution, [&](const std::vector<Objective>& objs) {
        ++calls;
        return nonprivate_select(objs, options, TieBreak::random, &selection);
    });
    res.calls = calls;
    return res;
}

}  // namespace dpmos
