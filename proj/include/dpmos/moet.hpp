#pragma once

#include <cstddef>
#include <vector>

#include "dpmos/dtree.hpp"
#include "dpmos/objective.hpp"
#include "dpmos/random.hpp"
#include "dpmos/selection.hpp"
#include "dpmos/tabular.hpp"

namespace dpmos {

struct EvolutionConfig {
    std::size_t p = 30;  // population size
    std::size_t s = 3;   // selection size
    std::size_t k = 3;   // iterations
    std::size_t d = 4;   // initial depth
    std::size_t d_max = 10;
    std::size_t o = 3;  // output size

    void validate() const;
    std::size_t selection_calls() const { return k * s + o; }
};

struct MoetResult {
    std::vector<DecisionTree> trees;
    std::vector<std::vector<double>> utilities;  // (TPR, TNR) per output tree
    std::vector<std::size_t> population_trace;   // p, then s and s+p per iteration, then o
    std::size_t calls = 0;
    double per_call_epsilon = 0;
};

// (TPR, TNR) objectives over a list of trees with cached confusion counts.
std::vector<Objective> tree_objectives(const std::vector<ConfusionCounts>& counts);

// Evolution draws come from `evolution`, selection draws from `selection`, so
// a private and a non-private run can share the evolutionary stream.
MoetResult dp_moet(const TabularDataset& x, const EvolutionConfig& config, double epsilon,
                   const SelectorOptions& options, RandomSource& evolution, RandomSource& selection);

// Selection replaced by the exact argmax of the variant's score, ties broken
// uniformly at random from `selection`.
MoetResult nodp_moet(const TabularDataset& x, const EvolutionConfig& config, const SelectorOptions& options,
                     RandomSource& evolution, RandomSource& selection);

}  // namespace dpmos
