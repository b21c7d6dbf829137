#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dpmos/random.hpp"
#include "dpmos/sensitivity.hpp"
#include "dpmos/tabular.hpp"

namespace dpmos {

// Binary tree over normalized attributes. Numeric splits send value < threshold
// left; categorical splits send value == category index left.
class DecisionTree {
public:
    struct Node {
        bool leaf = true;
        bool positive = false;
        bool categorical = false;
        std::size_t attribute = 0;
        double split = 0;
        std::unique_ptr<Node> left, right;
    };

    DecisionTree();
    DecisionTree(const DecisionTree& other);
    DecisionTree(DecisionTree&&) noexcept = default;
    DecisionTree& operator=(const DecisionTree& other);
    DecisionTree& operator=(DecisionTree&&) noexcept = default;

    static DecisionTree leaf(bool positive);
    static DecisionTree split(std::size_t attribute, double value, DecisionTree left, DecisionTree right,
                              bool categorical = false);

    const Node& root() const { return *root_; }
    std::size_t node_count() const;
    std::size_t depth() const;  // edges on the longest root-leaf path

    // nodes are indexed in preorder
    const Node& node(std::size_t i) const;
    std::size_t node_depth(std::size_t i) const;
    DecisionTree subtree(std::size_t i) const;
    DecisionTree with_subtree(std::size_t i, DecisionTree replacement) const;

    bool predict(const Record& r) const;
    void check(const Schema& schema) const;
    std::string to_string() const;

    friend bool operator==(const DecisionTree& a, const DecisionTree& b);
    friend DecisionTree prune(const DecisionTree& tree, std::size_t d_max, RandomSource& rng);

private:
    explicit DecisionTree(std::unique_ptr<Node> root) : root_(std::move(root)) {}
    std::unique_ptr<Node> root_;
};

bool predict(const DecisionTree& tree, const Record& r, const Schema& schema);

struct ConfusionCounts {
    std::size_t tp = 0, tn = 0, p = 0, n = 0;
};

ConfusionCounts confusion(const TabularDataset& x, const DecisionTree& tree);

double tpr(const ConfusionCounts& c);
double tnr(const ConfusionCounts& c);
double tpr(const TabularDataset& x, const DecisionTree& tree);
double tnr(const TabularDataset& x, const DecisionTree& tree);

// Element local sensitivity at distance t of hits/(hits+misses) under
// add/remove of one counted record, in closed form.
double rate_sensitivity(std::size_t hits, std::size_t misses, std::size_t t);

double delta_tpr(const ConfusionCounts& c, std::size_t t);
double delta_tnr(const ConfusionCounts& c, std::size_t t);
double delta_tpr(const TabularDataset& x, std::size_t t, const DecisionTree& tree);
double delta_tnr(const TabularDataset& x, std::size_t t, const DecisionTree& tree);

inline std::pair<double, double> tpr_tnr_global_sensitivity() { return {1.0, 1.0}; }

UtilityFunction<TabularDataset, DecisionTree> tpr_utility();
UtilityFunction<TabularDataset, DecisionTree> tnr_utility();
SensitivityFunction<TabularDataset, DecisionTree> delta_tpr_sensitivity();
SensitivityFunction<TabularDataset, DecisionTree> delta_tnr_sensitivity();

DecisionTree random_tree(std::size_t d, const Schema& schema, RandomSource& rng);
std::pair<DecisionTree, DecisionTree> crossover(const DecisionTree& a, const DecisionTree& b, RandomSource& rng);
DecisionTree mutate(const DecisionTree& tree, std::size_t d_max, const Schema& schema, RandomSource& rng);
DecisionTree prune(const DecisionTree& tree, std::size_t d_max, RandomSource& rng);

}  // namespace dpmos
