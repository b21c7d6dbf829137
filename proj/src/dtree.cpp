#include "dpmos/dtree.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace dpmos {

namespace {

using Node = DecisionTree::Node;

std::unique_ptr<Node> clone(const Node& n) {
    auto c = std::make_unique<Node>();
    c->leaf = n.leaf;
    c->positive = n.positive;
    c->categorical = n.categorical;
    c->attribute = n.attribute;
    c->split = n.split;
    if (n.left) c->left = clone(*n.left);
    if (n.right) c->right = clone(*n.right);
    return c;
}

std::size_t count(const Node& n) { return n.leaf ? 1 : 1 + count(*n.left) + count(*n.right); }

std::size_t height(const Node& n) { return n.leaf ? 0 : 1 + std::max(height(*n.left), height(*n.right)); }

// preorder lookup; returns the slot holding node i and its depth
std::unique_ptr<Node>* find(std::unique_ptr<Node>& slot, std::size_t& i, std::size_t depth, std::size_t& found_depth) {
    if (i == 0) {
        found_depth = depth;
        return &slot;
    }
    --i;
    if (slot->leaf) return nullptr;
    if (auto* s = find(slot->left, i, depth + 1, found_depth)) return s;
    return find(slot->right, i, depth + 1, found_depth);
}

const Node* find_const(const Node& n, std::size_t& i, std::size_t depth, std::size_t& found_depth) {
    if (i == 0) {
        found_depth = depth;
        return &n;
    }
    --i;
    if (n.leaf) return nullptr;
    if (auto* s = find_const(*n.left, i, depth + 1, found_depth)) return s;
    return find_const(*n.right, i, depth + 1, found_depth);
}

bool equal(const Node& a, const Node& b) {
    if (a.leaf != b.leaf) return false;
    if (a.leaf) return a.positive == b.positive;
    return a.categorical == b.categorical && a.attribute == b.attribute && a.split == b.split &&
           equal(*a.left, *b.left) && equal(*a.right, *b.right);
}

void print(const Node& n, std::ostringstream& os) {
    if (n.leaf) {
        os << (n.positive ? '+' : '-');
        return;
    }
    os << '(' << 'a' << n.attribute << (n.categorical ? "==" : "<") << n.split << ' ';
    print(*n.left, os);
    os << ' ';
    print(*n.right, os);
    os << ')';
}

}  // namespace

DecisionTree::DecisionTree() : root_(std::make_unique<Node>()) {}

DecisionTree::DecisionTree(const DecisionTree& other) : root_(clone(*other.root_)) {}

DecisionTree& DecisionTree::operator=(const DecisionTree& other) {
    if (this != &other) root_ = clone(*other.root_);
    return *this;
}

DecisionTree DecisionTree::leaf(bool positive) {
    auto n = std::make_unique<Node>();
    n->positive = positive;
    return DecisionTree(std::move(n));
}

DecisionTree DecisionTree::split(std::size_t attribute, double value, DecisionTree left, DecisionTree right,
                                 bool categorical) {
    auto n = std::make_unique<Node>();
    n->leaf = false;
    n->categorical = categorical;
    n->attribute = attribute;
    n->split = value;
    n->left = std::move(left.root_);
    n->right = std::move(right.root_);
    return DecisionTree(std::move(n));
}

std::size_t DecisionTree::node_count() const { return count(*root_); }

std::size_t DecisionTree::depth() const { return height(*root_); }

const DecisionTree::Node& DecisionTree::node(std::size_t i) const {
    std::size_t d = 0;
    const Node* n = find_const(*root_, i, 0, d);
    if (!n) throw std::out_of_range("tree node index out of range");
    return *n;
}

std::size_t DecisionTree::node_depth(std::size_t i) const {
    std::size_t d = 0;
    if (!find_const(*root_, i, 0, d)) throw std::out_of_range("tree node index out of range");
    return d;
}

DecisionTree DecisionTree::subtree(std::size_t i) const { return DecisionTree(clone(node(i))); }

DecisionTree DecisionTree::with_subtree(std::size_t i, DecisionTree replacement) const {
    DecisionTree out(*this);
    std::size_t d = 0;
    auto* slot = find(out.root_, i, 0, d);
    if (!slot) throw std::out_of_range("tree node index out of range");
    *slot = std::move(replacement.root_);
    return out;
}

bool DecisionTree::predict(const Record& r) const {
    const Node* n = root_.get();
    while (!n->leaf) {
        const double v = r.values.at(n->attribute);
        const bool left = n->categorical ? v == n->split : v < n->split;
        n = left ? n->left.get() : n->right.get();
    }
    return n->positive;
}

void DecisionTree::check(const Schema& schema) const {
    std::function<void(const Node&)> walk = [&](const Node& n) {
        if (n.leaf) return;
        if (n.attribute >= schema.attributes.size()) throw std::invalid_argument("split on unknown attribute");
        const auto& a = schema.attributes[n.attribute];
        if (n.categorical != (a.kind == AttributeKind::categorical))
            throw std::invalid_argument("split kind does not match attribute '" + a.name + "'");
        if (n.categorical ? !(n.split >= 0 && n.split < static_cast<double>(a.categories.size()))
                          : !(n.split >= 0 && n.split <= 1))
            throw std::invalid_argument("split value outside the domain of attribute '" + a.name + "'");
        walk(*n.left);
        walk(*n.right);
    };
    walk(*root_);
}

std::string DecisionTree::to_string() const {
    std::ostringstream os;
    print(*root_, os);
    return os.str();
}

bool operator==(const DecisionTree& a, const DecisionTree& b) { return equal(*a.root_, *b.root_); }

bool predict(const DecisionTree& tree, const Record& r, const Schema& schema) {
    check_record(schema, r);
    tree.check(schema);
    return tree.predict(r);
}

ConfusionCounts confusion(const TabularDataset& x, const DecisionTree& tree) {
    ConfusionCounts c;
    for (const auto& r : x.records()) {
        const bool yes = tree.predict(r);
        if (r.positive) {
            ++c.p;
            c.tp += yes;
        } else {
            ++c.n;
            c.tn += !yes;
        }
    }
    return c;
}

double tpr(const ConfusionCounts& c) { return c.p == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(c.p); }
double tnr(const ConfusionCounts& c) { return c.n == 0 ? 0.0 : static_cast<double>(c.tn) / static_cast<double>(c.n); }
double tpr(const TabularDataset& x, const DecisionTree& tree) { return tpr(confusion(x, tree)); }
double tnr(const TabularDataset& x, const DecisionTree& tree) { return tnr(confusion(x, tree)); }

namespace {

// local sensitivity of a/(a+b) at distance 0
double rate_ls0(long long a, long long b) {
    const long long p = a + b;
    if (p == 0) return 1.0;
    if (p == 1) return a == 1 ? 1.0 : 0.5;
    const double pp = static_cast<double>(p);
    const double lower = pp * (pp - 1), upper = pp * (pp + 1);
    const double miss = static_cast<double>(b) / (a >= 1 ? lower : upper);
    const double hit = static_cast<double>(a) / (b >= 1 ? lower : upper);
    return std::max(miss, hit);
}

}  // namespace

// The maximum over the distance-t ball sits at the smallest reachable count
// total, at an extreme split of hits and misses.
double rate_sensitivity(std::size_t hits, std::size_t misses, std::size_t t) {
    const auto a = static_cast<long long>(hits);
    const auto p = a + static_cast<long long>(misses);
    const auto tt = static_cast<long long>(t);
    const long long smax = std::min(tt, p);
    double best = 0;
    for (long long s = smax; s >= std::max(0LL, smax - 2); --s) {
        const long long q = p - s;
        const long long slack = (tt - s) / 2;
        const long long lo = std::max(0LL, a - s - slack);
        const long long hi = std::min(q, a + slack);
        for (long long h : {lo, lo + 1, hi - 1, hi})
            if (h >= lo && h <= hi) best = std::max(best, rate_ls0(h, q - h));
    }
    return best;
}

double delta_tpr(const ConfusionCounts& c, std::size_t t) { return rate_sensitivity(c.tp, c.p - c.tp, t); }
double delta_tnr(const ConfusionCounts& c, std::size_t t) { return rate_sensitivity(c.tn, c.n - c.tn, t); }
double delta_tpr(const TabularDataset& x, std::size_t t, const DecisionTree& tree) {
    return delta_tpr(confusion(x, tree), t);
}
double delta_tnr(const TabularDataset& x, std::size_t t, const DecisionTree& tree) {
    return delta_tnr(confusion(x, tree), t);
}

UtilityFunction<TabularDataset, DecisionTree> tpr_utility() {
    return {"TPR", [](const TabularDataset& x, const DecisionTree& t) { return tpr(x, t); }};
}

UtilityFunction<TabularDataset, DecisionTree> tnr_utility() {
    return {"TNR", [](const TabularDataset& x, const DecisionTree& t) { return tnr(x, t); }};
}

SensitivityFunction<TabularDataset, DecisionTree> delta_tpr_sensitivity() {
    return {SensitivityKind::local, tpr_tnr_global_sensitivity().first,
            [](const TabularDataset& x, std::size_t t, const DecisionTree& tree) { return delta_tpr(x, t, tree); }};
}

SensitivityFunction<TabularDataset, DecisionTree> delta_tnr_sensitivity() {
    return {SensitivityKind::local, tpr_tnr_global_sensitivity().second,
            [](const TabularDataset& x, std::size_t t, const DecisionTree& tree) { return delta_tnr(x, t, tree); }};
}

DecisionTree random_tree(std::size_t d, const Schema& schema, RandomSource& rng) {
    if (schema.attributes.empty()) throw std::invalid_argument("random_tree: schema has no attributes");
    if (d == 0) return DecisionTree::leaf(rng.index(2) == 1);
    const std::size_t a = rng.index(schema.attributes.size());
    const auto& attr = schema.attributes[a];
    const bool cat = attr.kind == AttributeKind::categorical;
    const double value = cat ? static_cast<double>(rng.index(attr.categories.size())) : rng.uniform();
    auto left = random_tree(d - 1, schema, rng);
    auto right = random_tree(d - 1, schema, rng);
    return DecisionTree::split(a, value, std::move(left), std::move(right), cat);
}

std::pair<DecisionTree, DecisionTree> crossover(const DecisionTree& a, const DecisionTree& b, RandomSource& rng) {
    const std::size_t i = rng.index(a.node_count());
    const std::size_t j = rng.index(b.node_count());
    return {a.with_subtree(i, b.subtree(j)), b.with_subtree(j, a.subtree(i))};
}

// The root counts as depth 1 in the replacement-depth formula, so a node at
// zero-based depth k receives a tree of depth d_max - k.
DecisionTree mutate(const DecisionTree& tree, std::size_t d_max, const Schema& schema, RandomSource& rng) {
    const std::size_t i = rng.index(tree.node_count());
    const std::size_t k = tree.node_depth(i);
    const std::size_t d = k >= d_max ? 0 : d_max - k;
    return tree.with_subtree(i, random_tree(d, schema, rng));
}

namespace {

void prune_node(std::unique_ptr<Node>& n, std::size_t depth, std::size_t d_max, RandomSource& rng) {
    if (n->leaf) return;
    if (depth >= d_max) {
        auto leaf = std::make_unique<Node>();
        leaf->positive = rng.index(2) == 1;
        n = std::move(leaf);
        return;
    }
    prune_node(n->left, depth + 1, d_max, rng);
    prune_node(n->right, depth + 1, d_max, rng);
}

}  // namespace

DecisionTree prune(const DecisionTree& tree, std::size_t d_max, RandomSource& rng) {
    if (tree.depth() <= d_max) return tree;
    auto root = clone(tree.root());
    prune_node(root, 0, d_max, rng);
    return DecisionTree(std::move(root));
}

}  // namespace dpmos
