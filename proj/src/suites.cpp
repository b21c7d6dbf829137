#include "dpmos/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "dpmos/aggregate.hpp"
#include "dpmos/mechanisms.hpp"
#include "dpmos/moet.hpp"
#include "dpmos/motkin.hpp"
#include "dpmos/pareto.hpp"

namespace dpmos {

std::shared_ptr<const Schema> toy_schema() {
    static const auto schema = [] {
        auto s = std::make_shared<Schema>();
        s->attributes = {Attribute::numeric("x", 0, 1), Attribute::categorical("c", {"a", "b"})};
        s->label = "y";
        s->positive = "1";
        s->negative = "0";
        s->validate();
        return std::shared_ptr<const Schema>(s);
    }();
    return schema;
}

std::vector<Record> toy_universe() {
    return {{{0.2, 0}, true},  {{0.7, 1}, false}, {{0.2, 1}, true},  {{0.7, 0}, false}, {{0.2, 0}, false},
            {{0.7, 1}, true},  {{0.5, 0}, true},  {{0.5, 1}, false}, {{0.9, 0}, true},  {{0.1, 1}, false}};
}

std::vector<DecisionTree> toy_trees() {
    using T = DecisionTree;
    return {T::leaf(true), T::split(0, 0.5, T::leaf(true), T::leaf(false)),
            T::split(1, 0, T::leaf(false), T::leaf(true), true),
            T::split(0, 0.6, T::split(1, 1, T::leaf(true), T::leaf(false), true), T::leaf(true))};
}

namespace {

template <class D, class C>
using Instances = std::vector<std::pair<D, std::vector<C>>>;

Instances<TabularDataset, DecisionTree> tabular_instances(const AdmissibilityLimits& lim) {
    auto universe = toy_universe();
    universe.resize(std::min(lim.universe, universe.size()));
    Instances<TabularDataset, DecisionTree> out;
    for (auto& x : enumerate_datasets(toy_schema(), universe, lim.max_records)) out.push_back({x, toy_trees()});
    return out;
}

Instances<TabularDataset, std::size_t> indexed(const Instances<TabularDataset, DecisionTree>& in) {
    Instances<TabularDataset, std::size_t> out;
    for (const auto& [x, c] : in) {
        std::vector<std::size_t> idx(c.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        out.push_back({x, idx});
    }
    return out;
}

Instances<Graph, Vertex> graph_instances(const AdmissibilityLimits& lim) {
    Instances<Graph, Vertex> out;
    for (std::size_t n = 1; n <= lim.max_vertices; ++n) {
        std::vector<Vertex> vs(n);
        for (std::size_t v = 0; v < n; ++v) vs[v] = static_cast<Vertex>(v);
        for (auto& g : all_graphs(n)) out.push_back({std::move(g), vs});
    }
    return out;
}

Instances<Graph, std::size_t> graph_indexed(const Instances<Graph, Vertex>& in) {
    Instances<Graph, std::size_t> out;
    for (const auto& [g, vs] : in) out.push_back({g, std::vector<std::size_t>(vs.begin(), vs.end())});
    return out;
}

// δ^PS over the graph's own vertex set; candidates are vertex indices.
UtilityFunction<Graph, std::size_t> graph_ps_utility() {
    return {"pareto_score", [](const Graph& g, const std::size_t& r) {
                std::vector<Vertex> vs(g.vertex_count());
                for (std::size_t v = 0; v < vs.size(); ++v) vs[v] = static_cast<Vertex>(v);
                return static_cast<double>(pareto_scores(utility_matrix(graph_objectives(g, vs)))[r]);
            }};
}

SensitivityFunction<Graph, std::size_t> graph_ps_sensitivity() {
    SensitivityFunction<Graph, std::size_t> f;
    f.kind = SensitivityKind::local;
    f.eval = [](const Graph& g, std::size_t t, const std::size_t& r) {
        std::vector<Vertex> vs(g.vertex_count());
        for (std::size_t v = 0; v < vs.size(); ++v) vs[v] = static_cast<Vertex>(v);
        const auto objs = graph_objectives(g, vs);
        ParetoSensitivity ps(objs);
        return static_cast<double>(ps(t, r));
    };
    return f;
}

template <class F>
AdmissibilitySuiteResult timed(const std::string& name, std::size_t instances, F run) {
    const auto start = std::chrono::steady_clock::now();
    AdmissibilitySuiteResult res;
    res.name = name;
    res.instances = instances;
    res.report = run();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace

std::vector<std::string> admissibility_suites() {
    return {"tpr",        "tnr",     "ps_tree",       "agg_tree_3_2",   "agg_tree_1_100",
            "degree",     "egodensity", "ps_graph",   "agg_graph_3_2",  "agg_graph_1_100"};
}

AdmissibilitySuiteResult run_admissibility_suite(const std::string& name, const AdmissibilityLimits& lim) {
    const bool tabular = name == "tpr" || name == "tnr" || name.find("tree") != std::string::npos;
    if (tabular) {
        auto universe = toy_universe();
        universe.resize(std::min(lim.universe, universe.size()));
        const auto nb = record_add_remove(universe);
        const auto inst = tabular_instances(lim);
        const std::vector<UtilityFunction<TabularDataset, DecisionTree>> us{tpr_utility(), tnr_utility()};
        const std::vector<SensitivityFunction<TabularDataset, DecisionTree>> ds{delta_tpr_sensitivity(),
                                                                                 delta_tnr_sensitivity()};
        auto run = [&](const auto& delta, const auto& u, const auto& instances) {
            return timed(name, instances.size(),
                         [&] { return check_admissibility(delta, u, instances, lim.tabular_t, nb); });
        };
        if (name == "tpr") return run(ds[0], us[0], inst);
        if (name == "tnr") return run(ds[1], us[1], inst);
        if (name == "ps_tree")
            return run(delta_ps_sensitivity(us, ds, toy_trees()), pareto_score_utility(us, toy_trees()), indexed(inst));
        if (name == "agg_tree_3_2" || name == "agg_tree_1_100") {
            const std::vector<double> w = name == "agg_tree_3_2" ? std::vector<double>{3, 2} : std::vector<double>{1, 100};
            return run(aggregate_sensitivity(ds, w), aggregate_utility(us, w), inst);
        }
    } else {
        const auto nb = edge_add_remove();
        const auto inst = graph_instances(lim);
        const std::vector<UtilityFunction<Graph, Vertex>> us{degree_utility(), egodensity_utility()};
        const std::vector<SensitivityFunction<Graph, Vertex>> ds{delta_degree_sensitivity(),
                                                                 delta_egodensity_sensitivity()};
        auto run = [&](const auto& delta, const auto& u, const auto& instances) {
            return timed(name, instances.size(),
                         [&] { return check_admissibility(delta, u, instances, lim.graph_t, nb); });
        };
        if (name == "degree") return run(ds[0], us[0], inst);
        if (name == "egodensity") return run(ds[1], us[1], inst);
        if (name == "ps_graph") return run(graph_ps_sensitivity(), graph_ps_utility(), graph_indexed(inst));
        if (name == "agg_graph_3_2" || name == "agg_graph_1_100") {
            const std::vector<double> w = name == "agg_graph_3_2" ? std::vector<double>{3, 2} : std::vector<double>{1, 100};
            return run(aggregate_sensitivity(ds, w), aggregate_utility(us, w), inst);
        }
    }
    throw std::invalid_argument("unknown admissibility suite '" + name + "'");
}

std::vector<std::string> audit_mechanisms() {
    return {"exponential",     "permute_and_flip", "rnm_laplace", "rnm_exponential",
            "rnm_gumbel",      "local_dampening",  "pareto_local", "agg_local"};
}

namespace {

// Everything a mechanism needs from one dataset, computed once per dataset.
struct Prepared {
    std::vector<double> u;  // single-objective utility
    double delta = 1;
    std::vector<double> log_weights;  // local mechanisms
};

struct Family {
    std::string name;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t outcomes = 0;
    // prepare(dataset index, mechanism, epsilon)
    std::function<Prepared(std::size_t, const std::string&, double)> prepare;
};

Family tabular_family() {
    auto universe = toy_universe();
    universe.resize(2);
    const auto data = enumerate_datasets(toy_schema(), universe, 2);
    auto trees = toy_trees();
    trees.resize(3);
    Family f;
    f.name = "tabular";
    f.outcomes = trees.size();
    for (std::size_t i = 0; i < data.size(); ++i)
        for (std::size_t j = 0; j < data.size(); ++j)
            if (data[j].size() == data[i].size() + 1 && record_add_remove(universe).distance(data[i], data[j]) == 1)
                f.pairs.push_back({i, j});
    f.prepare = [data, trees](std::size_t i, const std::string& mech, double eps) {
        Prepared p;
        std::vector<ConfusionCounts> counts;
        for (const auto& t : trees) counts.push_back(confusion(data[i], t));
        const auto objs = tree_objectives(counts);
        p.u = objs[0].values;
        if (mech == "local_dampening")
            p.log_weights = local_dampening_log_weights(p.u, per_candidate(objs[0].local), eps, default_window(p.u.size()));
        else if (mech == "pareto_local")
            p.log_weights = privpareto_local_log_weights(objs, eps);
        else if (mech == "agg_local")
            p.log_weights = privagg_local_log_weights(objs, {3, 2}, eps);
        return p;
    };
    return f;
}

Family graph_family() {
    const auto graphs = all_graphs(3);
    Family f;
    f.name = "graph";
    f.outcomes = 3;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = 0; j < graphs.size(); ++j)
            if (graphs[j].edge_count() == graphs[i].edge_count() + 1 &&
                edge_add_remove().distance(graphs[i], graphs[j]) == 1)
                f.pairs.push_back({i, j});
    f.prepare = [graphs](std::size_t i, const std::string& mech, double eps) {
        Prepared p;
        const std::vector<Vertex> vs{0, 1, 2};
        const auto objs = graph_objectives(graphs[i], vs);
        if (mech == "local_dampening") {
            p.u = objs[1].values;
            p.log_weights = local_dampening_log_weights(p.u, per_candidate(objs[1].local), eps, default_window(3));
        } else {
            p.u = objs[0].values;
        }
        if (mech == "pareto_local") p.log_weights = privpareto_local_log_weights(objs, eps);
        if (mech == "agg_local") p.log_weights = privagg_local_log_weights(objs, {1, 100}, eps);
        return p;
    };
    return f;
}

std::function<std::size_t(const Prepared&, RandomSource&)> sampler(const std::string& mech, double eps) {
    if (mech == "exponential")
        return [eps](const Prepared& p, RandomSource& rng) { return exponential_mechanism(p.u, p.delta, eps, rng); };
    if (mech == "permute_and_flip")
        return [eps](const Prepared& p, RandomSource& rng) { return permute_and_flip(p.u, p.delta, eps, rng); };
    if (mech.rfind("rnm_", 0) == 0) {
        const Noise noise = mech == "rnm_laplace" ? Noise::laplace
                            : mech == "rnm_gumbel" ? Noise::gumbel
                                                   : Noise::exponential;
        if (mech != "rnm_laplace" && mech != "rnm_gumbel" && mech != "rnm_exponential")
            throw std::invalid_argument("unknown mechanism '" + mech + "'");
        return [eps, noise](const Prepared& p, RandomSource& rng) {
            return report_noisy_max(p.u, p.delta, eps, noise, rng);
        };
    }
    if (mech == "local_dampening" || mech == "pareto_local" || mech == "agg_local")
        return [](const Prepared& p, RandomSource& rng) { return sample_log_weights(p.log_weights, rng); };
    throw std::invalid_argument("unknown mechanism '" + mech + "'");
}

}  // namespace

std::vector<AuditResult> run_dp_audit(double epsilon, std::size_t samples, std::uint64_t seed,
                                      const std::vector<std::string>& mechanisms) {
    std::vector<AuditResult> out;
    const std::vector<Family> families{tabular_family(), graph_family()};
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const auto& f = families[fi];
        for (std::size_t mi = 0; mi < mechanisms.size(); ++mi) {
            const auto& mech = mechanisms[mi];
            const auto sample = sampler(mech, epsilon);
            AuditResult res{f.name, mech, epsilon, f.pairs.size(), 0};
            RandomSource rng(derive_seed(seed, fi, mi));
            for (const auto& [i, j] : f.pairs) {
                const auto x = f.prepare(i, mech, epsilon), y = f.prepare(j, mech, epsilon);
                res.worst = std::max(res.worst, empirical_dp_check<Prepared>(sample, x, y, f.outcomes, samples, rng));
            }
            out.push_back(res);
        }
    }
    return out;
}

}  // namespace dpmos
