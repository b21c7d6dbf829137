#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpmos/experiment.hpp"
#include "dpmos/io.hpp"
#include "dpmos/suites.hpp"

using namespace dpmos;

namespace {

struct RunOptions {
    std::string application = "motkin";
    std::string variant = "pareto_local";
    std::vector<double> weights;
    std::string mechanism = "exponential";
    std::string data, schema, dataset;
    std::vector<double> epsilons;
    std::size_t reps = 1;
    std::uint64_t seed = 0;
    std::size_t k = 3;
    std::string metric = "C_error";
    std::size_t threads = 0;
    EvolutionConfig evolution;
    std::string out = "-";
    std::string format = "csv";
    bool log_budget = false;
};

void add_run_flags(CLI::App* cmd, RunOptions& o, bool with_application) {
    if (with_application)
        cmd->add_option("--application", o.application, "moet or motkin")
            ->check(CLI::IsMember({"moet", "motkin"}));
    cmd->add_option("--variant", o.variant, "pareto_local, pareto_global, agg_local or agg_global")
        ->check(CLI::IsMember({"pareto_local", "pareto_global", "agg_local", "agg_global"}));
    cmd->add_option("--weights", o.weights, "aggregation weights")->delimiter(',');
    cmd->add_option("--mechanism", o.mechanism, "global mechanism")
        ->check(CLI::IsMember({"exponential", "permute_and_flip", "rnm_laplace", "rnm_exponential", "rnm_gumbel"}));
    cmd->add_option("--data", o.data, "csv file or edge list")->required();
    cmd->add_option("--schema", o.schema, "json schema (moet)");
    cmd->add_option("--dataset", o.dataset, "name in the result table (default: data file stem)");
    cmd->add_option("--epsilons", o.epsilons, "privacy budgets")->delimiter(',')->required();
    cmd->add_option("--reps", o.reps, "repetitions per budget");
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--k", o.k, "output size (motkin)");
    cmd->add_option("--metric", o.metric, "C_error, recall or u_agg");
    cmd->add_option("--threads", o.threads, "0 = all cores");
    cmd->add_option("--population", o.evolution.p);
    cmd->add_option("--selection", o.evolution.s);
    cmd->add_option("--iterations", o.evolution.k);
    cmd->add_option("--depth", o.evolution.d);
    cmd->add_option("--max-depth", o.evolution.d_max);
    cmd->add_option("--output-size", o.evolution.o);
    cmd->add_option("--out", o.out, "output path, - for stdout");
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--log-budget", o.log_budget, "print the budget ledger of every run to stderr");
}

ExperimentSpec to_spec(const RunOptions& o) {
    ExperimentSpec s;
    s.application = parse_application(o.application);
    s.selector = {parse_variant(o.variant), o.weights, parse_global_mechanism(o.mechanism)};
    s.data_path = o.data;
    s.schema_path = o.schema;
    s.dataset = o.dataset;
    if (s.dataset.empty()) {
        const auto slash = o.data.find_last_of('/');
        s.dataset = o.data.substr(slash == std::string::npos ? 0 : slash + 1);
        s.dataset = s.dataset.substr(0, s.dataset.find('.'));
    }
    s.epsilons = o.epsilons;
    s.repetitions = o.reps;
    s.seed = o.seed;
    s.evolution = o.evolution;
    s.k = o.k;
    s.metric = parse_metric(o.metric);
    s.threads = o.threads;
    if (s.application == Application::moet && s.schema_path.empty())
        throw std::invalid_argument("moet needs --schema");
    return s;
}

int run(const RunOptions& o) {
    const auto spec = to_spec(o);
    std::ostream* log = o.log_budget ? &std::cerr : nullptr;
    ResultTable table;
    if (spec.application == Application::moet) {
        spec.validate();
        const auto x = load_tabular(spec.data_path, spec.schema_path);
        std::cerr << "loaded " << x.size() << " records\n";
        table = run_experiment(spec, x, log);
    } else {
        spec.validate();
        const auto g = load_edge_list(spec.data_path);
        std::cerr << "loaded " << g.graph.vertex_count() << " vertices, " << g.graph.edge_count() << " edges; dropped "
                  << g.self_loops << " self-loops, " << g.duplicates << " duplicates\n";
        table = run_experiment(spec, g.graph, log);
    }
    const auto fmt = o.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (o.out == "-")
        std::cout << format_results(table, fmt);
    else
        emit_results(table, fmt, o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Differentially private multi-objective selection"};
    app.set_config("--config", "", "TOML or INI file supplying any flag; the command line wins");
    app.require_subcommand(1);

    RunOptions moet, motkin, eval;
    moet.application = "moet";
    add_run_flags(app.add_subcommand("moet", "private evolutionary decision trees"), moet, false);
    add_run_flags(app.add_subcommand("motkin", "private top-k influential vertices"), motkin, false);
    add_run_flags(app.add_subcommand("eval", "run an experiment with the application given as a flag"), eval, true);

    std::vector<std::string> suites;
    AdmissibilityLimits limits;
    auto* adm = app.add_subcommand("check-admissibility", "exhaustive admissibility suites");
    adm->add_option("--suite", suites, "suite names (default: all)")->delimiter(',');
    adm->add_option("--universe", limits.universe);
    adm->add_option("--max-records", limits.max_records);
    adm->add_option("--tabular-t", limits.tabular_t);
    adm->add_option("--max-vertices", limits.max_vertices);
    adm->add_option("--graph-t", limits.graph_t);

    double audit_eps = 1.0, audit_slack = 0.05;
    std::size_t audit_samples = 100000;
    std::uint64_t audit_seed = 0;
    std::vector<std::string> audit_mechs;
    auto* audit = app.add_subcommand("dp-audit", "empirical privacy check on tiny neighbor pairs");
    audit->add_option("--epsilon", audit_eps)->check(CLI::PositiveNumber);
    audit->add_option("--samples", audit_samples);
    audit->add_option("--seed", audit_seed);
    audit->add_option("--mechanisms", audit_mechs)->delimiter(',');
    audit->add_option("--slack", audit_slack, "allowed excess over epsilon");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (app.got_subcommand("moet")) return run(moet);
        if (app.got_subcommand("motkin")) return run(motkin);
        if (app.got_subcommand("eval")) return run(eval);
        if (app.got_subcommand("check-admissibility")) {
            if (suites.empty()) suites = admissibility_suites();
            bool ok = true;
            for (const auto& name : suites) {
                const auto r = run_admissibility_suite(name, limits);
                std::printf("%-18s instances=%zu checks=%zu violations=%zu seconds=%.1f\n", name.c_str(),
                            r.instances, r.report.checks, r.report.violations.size(), r.seconds);
                for (std::size_t i = 0; i < std::min<std::size_t>(r.report.violations.size(), 5); ++i) {
                    const auto& v = r.report.violations[i];
                    std::printf("  condition %d instance %zu candidate %zu t=%zu bound=%.17g required=%.17g\n",
                                v.condition, v.instance, v.candidate, v.t, v.bound, v.required);
                }
                ok = ok && r.report.passed();
            }
            return ok ? 0 : 1;
        }
        if (app.got_subcommand("dp-audit")) {
            if (audit_mechs.empty()) audit_mechs = audit_mechanisms();
            bool ok = true;
            std::printf("family,mechanism,epsilon,pairs,worst\n");
            for (const auto& r : run_dp_audit(audit_eps, audit_samples, audit_seed, audit_mechs)) {
                std::printf("%s,%s,%g,%zu,%.4f\n", r.family.c_str(), r.mechanism.c_str(), r.epsilon, r.pairs,
                            r.worst);
                ok = ok && r.worst <= audit_eps + audit_slack;
            }
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
