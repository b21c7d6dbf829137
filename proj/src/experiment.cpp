#include "dpmos/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "dpmos/io.hpp"
#include "dpmos/motkin.hpp"

namespace dpmos {

std::string to_string(Application a) { return a == Application::moet ? "moet" : "motkin"; }

std::string to_string(Metric m) {
    switch (m) {
        case Metric::c_error: return "C_error";
        case Metric::recall: return "recall";
        case Metric::u_agg: return "u_agg";
    }
    return "?";
}

Application parse_application(const std::string& name) {
    if (name == "moet") return Application::moet;
    if (name == "motkin") return Application::motkin;
    throw std::invalid_argument("unknown application '" + name + "'");
}

Metric parse_metric(const std::string& name) {
    if (name == "C" || name == "C_error" || name == "c_error") return Metric::c_error;
    if (name == "recall") return Metric::recall;
    if (name == "u_agg") return Metric::u_agg;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

void ExperimentSpec::validate() const {
    if (repetitions < 1) throw std::invalid_argument("repetitions must be at least 1");
    if (epsilons.empty()) throw std::invalid_argument("no epsilon values given");
    for (double e : epsilons)
        if (!(e > 0) || !std::isfinite(e)) throw std::invalid_argument("epsilon values must be positive and finite");
    if (!is_pareto(selector.variant) && selector.weights.size() != 2)
        throw std::invalid_argument("aggregate variants need two weights");
    if (metric == Metric::u_agg && selector.weights.size() != 2)
        throw std::invalid_argument("metric u_agg needs two weights");
    if (application == Application::moet) {
        evolution.validate();
        if (metric == Metric::recall) throw std::invalid_argument("recall is defined for motkin only");
    } else if (k == 0) {
        throw std::invalid_argument("k must be at least 1");
    }
}

bool same_results(const ResultTable& a, const ResultTable& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto &x = a[i], &y = b[i];
        if (x.dataset != y.dataset || x.method != y.method || x.epsilon != y.epsilon || x.metric != y.metric ||
            x.mean != y.mean || x.std != y.std || x.reps != y.reps)
            return false;
    }
    return true;
}

std::string method_name(const ExperimentSpec& spec) {
    std::string m = spec.application == Application::moet ? "DP-MOET-" : "DP-MOTkIN-";
    m += to_string(spec.selector.variant);
    if (spec.selector.variant == Variant::pareto_global || spec.selector.variant == Variant::agg_global)
        m += "/" + to_string(spec.selector.mechanism);
    return m;
}

namespace {

double mean_aggregate(const std::vector<std::vector<double>>& u, const std::vector<double>& w) {
    double s = 0;
    for (const auto& row : u) s += w[0] * row[0] + w[1] * row[1];
    return s / static_cast<double>(u.size());
}

struct Outcome {
    double value = 0;
    std::size_t calls = 0;
    double per_call = 0;
};

Outcome moet_outcome(const ExperimentSpec& spec, const TabularDataset& x, double epsilon, std::uint64_t seed) {
    RandomSource evo_private(derive_seed(seed, 0)), evo_reference(derive_seed(seed, 0));
    RandomSource sel_private(derive_seed(seed, 1)), sel_reference(derive_seed(seed, 1));
    const auto priv = dp_moet(x, spec.evolution, epsilon, spec.selector, evo_private, sel_private);
    Outcome out{0, priv.calls, priv.per_call_epsilon};
    if (spec.metric == Metric::u_agg) {
        out.value = mean_aggregate(priv.utilities, spec.selector.weights);
    } else {
        const auto ref = nodp_moet(x, spec.evolution, spec.selector, evo_reference, sel_reference);
        out.value = metric_C(ref.utilities, priv.utilities, Dominance::strict);
    }
    return out;
}

Outcome motkin_outcome(const ExperimentSpec& spec, const Graph& g, double epsilon, std::uint64_t seed) {
    RandomSource rng(derive_seed(seed, 1));
    const auto priv = dp_motkin(g, spec.k, epsilon, spec.selector, rng);
    Outcome out{0, spec.k, epsilon / static_cast<double>(spec.k)};
    if (spec.metric == Metric::u_agg) {
        out.value = mean_aggregate(vertex_utilities(g, priv), spec.selector.weights);
        return out;
    }
    const auto truth = true_topk(g, spec.k, spec.selector);
    if (spec.metric == Metric::recall)
        out.value = recall_at_k(priv, truth, spec.k);
    else
        out.value = metric_C(vertex_utilities(g, truth), vertex_utilities(g, priv), Dominance::strict);
    return out;
}

template <class Data, class Run>
ResultTable run_all(const ExperimentSpec& spec, const Data& data, std::ostream* log, Run run) {
    spec.validate();
    ResultTable table;
    std::size_t threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, spec.repetitions);
    for (std::size_t ei = 0; ei < spec.epsilons.size(); ++ei) {
        const double eps = spec.epsilons[ei];
        const auto start = std::chrono::steady_clock::now();
        std::vector<Outcome> outcomes(spec.repetitions);
        std::vector<std::exception_ptr> errors(spec.repetitions);
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        auto worker = [&] {
            for (std::size_t r; !failed && (r = next++) < spec.repetitions;) {
                try {
                    outcomes[r] = run(spec, data, eps, repetition_seed(spec.seed, ei, r));
                } catch (...) {
                    errors[r] = std::current_exception();
                    failed = true;
                }
            }
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        for (std::size_t r = 0; r < spec.repetitions; ++r) {
            if (!errors[r]) continue;
            try {
                std::rethrow_exception(errors[r]);
            } catch (const std::exception& e) {
                std::ostringstream msg;
                msg << "repetition " << r << " at epsilon " << eps << " failed: " << e.what();
                throw std::runtime_error(msg.str());
            }
        }
        const auto stop = std::chrono::steady_clock::now();

        double sum = 0;
        for (const auto& o : outcomes) sum += o.value;
        const double n = static_cast<double>(spec.repetitions);
        const double mean = sum / n;
        double ss = 0;
        for (const auto& o : outcomes) ss += (o.value - mean) * (o.value - mean);
        const double sd = spec.repetitions > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
        if (spec.metric != Metric::u_agg && !(mean >= 0 && mean <= 1))
            throw std::logic_error("metric mean outside [0, 1]");
        if (log)
            for (std::size_t r = 0; r < spec.repetitions; ++r)
                *log << "budget eps=" << eps << " rep=" << r << " calls=" << outcomes[r].calls
                     << " per_call=" << outcomes[r].per_call << " total=" << eps << "\n";

        ResultRow row;
        row.dataset = spec.dataset;
        row.method = method_name(spec);
        row.epsilon = eps;
        row.metric = to_string(spec.metric);
        row.mean = mean;
        row.std = sd;
        row.reps = spec.repetitions;
        row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        table.push_back(std::move(row));
    }
    return table;
}

}  // namespace

double run_repetition(const ExperimentSpec& spec, const TabularDataset& x, double epsilon, std::uint64_t seed) {
    return moet_outcome(spec, x, epsilon, seed).value;
}

double run_repetition(const ExperimentSpec& spec, const Graph& g, double epsilon, std::uint64_t seed) {
    return motkin_outcome(spec, g, epsilon, seed).value;
}

ResultTable run_experiment(const ExperimentSpec& spec, const TabularDataset& x, std::ostream* log) {
    if (spec.application != Application::moet) throw std::invalid_argument("tabular data needs application moet");
    return run_all(spec, x, log, moet_outcome);
}

ResultTable run_experiment(const ExperimentSpec& spec, const Graph& g, std::ostream* log) {
    if (spec.application != Application::motkin) throw std::invalid_argument("graph data needs application motkin");
    return run_all(spec, g, log, motkin_outcome);
}

ResultTable run_experiment(const ExperimentSpec& spec, std::ostream* log) {
    spec.validate();
    if (spec.application == Application::moet) {
        if (spec.schema_path.empty()) throw std::invalid_argument("moet needs a schema file");
        return run_experiment(spec, load_tabular(spec.data_path, spec.schema_path), log);
    }
    const auto loaded = load_edge_list(spec.data_path);
    if (log)
        *log << "loaded " << loaded.graph.vertex_count() << " vertices, " << loaded.graph.edge_count()
             << " edges; dropped " << loaded.self_loops << " self-loops, " << loaded.duplicates << " duplicates\n";
    return run_experiment(spec, loaded.graph, log);
}

std::string format_results(const ResultTable& table, OutputFormat format) {
    if (table.empty()) throw std::invalid_argument("result table is empty");
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        out << "dataset,method,epsilon,metric,mean,std,reps,wall_ms\n";
        char buf[64];
        for (const auto& r : table) {
            out << r.dataset << ',' << r.method << ',' << r.epsilon << ',' << r.metric << ',';
            std::snprintf(buf, sizeof buf, "%.4f,%.4f,", r.mean, r.std);
            out << buf << r.reps << ',';
            std::snprintf(buf, sizeof buf, "%.1f", r.wall_ms);
            out << buf << '\n';
        }
        return out.str();
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : table)
        j.push_back({{"dataset", r.dataset},
                     {"method", r.method},
                     {"epsilon", r.epsilon},
                     {"metric", r.metric},
                     {"mean", r.mean},
                     {"std", r.std},
                     {"reps", r.reps},
                     {"wall_ms", r.wall_ms}});
    return j.dump(2) + "\n";
}

ResultTable parse_results_json(const std::string& text) {
    ResultTable t;
    try {
        for (const auto& o : nlohmann::json::parse(text)) {
            ResultRow r;
            r.dataset = o.at("dataset").get<std::string>();
            r.method = o.at("method").get<std::string>();
            r.epsilon = o.at("epsilon").get<double>();
            r.metric = o.at("metric").get<std::string>();
            r.mean = o.at("mean").get<double>();
            r.std = o.at("std").get<double>();
            r.reps = o.at("reps").get<std::size_t>();
            r.wall_ms = o.at("wall_ms").get<double>();
            t.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("results json: ") + e.what());
    }
    return t;
}

void emit_results(const ResultTable& table, OutputFormat format, const std::string& path) {
    const auto text = format_results(table, format);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace dpmos
