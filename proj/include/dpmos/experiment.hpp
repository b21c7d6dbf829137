#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpmos/graph.hpp"
#include "dpmos/moet.hpp"
#include "dpmos/selection.hpp"
#include "dpmos/tabular.hpp"

namespace dpmos {

enum class Application { moet, motkin };
enum class Metric { c_error, recall, u_agg };
enum class DataFormat { csv, edges };

std::string to_string(Application a);
std::string to_string(Metric m);
Application parse_application(const std::string& name);
Metric parse_metric(const std::string& name);

struct ExperimentSpec {
    Application application = Application::motkin;
    SelectorOptions selector;
    std::string dataset;      // label used in the result table
    std::string data_path;    // csv or edge list
    std::string schema_path;  // csv only
    std::vector<double> epsilons;
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;
    EvolutionConfig evolution;  // moet
    std::size_t k = 3;          // motkin
    Metric metric = Metric::c_error;
    std::size_t threads = 0;  // 0: hardware concurrency

    void validate() const;
};

struct ResultRow {
    std::string dataset;
    std::string method;
    double epsilon = 0;
    std::string metric;
    double mean = 0;
    double std = 0;
    std::size_t reps = 0;
    double wall_ms = 0;
};

using ResultTable = std::vector<ResultRow>;

// Same rows apart from wall time.
bool same_results(const ResultTable& a, const ResultTable& b);

std::string method_name(const ExperimentSpec& spec);

// Seed of repetition `rep` at epsilon index `eps_index`.
inline std::uint64_t repetition_seed(std::uint64_t master, std::size_t eps_index, std::size_t rep) {
    return derive_seed(master, eps_index, rep);
}

// Metric value of a single repetition.
double run_repetition(const ExperimentSpec& spec, const TabularDataset& x, double epsilon, std::uint64_t seed);
double run_repetition(const ExperimentSpec& spec, const Graph& g, double epsilon, std::uint64_t seed);

// `log` receives one budget line per run when non-null.
ResultTable run_experiment(const ExperimentSpec& spec, std::ostream* log = nullptr);
ResultTable run_experiment(const ExperimentSpec& spec, const TabularDataset& x, std::ostream* log = nullptr);
ResultTable run_experiment(const ExperimentSpec& spec, const Graph& g, std::ostream* log = nullptr);

enum class OutputFormat { csv, json };

std::string format_results(const ResultTable& table, OutputFormat format);
ResultTable parse_results_json(const std::string& text);
void emit_results(const ResultTable& table, OutputFormat format, const std::string& path);

}  // namespace dpmos
