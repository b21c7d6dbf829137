#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dpmos/dtree.hpp"
#include "dpmos/graph.hpp"
#include "dpmos/sensitivity.hpp"
#include "dpmos/tabular.hpp"

namespace dpmos {

// Small fixed instance families used by the admissibility suites and the
// privacy audit.
std::shared_ptr<const Schema> toy_schema();
std::vector<Record> toy_universe();  // 10 records over toy_schema
std::vector<DecisionTree> toy_trees();

struct AdmissibilitySuiteResult {
    std::string name;
    std::size_t instances = 0;
    AdmissibilityReport report;
    double seconds = 0;
};

struct AdmissibilityLimits {
    std::size_t universe = 10;  // records drawn from toy_universe
    std::size_t max_records = 5;
    std::size_t tabular_t = 3;
    std::size_t max_vertices = 6;
    std::size_t graph_t = 2;
};

std::vector<std::string> admissibility_suites();
AdmissibilitySuiteResult run_admissibility_suite(const std::string& name, const AdmissibilityLimits& limits = {});

struct AuditResult {
    std::string family;     // tabular or graph
    std::string mechanism;
    double epsilon = 0;
    std::size_t pairs = 0;
    double worst = 0;  // largest |log ratio| over all pairs and outcomes
};

std::vector<std::string> audit_mechanisms();
// Every mechanism on every neighbor pair of both tiny families.
std::vector<AuditResult> run_dp_audit(double epsilon, std::size_t samples, std::uint64_t seed,
                                      const std::vector<std::string>& mechanisms = audit_mechanisms());

}  // namespace dpmos
