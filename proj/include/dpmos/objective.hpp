#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace dpmos {

// One utility bound to a fixed dataset: values per candidate, an admissible
// sensitivity δ(t, r), and the global sensitivity Δu.
struct Objective {
    std::vector<double> values;
    std::function<double(std::size_t t, std::size_t r)> local;
    double global = 0;
};

// Restriction of an objective to the candidates listed in `pool`.
Objective restrict_objective(const Objective& o, const std::vector<std::size_t>& pool);

void validate_objectives(const std::vector<Objective>& objectives);

}  // namespace dpmos
