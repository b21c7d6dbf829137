#pragma once

#include <cstddef>
#include <vector>

#include "dpmos/graph.hpp"
#include "dpmos/objective.hpp"
#include "dpmos/random.hpp"
#include "dpmos/selection.hpp"
#include "dpmos/sensitivity.hpp"

namespace dpmos {

std::size_t degree(const Graph& g, Vertex v);
double egodensity(const Graph& g, Vertex v);  // 0 when fewer than two neighbors

double delta_degree(const Graph& g, std::size_t t, Vertex v);
// 2/(d - t - 2) once d - t > 4, else 1
double egodensity_sensitivity(std::size_t degree, std::size_t t);
double delta_egodensity(const Graph& g, std::size_t t, Vertex v);

UtilityFunction<Graph, Vertex> degree_utility();
UtilityFunction<Graph, Vertex> egodensity_utility();
SensitivityFunction<Graph, Vertex> delta_degree_sensitivity();
SensitivityFunction<Graph, Vertex> delta_egodensity_sensitivity();

// (degree, egodensity) objectives over the vertices in `pool`.
std::vector<Objective> graph_objectives(const Graph& g, const std::vector<Vertex>& pool);

std::vector<Vertex> dp_motkin(const Graph& g, std::size_t k, double epsilon, const SelectorOptions& options,
                              RandomSource& rng);

// Non-private top-k by the same without-replacement loop; ties go to the
// smallest vertex id.
std::vector<Vertex> true_topk(const Graph& g, std::size_t k, const SelectorOptions& options);
std::vector<Vertex> true_topk_pareto(const Graph& g, std::size_t k);
std::vector<Vertex> true_topk_agg(const Graph& g, std::size_t k, const std::vector<double>& weights);

double recall_at_k(const std::vector<Vertex>& output, const std::vector<Vertex>& truth, std::size_t k);

std::vector<std::vector<double>> vertex_utilities(const Graph& g, const std::vector<Vertex>& vertices);

}  // namespace dpmos
