#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dpmos/sensitivity.hpp"

namespace dpmos {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph. Adjacency lists are sorted and the number of edges
// among each vertex's neighbors (its triangle count) is computed on construction.
class Graph {
public:
    Graph() = default;
    // rejects self-loops, duplicate edges and endpoints >= n
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }  // (u < v), sorted
    std::span<const Vertex> neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return neighbors(v).size(); }
    std::size_t neighbor_pair_edges(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;

    Graph with_edge_toggled(Vertex u, Vertex v) const;

    friend bool operator<(const Graph& a, const Graph& b);
    friend bool operator==(const Graph& a, const Graph& b);

private:
    void check(Vertex v) const;

    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::size_t> pair_edges_;
};

NeighborRelation<Graph> edge_add_remove();

// Every labelled simple graph on n vertices (2^(n(n-1)/2) of them).
std::vector<Graph> all_graphs(std::size_t n);

}  // namespace dpmos
