#include "dpmos/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dpmos {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adj_(n), pair_edges_(n, 0) {
    for (auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") has an endpoint outside 0.." + std::to_string(n));
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("duplicate edge");
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    // Triangle listing on the degree ordering: each triangle is found once.
    std::vector<std::size_t> rank(n);
    {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return adj_[a].size() != adj_[b].size() ? adj_[a].size() < adj_[b].size() : a < b;
        });
        for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
    }
    std::vector<std::vector<Vertex>> out(n);
    for (const auto& [u, v] : edges_) {
        if (rank[u] < rank[v]) out[u].push_back(v);
        else out[v].push_back(u);
    }
    for (auto& o : out) std::sort(o.begin(), o.end());
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v : out[u]) {
            const auto& a = out[u];
            const auto& b = out[v];
            std::size_t i = 0, j = 0;
            while (i < a.size() && j < b.size()) {
                if (a[i] < b[j]) ++i;
                else if (b[j] < a[i]) ++j;
                else {
                    ++pair_edges_[u];
                    ++pair_edges_[v];
                    ++pair_edges_[a[i]];
                    ++i;
                    ++j;
                }
            }
        }
    }
}

void Graph::check(Vertex v) const {
    if (v >= adj_.size()) throw std::out_of_range("unknown vertex " + std::to_string(v));
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    check(v);
    return adj_[v];
}

std::size_t Graph::neighbor_pair_edges(Vertex v) const {
    check(v);
    return pair_edges_[v];
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check(u);
    check(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

Graph Graph::with_edge_toggled(Vertex u, Vertex v) const {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("cannot toggle a self-loop");
    Edge e{std::min(u, v), std::max(u, v)};
    std::vector<Edge> edges = edges_;
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e) edges.erase(it);
    else edges.insert(it, e);
    return Graph(adj_.size(), std::move(edges));
}

bool operator<(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count()) return a.vertex_count() < b.vertex_count();
    return a.edges_ < b.edges_;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
}

NeighborRelation<Graph> edge_add_remove() {
    NeighborRelation<Graph> nb;
    nb.kind = NeighborKind::edge_add_remove;
    nb.neighbors = [](const Graph& g) {
        std::vector<Graph> out;
        const auto n = static_cast<Vertex>(g.vertex_count());
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) out.push_back(g.with_edge_toggled(u, v));
        return out;
    };
    nb.distance = [](const Graph& a, const Graph& b) {
        if (a.vertex_count() != b.vertex_count())
            throw std::invalid_argument("edge distance between graphs with different vertex sets");
        std::vector<Edge> diff;
        std::set_symmetric_difference(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                                      std::back_inserter(diff));
        return diff.size();
    };
    return nb;
}

std::vector<Graph> all_graphs(std::size_t n) {
    std::vector<Edge> slots;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) slots.push_back({u, v});
    if (slots.size() > 20) throw std::invalid_argument("all_graphs: too many vertices to enumerate");
    std::vector<Graph> out;
    out.reserve(std::size_t{1} << slots.size());
    for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
        std::vector<Edge> e;
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) e.push_back(slots[i]);
        out.emplace_back(n, std::move(e));
    }
    return out;
}

}  // namespace dpmos
