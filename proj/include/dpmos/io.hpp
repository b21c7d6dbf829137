#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "dpmos/graph.hpp"
#include "dpmos/tabular.hpp"

namespace dpmos {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Schema sidecar:
// {"label": {"name": ..., "positive": ..., "negative": ...},
//  "attributes": [{"name": ..., "kind": "numeric", "lower": ..., "upper": ...},
//                 {"name": ..., "kind": "categorical", "categories": [...]}]}
std::shared_ptr<const Schema> load_schema(const std::string& path);
std::shared_ptr<const Schema> parse_schema(const std::string& json_text);

TabularDataset load_tabular(const std::string& csv_path, const std::string& schema_path);
TabularDataset read_tabular(std::istream& csv, std::shared_ptr<const Schema> schema);

struct LoadedGraph {
    Graph graph;
    std::vector<std::uint64_t> ids;  // compact id -> original id, ascending
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
};

LoadedGraph load_edge_list(const std::string& path);
LoadedGraph read_edge_list(std::istream& in);

}  // namespace dpmos
