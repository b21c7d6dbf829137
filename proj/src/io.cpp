#include "dpmos/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace dpmos {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

}  // namespace

std::shared_ptr<const Schema> parse_schema(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("schema: ") + e.what());
    }
    auto s = std::make_shared<Schema>();
    try {
        const auto& label = j.at("label");
        s->label = label.at("name").get<std::string>();
        s->positive = label.at("positive").get<std::string>();
        s->negative = label.at("negative").get<std::string>();
        for (const auto& a : j.at("attributes")) {
            const auto name = a.at("name").get<std::string>();
            const auto kind = a.at("kind").get<std::string>();
            if (kind == "numeric")
                s->attributes.push_back(Attribute::numeric(name, a.at("lower").get<double>(), a.at("upper").get<double>()));
            else if (kind == "categorical")
                s->attributes.push_back(Attribute::categorical(name, a.at("categories").get<std::vector<std::string>>()));
            else
                throw ParseError("schema: attribute '" + name + "' has unknown kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("schema: ") + e.what());
    }
    try {
        s->validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("schema: ") + e.what());
    }
    return s;
}

std::shared_ptr<const Schema> load_schema(const std::string& path) {
    auto in = open(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_schema(ss.str());
}

TabularDataset read_tabular(std::istream& csv, std::shared_ptr<const Schema> schema) {
    std::string line;
    if (!std::getline(csv, line)) throw ParseError("csv: missing header row");
    const auto header = split_csv(line);
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("csv: missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::vector<std::size_t> cols;
    for (const auto& a : schema->attributes) cols.push_back(column(a.name));
    const std::size_t label_col = column(schema->label);

    std::vector<Record> records;
    std::size_t row = 1;
    while (std::getline(csv, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        auto fail = [&](const std::string& m) { throw ParseError("csv row " + std::to_string(row) + ": " + m); };
        if (cells.size() != header.size())
            fail("expected " + std::to_string(header.size()) + " fields, found " + std::to_string(cells.size()));
        Record r;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const auto& a = schema->attributes[i];
            const auto& cell = cells[cols[i]];
            if (a.kind == AttributeKind::numeric) {
                double v = 0;
                const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
                if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
                    fail("attribute '" + a.name + "': '" + cell + "' is not a number");
                if (v < a.lower || v > a.upper)
                    fail("attribute '" + a.name + "': value " + cell + " outside public bounds");
                r.values.push_back((v - a.lower) / (a.upper - a.lower));
            } else {
                const auto it = std::find(a.categories.begin(), a.categories.end(), cell);
                if (it == a.categories.end()) fail("attribute '" + a.name + "': '" + cell + "' not in domain");
                r.values.push_back(static_cast<double>(it - a.categories.begin()));
            }
        }
        const auto& label = cells[label_col];
        if (label == schema->positive) r.positive = true;
        else if (label == schema->negative) r.positive = false;
        else fail("label '" + label + "' is neither class");
        records.push_back(std::move(r));
    }
    return TabularDataset(std::move(schema), std::move(records));
}

TabularDataset load_tabular(const std::string& csv_path, const std::string& schema_path) {
    auto schema = load_schema(schema_path);
    auto in = open(csv_path);
    return read_tabular(in, std::move(schema));
}

LoadedGraph read_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    LoadedGraph out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        std::string a, b, extra;
        ss >> a >> b;
        auto parse = [&](const std::string& s) {
            std::uint64_t v = 0;
            const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
                throw ParseError("edge list line " + std::to_string(lineno) + ": malformed edge '" + t + "'");
            return v;
        };
        const auto u = parse(a), v = parse(b);
        if (ss >> extra)
            throw ParseError("edge list line " + std::to_string(lineno) + ": malformed edge '" + t + "'");
        if (u == v) {
            ++out.self_loops;
            continue;
        }
        raw.push_back({std::min(u, v), std::max(u, v)});
    }
    std::sort(raw.begin(), raw.end());
    const auto before = raw.size();
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    out.duplicates = before - raw.size();

    for (const auto& [u, v] : raw) {
        out.ids.push_back(u);
        out.ids.push_back(v);
    }
    std::sort(out.ids.begin(), out.ids.end());
    out.ids.erase(std::unique(out.ids.begin(), out.ids.end()), out.ids.end());
    auto compact = [&](std::uint64_t id) {
        return static_cast<Vertex>(std::lower_bound(out.ids.begin(), out.ids.end(), id) - out.ids.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& [u, v] : raw) edges.push_back({compact(u), compact(v)});
    out.graph = Graph(out.ids.size(), std::move(edges));
    return out;
}

LoadedGraph load_edge_list(const std::string& path) {
    auto in = open(path);
    return read_edge_list(in);
}

}  // namespace dpmos
