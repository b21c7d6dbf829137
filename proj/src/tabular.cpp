#include "dpmos/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace dpmos {

Attribute Attribute::numeric(std::string name, double lower, double upper) {
    Attribute a;
    a.name = std::move(name);
    a.kind = AttributeKind::numeric;
    a.lower = lower;
    a.upper = upper;
    return a;
}

Attribute Attribute::categorical(std::string name, std::vector<std::string> categories) {
    Attribute a;
    a.name = std::move(name);
    a.kind = AttributeKind::categorical;
    a.categories = std::move(categories);
    return a;
}

void Schema::validate() const {
    if (attributes.empty()) throw std::invalid_argument("schema has no attributes");
    std::set<std::string> names;
    for (const auto& a : attributes) {
        if (!names.insert(a.name).second) throw std::invalid_argument("duplicate attribute '" + a.name + "'");
        if (a.kind == AttributeKind::numeric && !(a.lower < a.upper))
            throw std::invalid_argument("attribute '" + a.name + "': lower bound must be below upper bound");
        if (a.kind == AttributeKind::categorical && a.categories.empty())
            throw std::invalid_argument("attribute '" + a.name + "': empty category list");
    }
    if (label.empty()) throw std::invalid_argument("schema has no label column");
    if (names.count(label)) throw std::invalid_argument("label column '" + label + "' is also an attribute");
    if (positive == negative) throw std::invalid_argument("label classes must differ");
}

std::size_t Schema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i)
        if (attributes[i].name == name) return i;
    throw std::invalid_argument("unknown attribute '" + name + "'");
}

void check_record(const Schema& schema, const Record& r) {
    if (r.values.size() != schema.attributes.size())
        throw std::invalid_argument("record has " + std::to_string(r.values.size()) + " values, schema has " +
                                    std::to_string(schema.attributes.size()) + " attributes");
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const auto& a = schema.attributes[i];
        const double v = r.values[i];
        if (a.kind == AttributeKind::numeric) {
            if (!(v >= 0 && v <= 1))
                throw std::invalid_argument("attribute '" + a.name + "': normalized value outside [0,1]");
        } else if (!(v >= 0 && v < static_cast<double>(a.categories.size()) && v == std::floor(v))) {
            throw std::invalid_argument("attribute '" + a.name + "': category index out of domain");
        }
    }
}

TabularDataset::TabularDataset(std::shared_ptr<const Schema> schema, std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
    if (!schema_) throw std::invalid_argument("dataset requires a schema");
    schema_->validate();
    for (const auto& r : records_) check_record(*schema_, r);
    std::sort(records_.begin(), records_.end());
}

TabularDataset::TabularDataset(std::shared_ptr<const Schema> schema, std::vector<Record> sorted, bool)
    : schema_(std::move(schema)), records_(std::move(sorted)) {}

TabularDataset TabularDataset::with_record(const Record& r) const {
    check_record(*schema_, r);
    std::vector<Record> out;
    out.reserve(records_.size() + 1);
    auto pos = std::upper_bound(records_.begin(), records_.end(), r);
    out.insert(out.end(), records_.begin(), pos);
    out.push_back(r);
    out.insert(out.end(), pos, records_.end());
    return TabularDataset(schema_, std::move(out), true);
}

TabularDataset TabularDataset::without(std::size_t i) const {
    if (i >= records_.size()) throw std::out_of_range("record index out of range");
    std::vector<Record> out(records_);
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
    return TabularDataset(schema_, std::move(out), true);
}

bool operator<(const TabularDataset& a, const TabularDataset& b) { return a.records_ < b.records_; }
bool operator==(const TabularDataset& a, const TabularDataset& b) { return a.records_ == b.records_; }

NeighborRelation<TabularDataset> record_add_remove(std::vector<Record> universe) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    NeighborRelation<TabularDataset> nb;
    nb.kind = NeighborKind::record_add_remove;
    nb.neighbors = [universe](const TabularDataset& x) {
        std::vector<TabularDataset> out;
        const auto& rs = x.records();
        for (std::size_t i = 0; i < rs.size(); ++i)
            if (i == 0 || !(rs[i] == rs[i - 1])) out.push_back(x.without(i));
        for (const auto& r : universe) out.push_back(x.with_record(r));
        return out;
    };
    nb.distance = [](const TabularDataset& a, const TabularDataset& b) {
        const auto& x = a.records();
        const auto& y = b.records();
        std::size_t i = 0, j = 0, d = 0;
        while (i < x.size() && j < y.size()) {
            if (x[i] == y[j]) {
                ++i;
                ++j;
            } else if (x[i] < y[j]) {
                ++i;
                ++d;
            } else {
                ++j;
                ++d;
            }
        }
        return d + (x.size() - i) + (y.size() - j);
    };
    return nb;
}

std::vector<TabularDataset> enumerate_datasets(std::shared_ptr<const Schema> schema,
                                               const std::vector<Record>& universe, std::size_t max_size) {
    std::vector<TabularDataset> out;
    std::vector<Record> current;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        out.emplace_back(schema, current);
        if (current.size() == max_size) return;
        for (std::size_t i = from; i < universe.size(); ++i) {
            current.push_back(universe[i]);
            self(self, i);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace dpmos
