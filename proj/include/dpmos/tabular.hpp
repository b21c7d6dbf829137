#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dpmos/sensitivity.hpp"

namespace dpmos {

enum class AttributeKind { numeric, categorical };

struct Attribute {
    std::string name;
    AttributeKind kind = AttributeKind::numeric;
    double lower = 0;  // public bounds, numeric only
    double upper = 1;
    std::vector<std::string> categories;  // categorical only

    static Attribute numeric(std::string name, double lower, double upper);
    static Attribute categorical(std::string name, std::vector<std::string> categories);
};

struct Schema {
    std::vector<Attribute> attributes;
    std::string label;
    std::string positive;  // raw label value of the positive class
    std::string negative;

    void validate() const;
    std::size_t index_of(const std::string& name) const;  // throws if absent
};

// Numeric values are normalized to [0,1]; categorical values hold the index
// into the attribute's category list.
struct Record {
    std::vector<double> values;
    bool positive = false;

    auto operator<=>(const Record&) const = default;
    bool operator==(const Record&) const = default;
};

void check_record(const Schema& schema, const Record& r);

class TabularDataset {
public:
    TabularDataset(std::shared_ptr<const Schema> schema, std::vector<Record> records);

    const Schema& schema() const { return *schema_; }
    std::shared_ptr<const Schema> schema_ptr() const { return schema_; }
    const std::vector<Record>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }

    TabularDataset with_record(const Record& r) const;
    TabularDataset without(std::size_t i) const;

    // multiset comparison
    friend bool operator<(const TabularDataset& a, const TabularDataset& b);
    friend bool operator==(const TabularDataset& a, const TabularDataset& b);

private:
    TabularDataset(std::shared_ptr<const Schema> schema, std::vector<Record> sorted, bool);

    std::shared_ptr<const Schema> schema_;
    std::vector<Record> records_;  // kept sorted
};

// Add one record from `universe` or remove one present record.
NeighborRelation<TabularDataset> record_add_remove(std::vector<Record> universe);

// All multisets of at most `max_size` records drawn from `universe`.
std::vector<TabularDataset> enumerate_datasets(std::shared_ptr<const Schema> schema,
                                               const std::vector<Record>& universe, std::size_t max_size);

}  // namespace dpmos
