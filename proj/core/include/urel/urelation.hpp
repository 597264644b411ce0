#pragma once

#include <string>
#include <vector>

#include "urel/descriptor.hpp"
#include "urel/tuple_id.hpp"
#include "urel/value.hpp"

namespace urel {

struct URow {
    WsDescriptor d;
    TupleId t;
    std::vector<Value> a;

    bool operator==(const URow& other) const {
        return d == other.d && t == other.t && a == other.a;
    }
    bool canonicalLess(const URow& other) const;
};

struct USchema {
    std::vector<std::string> attrs;  // ordered value-attribute names
    std::size_t tid_arity = 0;
};

// One vertical partition: a set of (descriptor, tuple id, values) rows.
// Rows are kept in canonical order with duplicates eliminated.
class URelation {
public:
    URelation() = default;
    explicit URelation(USchema schema) : schema_(std::move(schema)) {}

    const USchema& schema() const { return schema_; }
    const std::vector<URow>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    // Checks arities against the schema.
    void addRow(URow row);

    // Sorts canonically and removes duplicates; ops call this before
    // returning a result.
    void canonicalize();

    std::size_t attrIndex(const std::string& name) const;  // throws UnknownAttribute

private:
    USchema schema_;
    std::vector<URow> rows_;
};

}  // namespace urel
