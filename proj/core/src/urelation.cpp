#include "urel/urelation.hpp"

#include <algorithm>

#include "urel/errors.hpp"

namespace urel {

bool URow::canonicalLess(const URow& other) const {
    if (d != other.d) return d.canonicalLess(other.d);
    if (t != other.t) return t.canonicalLess(other.t);
    std::size_t n = std::min(a.size(), other.a.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!(a[i] == other.a[i])) return a[i].canonicalLess(other.a[i]);
    return a.size() < other.a.size();
}

void URelation::addRow(URow row) {
    if (row.a.size() != schema_.attrs.size())
        throw SchemaError("row value arity " + std::to_string(row.a.size()) +
                          " does not match schema arity " + std::to_string(schema_.attrs.size()));
    if (row.t.arity() != schema_.tid_arity)
        throw SchemaError("row tid arity " + std::to_string(row.t.arity()) +
                          " does not match schema tid arity " +
                          std::to_string(schema_.tid_arity));
    rows_.push_back(std::move(row));
}

void URelation::canonicalize() {
    std::sort(rows_.begin(), rows_.end(),
              [](const URow& a, const URow& b) { return a.canonicalLess(b); });
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

std::size_t URelation::attrIndex(const std::string& name) const {
    for (std::size_t i = 0; i < schema_.attrs.size(); ++i)
        if (schema_.attrs[i] == name) return i;
    throw UnknownAttribute(name);
}

}  // namespace urel
