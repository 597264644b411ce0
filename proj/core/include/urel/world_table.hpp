#pragma once

#include <map>
#include <string>
#include <vector>

#include "urel/descriptor.hpp"
#include "urel/value.hpp"

namespace urel {

// The finite variable/domain catalog defining the world-set, optionally with
// per-assignment probabilities. Domain value order follows insertion order
// (the world table file), which fixes the world enumeration order.
class WorldTable {
public:
    // Appends a domain value for `var`; duplicates are rejected.
    void addEntry(const VariableId& var, const Value& val);
    void addEntry(const VariableId& var, const Value& val, double prob);

    bool hasVariable(const VariableId& var) const;
    bool contains(const VariableId& var, const Value& val) const;

    // Variable ids in sorted order.
    std::vector<VariableId> variables() const;
    const std::vector<Value>& domainOf(const VariableId& var) const;

    bool probabilistic() const { return probabilistic_; }
    double probabilityOf(const VariableId& var, const Value& val) const;

    std::size_t variableCount() const { return domains_.size(); }

    // Sum over variables of log10(|domain|); 0 for the empty table.
    double worldCountLog10() const;

    // Product of domain sizes, saturating at `cap`.
    std::size_t worldCountCapped(std::size_t cap) const;

    // Per-variable probability sums must each be 1 within tol; returns the
    // offending variables (empty when valid or non-probabilistic).
    std::vector<VariableId> probabilityViolations(double tol = 1e-9) const;

    struct Entry {
        VariableId var;
        Value val;
        double prob;  // meaningful only when probabilistic()
    };
    // All entries, variables sorted, domain values in file order.
    std::vector<Entry> entries() const;

private:
    struct Domain {
        std::vector<Value> values;
        std::vector<double> probs;
    };
    std::map<VariableId, Domain> domains_;
    bool probabilistic_ = false;
};

}  // namespace urel
