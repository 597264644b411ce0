#include "urel/world_table.hpp"

#include <algorithm>
#include <cmath>

#include "urel/errors.hpp"

namespace urel {

void WorldTable::addEntry(const VariableId& var, const Value& val) {
    if (probabilistic_)
        throw InvalidParameter("mixing probabilistic and plain world-table entries");
    auto& dom = domains_[var];
    for (const auto& v : dom.values)
        if (v == val) throw InvalidParameter("duplicate world-table entry for '" + var + "'");
    dom.values.push_back(val);
}

void WorldTable::addEntry(const VariableId& var, const Value& val, double prob) {
    if (!domains_.empty() && !probabilistic_)
        throw InvalidParameter("mixing probabilistic and plain world-table entries");
    if (!(prob > 0.0 && prob <= 1.0))
        throw InvalidParameter("probability out of (0,1] for '" + var + "'");
    probabilistic_ = true;
    auto& dom = domains_[var];
    for (const auto& v : dom.values)
        if (v == val) throw InvalidParameter("duplicate world-table entry for '" + var + "'");
    dom.values.push_back(val);
    dom.probs.push_back(prob);
}

bool WorldTable::hasVariable(const VariableId& var) const { return domains_.count(var) != 0; }

bool WorldTable::contains(const VariableId& var, const Value& val) const {
    auto it = domains_.find(var);
    if (it == domains_.end()) return false;
    return std::any_of(it->second.values.begin(), it->second.values.end(),
                       [&](const Value& v) { return v == val; });
}

std::vector<VariableId> WorldTable::variables() const {
    std::vector<VariableId> out;
    out.reserve(domains_.size());
    for (const auto& [var, _] : domains_) out.push_back(var);
    return out;
}

const std::vector<Value>& WorldTable::domainOf(const VariableId& var) const {
    auto it = domains_.find(var);
    if (it == domains_.end()) throw SchemaError("unknown variable '" + var + "'");
    return it->second.values;
}

double WorldTable::probabilityOf(const VariableId& var, const Value& val) const {
    if (!probabilistic_) throw NotProbabilistic();
    auto it = domains_.find(var);
    if (it == domains_.end()) throw SchemaError("unknown variable '" + var + "'");
    for (std::size_t i = 0; i < it->second.values.size(); ++i)
        if (it->second.values[i] == val) return it->second.probs[i];
    throw SchemaError("value not in domain of '" + var + "'");
}

double WorldTable::worldCountLog10() const {
    double sum = 0.0;
    for (const auto& [_, dom] : domains_) sum += std::log10(static_cast<double>(dom.values.size()));
    return sum;
}

std::size_t WorldTable::worldCountCapped(std::size_t cap) const {
    std::size_t product = 1;
    for (const auto& [_, dom] : domains_) {
        std::size_t n = dom.values.size();
        if (n == 0) return 0;
        if (product > cap / n) return cap + 1;
        product *= n;
    }
    return product;
}

std::vector<VariableId> WorldTable::probabilityViolations(double tol) const {
    std::vector<VariableId> bad;
    if (!probabilistic_) return bad;
    for (const auto& [var, dom] : domains_) {
        double sum = 0.0;
        for (double p : dom.probs) sum += p;
        if (std::abs(sum - 1.0) > tol) bad.push_back(var);
    }
    return bad;
}

std::vector<WorldTable::Entry> WorldTable::entries() const {
    std::vector<Entry> out;
    for (const auto& [var, dom] : domains_) {
        for (std::size_t i = 0; i < dom.values.size(); ++i)
            out.push_back(Entry{var, dom.values[i], probabilistic_ ? dom.probs[i] : 1.0});
    }
    return out;
}

}  // namespace urel
