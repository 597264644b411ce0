#include "urel/descriptor.hpp"

#include <algorithm>

#include "urel/errors.hpp"

namespace urel {

WsDescriptor WsDescriptor::of(std::vector<std::pair<VariableId, Value>> assignments) {
    std::sort(assignments.begin(), assignments.end(),
              [](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first < b.first;
                  return a.second.canonicalLess(b.second);
              });
    assignments.erase(std::unique(assignments.begin(), assignments.end()), assignments.end());
    for (std::size_t i = 1; i < assignments.size(); ++i)
        if (assignments[i].first == assignments[i - 1].first)
            throw ConflictingAssignment(assignments[i].first);
    WsDescriptor d;
    d.assignments_ = std::move(assignments);
    return d;
}

std::optional<Value> WsDescriptor::valueOf(const VariableId& var) const {
    auto it = std::lower_bound(assignments_.begin(), assignments_.end(), var,
                               [](const auto& a, const VariableId& v) { return a.first < v; });
    if (it != assignments_.end() && it->first == var) return it->second;
    return std::nullopt;
}

bool WsDescriptor::consistentWith(const WsDescriptor& other) const {
    auto i = assignments_.begin();
    auto j = other.assignments_.begin();
    while (i != assignments_.end() && j != other.assignments_.end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            if (!(i->second == j->second)) return false;
            ++i;
            ++j;
        }
    }
    return true;
}

WsDescriptor WsDescriptor::combinedWith(const WsDescriptor& other) const {
    std::vector<std::pair<VariableId, Value>> merged;
    merged.reserve(assignments_.size() + other.assignments_.size());
    auto i = assignments_.begin();
    auto j = other.assignments_.begin();
    while (i != assignments_.end() && j != other.assignments_.end()) {
        if (i->first < j->first) {
            merged.push_back(*i++);
        } else if (j->first < i->first) {
            merged.push_back(*j++);
        } else {
            if (!(i->second == j->second)) throw ConflictingAssignment(i->first);
            merged.push_back(*i);
            ++i;
            ++j;
        }
    }
    merged.insert(merged.end(), i, assignments_.end());
    merged.insert(merged.end(), j, other.assignments_.end());
    WsDescriptor d;
    d.assignments_ = std::move(merged);
    return d;
}

bool WsDescriptor::extendedBy(const TotalValuation& f) const {
    for (const auto& [var, val] : assignments_) {
        auto it = f.find(var);
        if (it == f.end() || !(it->second == val)) return false;
    }
    return true;
}

bool WsDescriptor::canonicalLess(const WsDescriptor& other) const {
    auto i = assignments_.begin();
    auto j = other.assignments_.begin();
    for (; i != assignments_.end() && j != other.assignments_.end(); ++i, ++j) {
        if (i->first != j->first) return i->first < j->first;
        if (!(i->second == j->second)) return i->second.canonicalLess(j->second);
    }
    return assignments_.size() < other.assignments_.size();
}

std::string WsDescriptor::serialize() const {
    std::string out;
    for (const auto& [var, val] : assignments_) {
        if (!out.empty()) out += ';';
        out += var;
        out += '=';
        out += val.toString();
    }
    return out;
}

WsDescriptor WsDescriptor::deserialize(const std::string& text) {
    std::vector<std::pair<VariableId, Value>> assignments;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(pos, end - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw IoError("malformed descriptor item '" + item + "'");
        assignments.emplace_back(item.substr(0, eq), Value::parse(item.substr(eq + 1)));
        pos = end + 1;
    }
    return of(std::move(assignments));
}

std::size_t WsDescriptorHash::operator()(const WsDescriptor& d) const {
    std::size_t h = 0;
    ValueHash vh;
    for (const auto& [var, val] : d.assignments()) {
        h = h * 31 + std::hash<std::string>{}(var);
        h = h * 31 + vh(val);
    }
    return h;
}

}  // namespace urel
