#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urel/value.hpp"

namespace urel {

using VariableId = std::string;

// A total valuation of the world table's variables; one possible world.
using TotalValuation = std::map<VariableId, Value>;

// A world-set descriptor: a consistent partial valuation, stored canonically
// sorted by variable id. The empty descriptor denotes the full world-set.
class WsDescriptor {
public:
    WsDescriptor() = default;

    // Canonicalizes; throws ConflictingAssignment when a variable appears with
    // two different values. Duplicate identical pairs collapse.
    static WsDescriptor of(std::vector<std::pair<VariableId, Value>> assignments);

    bool empty() const { return assignments_.empty(); }
    std::size_t size() const { return assignments_.size(); }
    const std::vector<std::pair<VariableId, Value>>& assignments() const { return assignments_; }

    std::optional<Value> valueOf(const VariableId& var) const;

    bool consistentWith(const WsDescriptor& other) const;

    // Union of assignments; precondition consistentWith(other), otherwise
    // throws ConflictingAssignment naming the variable.
    WsDescriptor combinedWith(const WsDescriptor& other) const;

    // True iff the total valuation agrees with this descriptor on its domain.
    bool extendedBy(const TotalValuation& f) const;

    bool operator==(const WsDescriptor& other) const { return assignments_ == other.assignments_; }
    bool operator!=(const WsDescriptor& other) const { return !(*this == other); }
    bool canonicalLess(const WsDescriptor& other) const;

    // "var=val;var=val" sorted by var; empty string for the empty descriptor.
    std::string serialize() const;
    static WsDescriptor deserialize(const std::string& text);

private:
    std::vector<std::pair<VariableId, Value>> assignments_;
};

struct WsDescriptorHash {
    std::size_t operator()(const WsDescriptor& d) const;
};

}  // namespace urel
