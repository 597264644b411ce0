#pragma once

#include <string>
#include <utility>
#include <vector>

#include "urel/value.hpp"

namespace urel {

// An atom of a tuple id: the origin tag distinguishes source relations, union
// branches and self-join aliases, so ids from different origins never collide.
struct TidAtom {
    std::string tag;
    Value id;

    bool operator==(const TidAtom& other) const { return tag == other.tag && id == other.id; }
    bool canonicalLess(const TidAtom& other) const {
        if (tag != other.tag) return tag < other.tag;
        return id.canonicalLess(other.id);
    }
};

class TupleId {
public:
    TupleId() = default;
    explicit TupleId(std::vector<TidAtom> atoms) : atoms_(std::move(atoms)) {}

    const std::vector<TidAtom>& atoms() const { return atoms_; }
    std::size_t arity() const { return atoms_.size(); }

    TupleId concatenated(const TupleId& other) const;
    // Prefixes every atom's origin tag; used for union branches and aliases.
    TupleId retagged(const std::string& prefix) const;

    bool operator==(const TupleId& other) const { return atoms_ == other.atoms_; }
    bool operator!=(const TupleId& other) const { return !(*this == other); }
    bool canonicalLess(const TupleId& other) const;

    std::string serialize() const;  // atoms joined by '|', each "tag:id"
    static TidAtom parseAtom(const std::string& text);

private:
    std::vector<TidAtom> atoms_;
};

struct TupleIdHash {
    std::size_t operator()(const TupleId& t) const;
};

}  // namespace urel
