#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "urel/ast.hpp"
#include "urel/udatabase.hpp"

namespace urel {

struct ValueVecLess {
    bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const;
};

using PlainRows = std::set<std::vector<Value>, ValueVecLess>;

struct PlainRelation {
    std::vector<std::string> attrs;
    PlainRows rows;

    bool operator==(const PlainRelation& other) const {
        return attrs == other.attrs && rows == other.rows;
    }
};

// One possible world as an ordinary relational database (set semantics, no
// descriptors, no tuple ids exposed).
struct PlainDatabase {
    std::map<std::string, PlainRelation> relations;

    bool operator==(const PlainDatabase& other) const { return relations == other.relations; }
};

inline constexpr std::size_t kDefaultWorldLimit = std::size_t{1} << 20;

// Every total valuation exactly once, in lexicographic variable/value order
// (variables sorted by id, values in world-table file order). Throws
// WorldLimitExceeded when the product of domain sizes exceeds `limit`.
std::vector<TotalValuation> enumerateWorlds(const WorldTable& w,
                                            std::size_t limit = kDefaultWorldLimit);

// Materializes the world named by f: keeps rows whose descriptor f extends,
// groups by tuple id across partitions, and emits a tuple only when every
// attribute of the relation received a value; partial tuples are dropped.
PlainDatabase instantiate(const UDatabase& db, const TotalValuation& f);

// Textbook set-semantics evaluation of a positive query (no poss) against one
// world. Used as the oracle inner loop.
PlainRelation evalPlain(const LogicalPtr& q, const PlainDatabase& db);

// Union / intersection over all worlds of evalPlain.
PlainRelation possOracle(const LogicalPtr& q, const UDatabase& db,
                         std::size_t limit = kDefaultWorldLimit);
PlainRelation certainOracle(const LogicalPtr& q, const UDatabase& db,
                            std::size_t limit = kDefaultWorldLimit);

}  // namespace urel
