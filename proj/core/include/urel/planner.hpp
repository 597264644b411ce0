#pragma once

#include <memory>
#include <string>
#include <vector>

#include "urel/ast.hpp"
#include "urel/udatabase.hpp"

namespace urel {

struct PlanNode;
using PlanPtr = std::shared_ptr<const PlanNode>;

// Physical operator tree over U-relations. Every node carries its output
// schema: qualified value attributes, tuple-id arity, and the origin aliases
// its tuple ids stem from.
struct PlanNode {
    enum class Kind { Scan, Select, Project, Join, Merge, Union, Poss };

    Kind kind;

    std::vector<std::string> attrs;    // qualified value attributes
    std::size_t tid_arity = 0;
    std::vector<std::string> origins;  // sorted origin aliases

    // Scan
    std::string rel_name;
    std::string alias;
    std::size_t partition_index = 0;
    std::size_t scan_rows = 0;

    // Select / Join
    Condition cond;

    // Project: (source qualified attr, output name)
    std::vector<std::pair<std::string, std::string>> proj;

    std::vector<PlanPtr> children;
};

// Node builders; each computes the output schema from the children and
// checks the operator's contract (attribute resolution, origin disjointness
// for joins, origin overlap for merges). The translator and the optimizer
// both build nodes through these.
PlanPtr planScan(const UDatabase& db, const std::string& rel, const std::string& alias,
                 std::size_t partition_index);
PlanPtr planSelect(Condition cond, PlanPtr child);
PlanPtr planProject(std::vector<std::pair<std::string, std::string>> proj, PlanPtr child);
PlanPtr planJoin(Condition cond, PlanPtr left, PlanPtr right);
// Merge pairs rows on the shared portion of their tuple ids; the sides'
// origin sets must be equal or one a subset of the other.
PlanPtr planMerge(PlanPtr left, PlanPtr right);
PlanPtr planUnion(PlanPtr left, PlanPtr right);
PlanPtr planPoss(PlanPtr child);

// Resolves names against the database schema: expands `*`, qualifies every
// column reference with its alias, checks relations/attributes, and
// distributes WHERE atoms onto the selections and joins they belong to.
LogicalPtr bindQuery(const LogicalPtr& parsed, const UDatabase& db);

// Replaces every Relation leaf of a bound query by the minimal merge tree
// over partitions jointly covering the attributes the query touches there.
// The cover minimizes (number of merges, total partition rows), ties broken
// by declaration order; a single sufficient partition is used directly.
// `full_reconstruction` forces merging all partitions of each relation (used
// by the certain-answer pipeline, which needs per-world-exact evaluation).
LogicalPtr insertMerges(const LogicalPtr& bound, const UDatabase& db,
                        bool full_reconstruction = false);

// Node-by-node translation of a bound, merged query to a physical plan.
// Self-join operands are aliased, which gives their tuple ids fresh origin
// tags; joining two partitions of the same relation without a merge is
// rejected.
PlanPtr translate(const LogicalPtr& merged, const UDatabase& db);

double estimateRows(const PlanPtr& p);

// Indented operator tree with conditions and estimated cardinalities.
std::string explainPlan(const PlanPtr& p);

// Convenience: parse-bind-merge-translate.
PlanPtr planQuery(const LogicalPtr& parsed, const UDatabase& db,
                  bool full_reconstruction = false);

}  // namespace urel
