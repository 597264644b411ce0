#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "urel/normalizer.hpp"
#include "urel/planner.hpp"
#include "urel/worlds.hpp"

namespace urel {

// Operator library over U-relations. Every operator keeps descriptors and
// tuple ids, enforces descriptor consistency on pairings, and returns a
// canonical (sorted, duplicate-free) result.

URelation opSelect(const URelation& u, const Condition& cond);

// proj: (source attribute, output name); descriptors and tuple ids are kept.
URelation opProject(const URelation& u,
                    const std::vector<std::pair<std::string, std::string>>& proj);

// Pairs rows with consistent descriptors satisfying `cond`; descriptors
// combine, tuple ids concatenate. The operands' tuple-id origins must be
// disjoint (AliasingError otherwise). Equality atoms across the operands are
// used as hash-join keys; the rest is a residual filter.
URelation opJoin(const URelation& l, const URelation& r, const Condition& cond);

// Recombines two partitions of the same relation: pairs rows with equal tuple
// ids and consistent descriptors; shared attributes must agree and appear
// once. MergeOriginError when the operands' tuple ids come from different
// origins.
URelation opMerge(const URelation& l, const URelation& r);

// Set union of two U-relations with equal attribute lists. Tuple ids are
// retagged per branch (and padded to a common arity) so ids from the two
// operands never collide.
URelation opUnion(const URelation& l, const URelation& r);

// Possible tuples: distinct value vectors, descriptors and ids dropped.
PlainRelation opPoss(const URelation& u);

// Evaluates a physical plan (without a poss root) bottom-up.
URelation evaluate(const PlanPtr& p, const UDatabase& db);

// Removes rows that cannot be completed to a full tuple of their relation in
// any world: for every uncovered attribute there must be covering rows with
// the same tuple id whose descriptors are jointly consistent with the row's.
// One pass reaches a fixpoint; the world-set is unchanged.
UDatabase reduce(const UDatabase& db);

// Certain answers of a normalized tuple-level U-relation: a value vector is
// certain iff some variable's whole domain guards it row by row. Implements
//   pi_A(pi_Var(W) x pi_A(U)  -  pi_{Var,A}(W x pi_A(U) - pi_{Var,Rng,A} U)).
// Throws NotNormalized (descriptor arity != 1) or NotTupleLevel (no tuple id).
PlainRelation certainAnswers(const URelation& u, const WorldTable& w);

// Pipelines. Both auto-reduce an unreduced database first.
// possAnswers: minimal merges, evaluate, poss.
PlainRelation possAnswers(const LogicalPtr& parsed, const UDatabase& db);
// certainAnswersForQuery: full-reconstruction merges (per-world-exact
// evaluation), normalize the result against the world table, then the
// certain-answer expression. A poss root is ignored.
PlainRelation certainAnswersForQuery(const LogicalPtr& parsed, const UDatabase& db,
                                     std::size_t guard = kDefaultNormalizeGuard);

}  // namespace urel
