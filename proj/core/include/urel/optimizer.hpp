#pragma once

#include "urel/planner.hpp"

namespace urel {

// Rewrite rules over physical plans, one per direction of the merge
// equivalences. Each rewrites at the root of `p` and returns nullptr when the
// rule does not apply there.
//
//   (1) merge(T1, T2) = T1            when T2's partitions are among T1's
//   (2) merge(R, S) = merge(S, R)
//   (3) merge(merge(R, S), T) = merge(R, merge(S, T))
//   (4) sel(merge(R, S)) = merge(sel(R), S)     condition over sch(R)
//   (5) merge(R, S) join T = merge(R join T, S) condition over sch(R), sch(T)
//   (6) proj(merge(R, S)) = proj(merge(proj(R), proj(S)))  per-side columns
PlanPtr ruleMergeEliminate(const PlanPtr& p);    // (1), shrinking direction
PlanPtr ruleMergeCommute(const PlanPtr& p);      // (2), self-inverse
PlanPtr ruleMergeAssocLtoR(const PlanPtr& p);    // (3) left to right
PlanPtr ruleMergeAssocRtoL(const PlanPtr& p);    // (3) right to left
PlanPtr ruleSelectIntoMerge(const PlanPtr& p);   // (4) push selection down
PlanPtr ruleSelectOutOfMerge(const PlanPtr& p);  // (4) pull selection up
PlanPtr ruleJoinIntoMerge(const PlanPtr& p);     // (5) join below the merge
PlanPtr ruleJoinOutOfMerge(const PlanPtr& p);    // (5) merge below the join
PlanPtr ruleProjectSplit(const PlanPtr& p);      // (6) narrow merge inputs
PlanPtr ruleProjectUnsplit(const PlanPtr& p);    // (6) collapse per-side projections

// Sum of estimated row counts over all nodes (the work measure the optimizer
// minimizes).
double planCost(const PlanPtr& p);

// Heuristic rewriting: pushes selections and projections below merges, keeps
// redundant merges out, and orders join-vs-merge by estimated cost. Each
// accepted rewrite strictly decreases plan cost or node count; at most 10
// passes.
PlanPtr optimize(const PlanPtr& p);

}  // namespace urel
