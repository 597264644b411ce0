#include "urel/optimizer.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "urel/columns.hpp"
#include "urel/errors.hpp"

namespace urel {

namespace {

using ScanKey = std::tuple<std::string, std::string, std::size_t>;  // rel, alias, index

// Scan set of a pure merge/scan tree; nullopt-like empty + flag via bool.
bool scanSet(const PlanPtr& p, std::set<ScanKey>& out) {
    if (p->kind == PlanNode::Kind::Scan) {
        out.insert({p->rel_name, p->alias, p->partition_index});
        return true;
    }
    if (p->kind == PlanNode::Kind::Merge)
        return scanSet(p->children[0], out) && scanSet(p->children[1], out);
    return false;
}

bool condOver(const Condition& cond, const std::vector<std::string>& attrs) {
    for (const auto& atom : cond)
        for (const Operand* o : {&atom.lhs, &atom.rhs})
            if (o->is_column && !columnResolves(attrs, o->column)) return false;
    return true;
}

bool condOver(const Condition& cond, const std::vector<std::string>& a,
              const std::vector<std::string>& b) {
    std::vector<std::string> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return condOver(cond, both);
}

template <typename F>
PlanPtr tryBuild(F&& build) {
    try {
        return build();
    } catch (const Error&) {
        return nullptr;  // operator contract violated; rule does not apply
    }
}

bool isIdentityProject(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Project) return false;
    for (const auto& [src, out] : p->proj)
        if (src != out) return false;
    return true;
}

}  // namespace

PlanPtr ruleMergeEliminate(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge) return nullptr;
    std::set<ScanKey> l, r;
    if (!scanSet(p->children[0], l) || !scanSet(p->children[1], r)) return nullptr;
    if (std::includes(l.begin(), l.end(), r.begin(), r.end())) return p->children[0];
    if (std::includes(r.begin(), r.end(), l.begin(), l.end())) return p->children[1];
    return nullptr;
}

PlanPtr ruleMergeCommute(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge) return nullptr;
    return tryBuild([&] { return planMerge(p->children[1], p->children[0]); });
}

PlanPtr ruleMergeAssocLtoR(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge ||
        p->children[0]->kind != PlanNode::Kind::Merge)
        return nullptr;
    const PlanPtr& a = p->children[0]->children[0];
    const PlanPtr& b = p->children[0]->children[1];
    const PlanPtr& c = p->children[1];
    return tryBuild([&] { return planMerge(a, planMerge(b, c)); });
}

PlanPtr ruleMergeAssocRtoL(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge ||
        p->children[1]->kind != PlanNode::Kind::Merge)
        return nullptr;
    const PlanPtr& a = p->children[0];
    const PlanPtr& b = p->children[1]->children[0];
    const PlanPtr& c = p->children[1]->children[1];
    return tryBuild([&] { return planMerge(planMerge(a, b), c); });
}

PlanPtr ruleSelectIntoMerge(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Select ||
        p->children[0]->kind != PlanNode::Kind::Merge)
        return nullptr;
    const PlanPtr& l = p->children[0]->children[0];
    const PlanPtr& r = p->children[0]->children[1];
    if (condOver(p->cond, l->attrs))
        return tryBuild([&] { return planMerge(planSelect(p->cond, l), r); });
    if (condOver(p->cond, r->attrs))
        return tryBuild([&] { return planMerge(l, planSelect(p->cond, r)); });
    return nullptr;
}

PlanPtr ruleSelectOutOfMerge(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge) return nullptr;
    for (int side = 0; side < 2; ++side) {
        const PlanPtr& s = p->children[side];
        const PlanPtr& other = p->children[1 - side];
        if (s->kind != PlanNode::Kind::Select) continue;
        PlanPtr res = tryBuild([&] {
            PlanPtr m = side == 0 ? planMerge(s->children[0], other)
                                  : planMerge(other, s->children[0]);
            return planSelect(s->cond, std::move(m));
        });
        if (res) return res;
    }
    return nullptr;
}

PlanPtr ruleJoinIntoMerge(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Join) return nullptr;
    for (int side = 0; side < 2; ++side) {
        const PlanPtr& m = p->children[side];
        const PlanPtr& t = p->children[1 - side];
        if (m->kind != PlanNode::Kind::Merge) continue;
        const PlanPtr& a = m->children[0];
        const PlanPtr& b = m->children[1];
        if (!condOver(p->cond, a->attrs, t->attrs)) continue;
        PlanPtr res = tryBuild([&] {
            PlanPtr j = side == 0 ? planJoin(p->cond, a, t) : planJoin(p->cond, t, a);
            return planMerge(std::move(j), b);
        });
        if (res) return res;
    }
    return nullptr;
}

PlanPtr ruleJoinOutOfMerge(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge ||
        p->children[0]->kind != PlanNode::Kind::Join)
        return nullptr;
    const PlanPtr& j = p->children[0];
    const PlanPtr& b = p->children[1];
    for (int side = 0; side < 2; ++side) {
        const PlanPtr& a = j->children[side];
        const PlanPtr& t = j->children[1 - side];
        if (!std::includes(a->origins.begin(), a->origins.end(), b->origins.begin(),
                           b->origins.end()))
            continue;
        PlanPtr res = tryBuild([&] {
            PlanPtr m = planMerge(a, b);
            return side == 0 ? planJoin(j->cond, std::move(m), t)
                             : planJoin(j->cond, t, std::move(m));
        });
        if (res) return res;
    }
    return nullptr;
}

PlanPtr ruleProjectSplit(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Project ||
        p->children[0]->kind != PlanNode::Kind::Merge)
        return nullptr;
    const PlanPtr& l = p->children[0]->children[0];
    const PlanPtr& r = p->children[0]->children[1];
    std::set<std::string> srcs;
    for (const auto& [src, out] : p->proj) srcs.insert(src);
    auto keep = [&](const PlanPtr& side) {
        std::vector<std::pair<std::string, std::string>> id;
        for (const auto& a : side->attrs)
            if (srcs.count(a)) id.emplace_back(a, a);
        return id;
    };
    auto lkeep = keep(l), rkeep = keep(r);
    if (lkeep.size() == l->attrs.size() && rkeep.size() == r->attrs.size())
        return nullptr;  // nothing to narrow
    return tryBuild([&] {
        return planProject(p->proj, planMerge(planProject(lkeep, l), planProject(rkeep, r)));
    });
}

PlanPtr ruleProjectUnsplit(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Merge) return nullptr;
    const PlanPtr& pl = p->children[0];
    const PlanPtr& pr = p->children[1];
    if (!isIdentityProject(pl) || !isIdentityProject(pr)) return nullptr;
    std::vector<std::pair<std::string, std::string>> proj = pl->proj;
    for (const auto& item : pr->proj)
        if (std::find(proj.begin(), proj.end(), item) == proj.end()) proj.push_back(item);
    return tryBuild([&] {
        return planProject(std::move(proj),
                           planMerge(pl->children[0], pr->children[0]));
    });
}

double planCost(const PlanPtr& p) {
    double c = estimateRows(p);
    for (const auto& child : p->children) c += planCost(child);
    return c;
}

namespace {

// Splits a mixed conjunction above a merge and pushes each group to the side
// it ranges over (repeated rule (4) after factoring the selection).
PlanPtr ruleSelectSplitIntoMerge(const PlanPtr& p) {
    if (p->kind != PlanNode::Kind::Select ||
        p->children[0]->kind != PlanNode::Kind::Merge)
        return nullptr;
    const PlanPtr& l = p->children[0]->children[0];
    const PlanPtr& r = p->children[0]->children[1];
    Condition left, right, rest;
    for (const auto& atom : p->cond) {
        Condition one{atom};
        if (condOver(one, l->attrs)) left.push_back(atom);
        else if (condOver(one, r->attrs)) right.push_back(atom);
        else rest.push_back(atom);
    }
    if (left.empty() && right.empty()) return nullptr;
    if (rest.size() == p->cond.size()) return nullptr;
    return tryBuild([&]() -> PlanPtr {
        PlanPtr nl = left.empty() ? l : planSelect(left, l);
        PlanPtr nr = right.empty() ? r : planSelect(right, r);
        PlanPtr m = planMerge(std::move(nl), std::move(nr));
        return rest.empty() ? m : planSelect(rest, std::move(m));
    });
}

PlanPtr rebuild(const PlanPtr& p, std::vector<PlanPtr> children) {
    switch (p->kind) {
        case PlanNode::Kind::Scan:
            return p;
        case PlanNode::Kind::Select:
            return planSelect(p->cond, std::move(children[0]));
        case PlanNode::Kind::Project:
            return planProject(p->proj, std::move(children[0]));
        case PlanNode::Kind::Join:
            return planJoin(p->cond, std::move(children[0]), std::move(children[1]));
        case PlanNode::Kind::Merge:
            return planMerge(std::move(children[0]), std::move(children[1]));
        case PlanNode::Kind::Union:
            return planUnion(std::move(children[0]), std::move(children[1]));
        case PlanNode::Kind::Poss:
            return planPoss(std::move(children[0]));
    }
    return p;
}

std::size_t nodeCount(const PlanPtr& p) {
    std::size_t n = 1;
    for (const auto& c : p->children) n += nodeCount(c);
    return n;
}

PlanPtr optimizeRec(const PlanPtr& p, bool& changed) {
    std::vector<PlanPtr> children;
    for (const auto& c : p->children) children.push_back(optimizeRec(c, changed));
    PlanPtr cur = rebuild(p, std::move(children));

    using Rule = PlanPtr (*)(const PlanPtr&);
    static constexpr Rule rules[] = {
        ruleMergeEliminate, ruleSelectIntoMerge, ruleSelectSplitIntoMerge,
        ruleProjectSplit,   ruleJoinIntoMerge,   ruleJoinOutOfMerge,
        ruleMergeAssocLtoR, ruleMergeAssocRtoL,
    };
    for (int guard = 0; guard < 20; ++guard) {
        PlanPtr best;
        for (Rule rule : rules) {
            PlanPtr cand = rule(cur);
            if (!cand) continue;
            bool better = planCost(cand) + 1e-9 < planCost(cur) ||
                          nodeCount(cand) < nodeCount(cur);
            if (better && (!best || planCost(cand) < planCost(best))) best = cand;
        }
        if (!best) break;
        cur = best;
        changed = true;
    }
    return cur;
}

}  // namespace

PlanPtr optimize(const PlanPtr& p) {
    PlanPtr cur = p;
    for (int pass = 0; pass < 10; ++pass) {
        bool changed = false;
        cur = optimizeRec(cur, changed);
        if (!changed) break;
    }
    return cur;
}

}  // namespace urel
