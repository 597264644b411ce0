#include "urel/planner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "urel/columns.hpp"
#include "urel/errors.hpp"

namespace urel {

namespace {

struct FromItem {
    std::string rel;
    std::string alias;
};

void collectFrom(const LogicalPtr& n, std::vector<FromItem>& out) {
    switch (n->kind) {
        case LogicalNode::Kind::Relation:
            out.push_back({n->rel_name, n->alias});
            return;
        case LogicalNode::Kind::Join:
            collectFrom(n->children[0], out);
            collectFrom(n->children[1], out);
            return;
        case LogicalNode::Kind::Select:
            collectFrom(n->children[0], out);
            return;
        default:
            throw SchemaError("malformed select block");
    }
}

void collectWhere(const LogicalPtr& n, Condition& out) {
    if (n->kind == LogicalNode::Kind::Select || n->kind == LogicalNode::Kind::Join)
        out.insert(out.end(), n->cond.begin(), n->cond.end());
    for (const auto& c : n->children)
        if (c->kind != LogicalNode::Kind::Relation) collectWhere(c, out);
}

// One select block: Project over optional Select over a left-deep join chain.
LogicalPtr bindBlock(const LogicalPtr& block, const UDatabase& db) {
    std::vector<FromItem> from;
    collectFrom(block->children[0], from);

    std::vector<std::string> scope;           // qualified attrs, FROM order
    std::vector<std::size_t> item_of_attr;    // scope index -> FROM index
    for (std::size_t i = 0; i < from.size(); ++i) {
        const LogicalRelation& rel = db.relation(from[i].rel);
        for (const auto& a : rel.attrs) {
            scope.push_back(from[i].alias + "." + a);
            item_of_attr.push_back(i);
        }
    }

    auto qualify = [&](const std::string& ref) { return scope[resolveColumn(scope, ref)]; };

    std::vector<std::pair<std::string, std::string>> proj;
    if (block->star) {
        for (const auto& q : scope) proj.emplace_back(q, baseName(q));
    } else {
        for (const auto& [src, out] : block->proj) proj.emplace_back(qualify(src), out);
    }

    Condition where;
    collectWhere(block->children[0], where);

    std::vector<Condition> leaf_conds(from.size());
    std::vector<Condition> join_conds(from.size());  // join_conds[j] joins item j in
    Condition residual;
    for (CondAtom atom : where) {
        std::set<std::size_t> items;
        for (Operand* o : {&atom.lhs, &atom.rhs}) {
            if (!o->is_column) continue;
            o->column = qualify(o->column);
            items.insert(item_of_attr[resolveColumn(scope, o->column)]);
        }
        if (items.empty()) residual.push_back(std::move(atom));
        else if (items.size() == 1) leaf_conds[*items.begin()].push_back(std::move(atom));
        else join_conds[*items.rbegin()].push_back(std::move(atom));
    }

    auto leaf = [&](std::size_t i) {
        LogicalPtr n = makeRelation(from[i].rel, from[i].alias);
        if (!leaf_conds[i].empty()) n = makeSelect(std::move(leaf_conds[i]), std::move(n));
        return n;
    };
    LogicalPtr body = leaf(0);
    for (std::size_t i = 1; i < from.size(); ++i)
        body = makeJoin(std::move(join_conds[i]), std::move(body), leaf(i));
    if (!residual.empty()) body = makeSelect(std::move(residual), std::move(body));
    return makeProject(std::move(proj), false, std::move(body));
}

void collectRefs(const LogicalPtr& n, std::map<std::string, std::set<std::string>>& by_alias) {
    for (const auto& atom : n->cond)
        for (const Operand* o : {&atom.lhs, &atom.rhs})
            if (o->is_column) {
                std::size_t dot = o->column.rfind('.');
                by_alias[o->column.substr(0, dot)].insert(o->column.substr(dot + 1));
            }
    for (const auto& [src, out] : n->proj) {
        std::size_t dot = src.rfind('.');
        by_alias[src.substr(0, dot)].insert(src.substr(dot + 1));
    }
    for (const auto& c : n->children) collectRefs(c, by_alias);
}

// Partition subset jointly covering `needed`, minimizing (subset size, total
// rows); ties go to earlier declaration order. An empty need still requires
// one partition as an existence witness.
std::vector<std::size_t> chooseCover(const LogicalRelation& rel,
                                     const std::set<std::string>& needed) {
    std::size_t n = rel.partitions.size();
    if (needed.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (rel.partitions[i].rel.size() < rel.partitions[best].rel.size()) best = i;
        return {best};
    }
    std::vector<std::size_t> best;
    std::size_t best_rows = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::set<std::string> covered;
        std::vector<std::size_t> idx;
        std::size_t rows = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask >> i & 1)) continue;
            idx.push_back(i);
            rows += rel.partitions[i].rel.size();
            covered.insert(rel.partitions[i].covered_attrs.begin(),
                           rel.partitions[i].covered_attrs.end());
        }
        if (!std::includes(covered.begin(), covered.end(), needed.begin(), needed.end()))
            continue;
        if (best.empty() || idx.size() < best.size() ||
            (idx.size() == best.size() && (rows < best_rows ||
                                           (rows == best_rows && idx < best)))) {
            best = std::move(idx);
            best_rows = rows;
        }
    }
    if (best.empty())
        throw SchemaError("partitions do not cover the requested attributes");
    return best;
}

LogicalPtr mergeTree(const FromItem& item, const std::vector<std::size_t>& idx) {
    LogicalPtr n = makePartitionRef(item.rel, item.alias, idx[0]);
    for (std::size_t k = 1; k < idx.size(); ++k)
        n = makeMerge(std::move(n), makePartitionRef(item.rel, item.alias, idx[k]));
    return n;
}

LogicalPtr replaceLeaves(const LogicalPtr& n, const UDatabase& db,
                         const std::map<std::string, std::set<std::string>>& needed,
                         bool full) {
    if (n->kind == LogicalNode::Kind::Relation) {
        const LogicalRelation& rel = db.relation(n->rel_name);
        std::vector<std::size_t> idx;
        if (full) {
            for (std::size_t i = 0; i < rel.partitions.size(); ++i) idx.push_back(i);
        } else {
            auto it = needed.find(n->alias);
            idx = chooseCover(rel, it == needed.end() ? std::set<std::string>{} : it->second);
        }
        return mergeTree({n->rel_name, n->alias}, idx);
    }
    LogicalNode copy = *n;
    copy.children.clear();
    for (const auto& c : n->children)
        copy.children.push_back(replaceLeaves(c, db, needed, full));
    return std::make_shared<const LogicalNode>(std::move(copy));
}

LogicalPtr mergeBlock(const LogicalPtr& block, const UDatabase& db, bool full) {
    std::map<std::string, std::set<std::string>> needed;
    collectRefs(block, needed);
    return replaceLeaves(block, db, needed, full);
}

PlanPtr makePlan(PlanNode n) { return std::make_shared<const PlanNode>(std::move(n)); }

bool subsetOf(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

PlanPtr planScan(const UDatabase& db, const std::string& rel_name, const std::string& alias,
                 std::size_t partition_index) {
    const LogicalRelation& rel = db.relation(rel_name);
    if (partition_index >= rel.partitions.size())
        throw SchemaError("partition index out of range for '" + rel_name + "'");
    const Partition& p = rel.partitions[partition_index];
    PlanNode n;
    n.kind = PlanNode::Kind::Scan;
    for (const auto& a : p.covered_attrs) n.attrs.push_back(alias + "." + a);
    n.tid_arity = p.rel.schema().tid_arity;
    n.origins = {alias};
    n.rel_name = rel_name;
    n.alias = alias;
    n.partition_index = partition_index;
    n.scan_rows = p.rel.size();
    return makePlan(std::move(n));
}

PlanPtr planSelect(Condition cond, PlanPtr child) {
    for (const auto& atom : cond)
        for (const Operand* o : {&atom.lhs, &atom.rhs})
            if (o->is_column) resolveColumn(child->attrs, o->column);
    PlanNode n;
    n.kind = PlanNode::Kind::Select;
    n.attrs = child->attrs;
    n.tid_arity = child->tid_arity;
    n.origins = child->origins;
    n.cond = std::move(cond);
    n.children = {std::move(child)};
    return makePlan(std::move(n));
}

PlanPtr planProject(std::vector<std::pair<std::string, std::string>> proj, PlanPtr child) {
    PlanNode n;
    n.kind = PlanNode::Kind::Project;
    for (const auto& [src, out] : proj) {
        resolveColumn(child->attrs, src);
        n.attrs.push_back(out);
    }
    n.proj = std::move(proj);
    n.tid_arity = child->tid_arity;
    n.origins = child->origins;
    n.children = {std::move(child)};
    return makePlan(std::move(n));
}

PlanPtr planJoin(Condition cond, PlanPtr left, PlanPtr right) {
    for (const auto& o : left->origins)
        if (std::find(right->origins.begin(), right->origins.end(), o) !=
            right->origins.end())
            throw AliasingError("join operands share tuple-id origin '" + o +
                                "'; self-joins need distinct aliases");
    PlanNode n;
    n.kind = PlanNode::Kind::Join;
    n.attrs = left->attrs;
    n.attrs.insert(n.attrs.end(), right->attrs.begin(), right->attrs.end());
    n.tid_arity = left->tid_arity + right->tid_arity;
    n.origins = left->origins;
    n.origins.insert(n.origins.end(), right->origins.begin(), right->origins.end());
    std::sort(n.origins.begin(), n.origins.end());
    for (const auto& atom : cond)
        for (const Operand* o : {&atom.lhs, &atom.rhs})
            if (o->is_column) resolveColumn(n.attrs, o->column);
    n.cond = std::move(cond);
    n.children = {std::move(left), std::move(right)};
    return makePlan(std::move(n));
}

PlanPtr planMerge(PlanPtr left, PlanPtr right) {
    PlanNode n;
    n.kind = PlanNode::Kind::Merge;
    if (left->origins == right->origins) {
        if (left->tid_arity != right->tid_arity)
            throw MergeOriginError("merge operands have different tuple-id arities");
        n.tid_arity = left->tid_arity;
        n.origins = left->origins;
    } else if (subsetOf(right->origins, left->origins)) {
        n.tid_arity = left->tid_arity;
        n.origins = left->origins;
    } else if (subsetOf(left->origins, right->origins)) {
        n.tid_arity = right->tid_arity;
        n.origins = right->origins;
    } else {
        throw MergeOriginError("merge operands stem from unrelated origins");
    }
    n.attrs = left->attrs;
    for (const auto& a : right->attrs)
        if (std::find(n.attrs.begin(), n.attrs.end(), a) == n.attrs.end())
            n.attrs.push_back(a);
    n.children = {std::move(left), std::move(right)};
    return makePlan(std::move(n));
}

PlanPtr planUnion(PlanPtr left, PlanPtr right) {
    if (left->attrs != right->attrs)
        throw SchemaError("union branches have different attribute lists");
    PlanNode n;
    n.kind = PlanNode::Kind::Union;
    n.attrs = left->attrs;
    n.tid_arity = std::max(left->tid_arity, right->tid_arity);
    for (const auto& o : left->origins) n.origins.push_back("L#" + o);
    for (const auto& o : right->origins) n.origins.push_back("R#" + o);
    std::sort(n.origins.begin(), n.origins.end());
    n.children = {std::move(left), std::move(right)};
    return makePlan(std::move(n));
}

PlanPtr planPoss(PlanPtr child) {
    PlanNode n;
    n.kind = PlanNode::Kind::Poss;
    n.attrs = child->attrs;
    n.children = {std::move(child)};
    return makePlan(std::move(n));
}

namespace {

PlanPtr translateRec(const LogicalPtr& q, const UDatabase& db) {
    switch (q->kind) {
        case LogicalNode::Kind::PartitionRef:
            return planScan(db, q->rel_name, q->alias, q->partition_index);
        case LogicalNode::Kind::Merge:
            return planMerge(translateRec(q->children[0], db),
                             translateRec(q->children[1], db));
        case LogicalNode::Kind::Select:
            return planSelect(q->cond, translateRec(q->children[0], db));
        case LogicalNode::Kind::Join:
            return planJoin(q->cond, translateRec(q->children[0], db),
                            translateRec(q->children[1], db));
        case LogicalNode::Kind::Project:
            return planProject(q->proj, translateRec(q->children[0], db));
        case LogicalNode::Kind::Union:
            return planUnion(translateRec(q->children[0], db),
                             translateRec(q->children[1], db));
        case LogicalNode::Kind::Poss:
            return planPoss(translateRec(q->children[0], db));
        case LogicalNode::Kind::Relation:
            throw SchemaError("relation leaf survived merge insertion");
    }
    throw SchemaError("unreachable");
}

}  // namespace

LogicalPtr bindQuery(const LogicalPtr& parsed, const UDatabase& db) {
    switch (parsed->kind) {
        case LogicalNode::Kind::Poss:
            return makePoss(bindQuery(parsed->children[0], db));
        case LogicalNode::Kind::Union:
            return makeUnion(bindQuery(parsed->children[0], db),
                             bindQuery(parsed->children[1], db));
        case LogicalNode::Kind::Project:
            return bindBlock(parsed, db);
        default:
            throw SchemaError("query must be a select block");
    }
}

LogicalPtr insertMerges(const LogicalPtr& bound, const UDatabase& db,
                        bool full_reconstruction) {
    switch (bound->kind) {
        case LogicalNode::Kind::Poss:
            return makePoss(insertMerges(bound->children[0], db, full_reconstruction));
        case LogicalNode::Kind::Union:
            return makeUnion(insertMerges(bound->children[0], db, full_reconstruction),
                             insertMerges(bound->children[1], db, full_reconstruction));
        default:
            return mergeBlock(bound, db, full_reconstruction);
    }
}

PlanPtr translate(const LogicalPtr& merged, const UDatabase& db) {
    return translateRec(merged, db);
}

double estimateRows(const PlanPtr& p) {
    constexpr double kSelectivity = 0.1;
    switch (p->kind) {
        case PlanNode::Kind::Scan:
            return static_cast<double>(p->scan_rows);
        case PlanNode::Kind::Select:
            return estimateRows(p->children[0]) *
                   std::pow(kSelectivity, static_cast<double>(p->cond.size()));
        case PlanNode::Kind::Project:
        case PlanNode::Kind::Poss:
            return estimateRows(p->children[0]);
        case PlanNode::Kind::Join:
            return estimateRows(p->children[0]) * estimateRows(p->children[1]) *
                   std::pow(kSelectivity, static_cast<double>(p->cond.size()));
        case PlanNode::Kind::Merge:
            return std::max(estimateRows(p->children[0]), estimateRows(p->children[1]));
        case PlanNode::Kind::Union:
            return estimateRows(p->children[0]) + estimateRows(p->children[1]);
    }
    return 0;
}

namespace {

void explainRec(const PlanPtr& p, int depth, std::ostringstream& out) {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    switch (p->kind) {
        case PlanNode::Kind::Scan:
            out << "scan " << p->rel_name << " partition " << p->partition_index;
            if (p->alias != p->rel_name) out << " as " << p->alias;
            break;
        case PlanNode::Kind::Select:
            out << "select [" << conditionText(p->cond) << "]";
            break;
        case PlanNode::Kind::Project: {
            out << "project [";
            for (std::size_t i = 0; i < p->proj.size(); ++i) {
                if (i) out << ", ";
                out << p->proj[i].first;
                if (p->proj[i].second != baseName(p->proj[i].first))
                    out << " as " << p->proj[i].second;
            }
            out << "]";
            break;
        }
        case PlanNode::Kind::Join:
            out << "join";
            if (!p->cond.empty()) out << " [" << conditionText(p->cond) << "]";
            break;
        case PlanNode::Kind::Merge:
            out << "merge";
            break;
        case PlanNode::Kind::Union:
            out << "union";
            break;
        case PlanNode::Kind::Poss:
            out << "poss";
            break;
    }
    std::size_t est = static_cast<std::size_t>(estimateRows(p) + 0.5);
    out << "  (~" << est << " rows)\n";
    for (const auto& c : p->children) explainRec(c, depth + 1, out);
}

}  // namespace

std::string explainPlan(const PlanPtr& p) {
    std::ostringstream out;
    explainRec(p, 0, out);
    return out.str();
}

PlanPtr planQuery(const LogicalPtr& parsed, const UDatabase& db, bool full_reconstruction) {
    return translate(insertMerges(bindQuery(parsed, db), db, full_reconstruction), db);
}

}  // namespace urel
