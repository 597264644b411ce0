#include "urel/ast.hpp"

#include "urel/errors.hpp"

namespace urel {

const char* cmpOpText(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "<>";
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

bool cmpOpHolds(CmpOp op, int cmp) {
    switch (op) {
        case CmpOp::Eq: return cmp == 0;
        case CmpOp::Ne: return cmp != 0;
        case CmpOp::Lt: return cmp < 0;
        case CmpOp::Gt: return cmp > 0;
        case CmpOp::Le: return cmp <= 0;
        case CmpOp::Ge: return cmp >= 0;
    }
    return false;
}

namespace {

std::string operandText(const Operand& o) {
    if (o.is_column) return o.column;
    switch (o.literal.tag()) {
        case ValueTag::Integer:
        case ValueTag::Decimal:
            return o.literal.toString();
        case ValueTag::String:
        case ValueTag::Date:
            return "'" + o.literal.toString() + "'";
    }
    return {};
}

}  // namespace

std::string conditionText(const Condition& cond) {
    std::string out;
    for (const auto& atom : cond) {
        if (!out.empty()) out += " and ";
        out += operandText(atom.lhs);
        out += cmpOpText(atom.op);
        out += operandText(atom.rhs);
    }
    return out;
}

LogicalPtr makeRelation(std::string name, std::string alias) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Relation;
    n->rel_name = std::move(name);
    n->alias = std::move(alias);
    return n;
}

LogicalPtr makePartitionRef(std::string rel, std::string alias, std::size_t index) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::PartitionRef;
    n->rel_name = std::move(rel);
    n->alias = std::move(alias);
    n->partition_index = index;
    return n;
}

LogicalPtr makeSelect(Condition cond, LogicalPtr child) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Select;
    n->cond = std::move(cond);
    n->children = {std::move(child)};
    return n;
}

LogicalPtr makeProject(std::vector<std::pair<std::string, std::string>> proj, bool star,
                       LogicalPtr child) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Project;
    n->proj = std::move(proj);
    n->star = star;
    n->children = {std::move(child)};
    return n;
}

LogicalPtr makeJoin(Condition cond, LogicalPtr left, LogicalPtr right) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Join;
    n->cond = std::move(cond);
    n->children = {std::move(left), std::move(right)};
    return n;
}

LogicalPtr makeUnion(LogicalPtr left, LogicalPtr right) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Union;
    n->children = {std::move(left), std::move(right)};
    return n;
}

LogicalPtr makePoss(LogicalPtr child) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Poss;
    n->children = {std::move(child)};
    return n;
}

LogicalPtr makeMerge(LogicalPtr left, LogicalPtr right) {
    auto n = std::make_shared<LogicalNode>();
    n->kind = LogicalNode::Kind::Merge;
    n->children = {std::move(left), std::move(right)};
    return n;
}

bool equalAst(const LogicalPtr& a, const LogicalPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind || a->rel_name != b->rel_name || a->alias != b->alias ||
        a->partition_index != b->partition_index || a->star != b->star || a->proj != b->proj ||
        !(a->cond == b->cond) || a->children.size() != b->children.size())
        return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!equalAst(a->children[i], b->children[i])) return false;
    return true;
}

namespace {

void collectFrom(const LogicalPtr& n, std::vector<const LogicalNode*>& rels) {
    if (n->kind == LogicalNode::Kind::Relation) {
        rels.push_back(n.get());
    } else {
        for (const auto& c : n->children) collectFrom(c, rels);
    }
}

std::string printSelect(const LogicalPtr& q) {
    const LogicalNode* proj = q.get();
    if (proj->kind != LogicalNode::Kind::Project)
        throw SchemaError("printQuery: expected projection at select root");
    const LogicalNode* body = proj->children[0].get();
    Condition where;
    LogicalPtr from = proj->children[0];
    if (body->kind == LogicalNode::Kind::Select) {
        where = body->cond;
        from = body->children[0];
    }

    std::string out = "select ";
    if (proj->star) {
        out += "*";
    } else {
        for (std::size_t i = 0; i < proj->proj.size(); ++i) {
            if (i) out += ", ";
            out += proj->proj[i].first;
        }
    }
    out += " from ";
    std::vector<const LogicalNode*> rels;
    collectFrom(from, rels);
    for (std::size_t i = 0; i < rels.size(); ++i) {
        if (i) out += ", ";
        out += rels[i]->rel_name;
        if (rels[i]->alias != rels[i]->rel_name) out += " " + rels[i]->alias;
    }
    if (!where.empty()) out += " where " + conditionText(where);
    return out;
}

}  // namespace

std::string printQuery(const LogicalPtr& q) {
    if (q->kind == LogicalNode::Kind::Poss)
        return "possible (" + printQuery(q->children[0]) + ")";
    if (q->kind == LogicalNode::Kind::Union)
        return printSelect(q->children[0]) + " union " + printSelect(q->children[1]);
    return printSelect(q);
}

}  // namespace urel
