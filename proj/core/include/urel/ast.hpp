#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "urel/value.hpp"

namespace urel {

enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

const char* cmpOpText(CmpOp op);
bool cmpOpHolds(CmpOp op, int cmp);

struct Operand {
    bool is_column = false;
    std::string column;  // possibly alias-qualified "alias.attr"
    Value literal;

    static Operand col(std::string name) {
        Operand o;
        o.is_column = true;
        o.column = std::move(name);
        return o;
    }
    static Operand lit(Value v) {
        Operand o;
        o.literal = std::move(v);
        return o;
    }
    bool operator==(const Operand& other) const {
        return is_column == other.is_column && column == other.column &&
               literal == other.literal;
    }
};

struct CondAtom {
    Operand lhs;
    CmpOp op = CmpOp::Eq;
    Operand rhs;
    bool operator==(const CondAtom& other) const {
        return lhs == other.lhs && op == other.op && rhs == other.rhs;
    }
};

// Conjunction of atoms; empty means `true`.
using Condition = std::vector<CondAtom>;

std::string conditionText(const Condition& cond);

struct LogicalNode;
using LogicalPtr = std::shared_ptr<const LogicalNode>;

// AST of positive relational algebra plus poss. Poss may only appear as the
// outermost node. Merge and PartitionRef nodes appear after merge insertion.
struct LogicalNode {
    enum class Kind { Relation, Select, Project, Join, Union, Poss, Merge, PartitionRef };

    Kind kind;

    // Relation / PartitionRef
    std::string rel_name;
    std::string alias;
    std::size_t partition_index = 0;

    // Select / Join
    Condition cond;

    // Project: (source column, output name); `star` marks `select *`
    std::vector<std::pair<std::string, std::string>> proj;
    bool star = false;

    std::vector<LogicalPtr> children;
};

LogicalPtr makeRelation(std::string name, std::string alias);
LogicalPtr makePartitionRef(std::string rel, std::string alias, std::size_t index);
LogicalPtr makeSelect(Condition cond, LogicalPtr child);
LogicalPtr makeProject(std::vector<std::pair<std::string, std::string>> proj, bool star,
                       LogicalPtr child);
LogicalPtr makeJoin(Condition cond, LogicalPtr left, LogicalPtr right);
LogicalPtr makeUnion(LogicalPtr left, LogicalPtr right);
LogicalPtr makePoss(LogicalPtr child);
LogicalPtr makeMerge(LogicalPtr left, LogicalPtr right);

bool equalAst(const LogicalPtr& a, const LogicalPtr& b);

// Prints the AST back in the surface query syntax; parse(print(parse(q)))
// equals parse(q).
std::string printQuery(const LogicalPtr& q);

}  // namespace urel
