#include "urel/worlds.hpp"

#include <algorithm>
#include <unordered_map>

#include "urel/columns.hpp"
#include "urel/errors.hpp"

namespace urel {

bool ValueVecLess::operator()(const std::vector<Value>& a, const std::vector<Value>& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (!(a[i] == b[i])) return a[i].canonicalLess(b[i]);
    return a.size() < b.size();
}

std::vector<TotalValuation> enumerateWorlds(const WorldTable& w, std::size_t limit) {
    std::size_t count = w.worldCountCapped(limit);
    if (count > limit)
        throw WorldLimitExceeded("world count exceeds limit of " + std::to_string(limit));

    std::vector<VariableId> vars = w.variables();
    std::vector<TotalValuation> out;
    out.reserve(count);

    // Odometer over sorted variables, most significant first; value order
    // follows the world-table file.
    std::vector<std::size_t> idx(vars.size(), 0);
    for (std::size_t n = 0; n < count; ++n) {
        TotalValuation f;
        for (std::size_t i = 0; i < vars.size(); ++i) f[vars[i]] = w.domainOf(vars[i])[idx[i]];
        out.push_back(std::move(f));
        for (std::size_t i = vars.size(); i-- > 0;) {
            if (++idx[i] < w.domainOf(vars[i]).size()) break;
            idx[i] = 0;
        }
    }
    return out;
}

PlainDatabase instantiate(const UDatabase& db, const TotalValuation& f) {
    PlainDatabase out;
    for (const auto& [name, rel] : db.relations) {
        PlainRelation plain;
        plain.attrs = rel.attrs;

        struct Partial {
            std::vector<Value> values;
            std::vector<bool> present;
        };
        std::unordered_map<TupleId, Partial, TupleIdHash> by_tid;

        for (const Partition& p : rel.partitions) {
            std::vector<std::size_t> attr_pos;
            for (const auto& a : p.covered_attrs) {
                auto it = std::find(rel.attrs.begin(), rel.attrs.end(), a);
                attr_pos.push_back(static_cast<std::size_t>(it - rel.attrs.begin()));
            }
            for (const URow& r : p.rel.rows()) {
                if (!r.d.extendedBy(f)) continue;
                auto& partial = by_tid[r.t];
                if (partial.values.empty()) {
                    partial.values.resize(rel.attrs.size());
                    partial.present.resize(rel.attrs.size(), false);
                }
                for (std::size_t k = 0; k < attr_pos.size(); ++k) {
                    partial.values[attr_pos[k]] = r.a[k];
                    partial.present[attr_pos[k]] = true;
                }
            }
        }
        for (auto& [tid, partial] : by_tid) {
            if (std::all_of(partial.present.begin(), partial.present.end(),
                            [](bool b) { return b; }))
                plain.rows.insert(std::move(partial.values));
        }
        out.relations.emplace(name, std::move(plain));
    }
    return out;
}

namespace {

struct Rel {
    std::vector<std::string> attrs;
    std::vector<std::vector<Value>> rows;
};

Value operandValue(const Operand& o, const std::vector<std::string>& attrs,
                   const std::vector<Value>& row) {
    if (!o.is_column) return o.literal;
    return row[resolveColumn(attrs, o.column)];
}

bool condHolds(const Condition& cond, const std::vector<std::string>& attrs,
               const std::vector<Value>& row) {
    for (const auto& atom : cond) {
        Value l = operandValue(atom.lhs, attrs, row);
        Value r = operandValue(atom.rhs, attrs, row);
        if (!cmpOpHolds(atom.op, l.compare(r))) return false;
    }
    return true;
}

Rel evalRec(const LogicalPtr& q, const PlainDatabase& db) {
    switch (q->kind) {
        case LogicalNode::Kind::Relation: {
            auto it = db.relations.find(q->rel_name);
            if (it == db.relations.end()) throw UnknownRelation(q->rel_name);
            Rel out;
            for (const auto& a : it->second.attrs) out.attrs.push_back(q->alias + "." + a);
            out.rows.assign(it->second.rows.begin(), it->second.rows.end());
            return out;
        }
        case LogicalNode::Kind::Select: {
            Rel in = evalRec(q->children[0], db);
            Rel out;
            out.attrs = in.attrs;
            for (auto& r : in.rows)
                if (condHolds(q->cond, in.attrs, r)) out.rows.push_back(std::move(r));
            return out;
        }
        case LogicalNode::Kind::Project: {
            Rel in = evalRec(q->children[0], db);
            Rel out;
            std::vector<std::size_t> idx;
            if (q->star) {
                out.attrs = in.attrs;
                for (std::size_t i = 0; i < in.attrs.size(); ++i) idx.push_back(i);
            } else {
                for (const auto& [src, name] : q->proj) {
                    idx.push_back(resolveColumn(in.attrs, src));
                    out.attrs.push_back(name);
                }
            }
            for (const auto& r : in.rows) {
                std::vector<Value> projected;
                projected.reserve(idx.size());
                for (std::size_t i : idx) projected.push_back(r[i]);
                out.rows.push_back(std::move(projected));
            }
            return out;
        }
        case LogicalNode::Kind::Join: {
            Rel left = evalRec(q->children[0], db);
            Rel right = evalRec(q->children[1], db);
            Rel out;
            out.attrs = left.attrs;
            out.attrs.insert(out.attrs.end(), right.attrs.begin(), right.attrs.end());
            for (const auto& l : left.rows) {
                for (const auto& r : right.rows) {
                    std::vector<Value> joined = l;
                    joined.insert(joined.end(), r.begin(), r.end());
                    if (condHolds(q->cond, out.attrs, joined))
                        out.rows.push_back(std::move(joined));
                }
            }
            return out;
        }
        case LogicalNode::Kind::Union: {
            Rel left = evalRec(q->children[0], db);
            Rel right = evalRec(q->children[1], db);
            if (left.attrs != right.attrs)
                throw SchemaError("union branches have different attribute lists");
            Rel out = std::move(left);
            out.rows.insert(out.rows.end(), right.rows.begin(), right.rows.end());
            return out;
        }
        case LogicalNode::Kind::Poss:
            throw SchemaError("poss is not allowed inside the per-world evaluator");
        case LogicalNode::Kind::Merge:
        case LogicalNode::Kind::PartitionRef:
            throw SchemaError("merged plans cannot be evaluated by the worlds oracle");
    }
    throw SchemaError("unreachable");
}

LogicalPtr stripPoss(const LogicalPtr& q) {
    return q->kind == LogicalNode::Kind::Poss ? q->children[0] : q;
}

}  // namespace

PlainRelation evalPlain(const LogicalPtr& q, const PlainDatabase& db) {
    Rel r = evalRec(q, db);
    PlainRelation out;
    out.attrs = std::move(r.attrs);
    for (auto& row : r.rows) out.rows.insert(std::move(row));
    return out;
}

PlainRelation possOracle(const LogicalPtr& q, const UDatabase& db, std::size_t limit) {
    LogicalPtr body = stripPoss(q);
    PlainRelation out;
    bool first = true;
    for (const TotalValuation& f : enumerateWorlds(db.world, limit)) {
        PlainRelation r = evalPlain(body, instantiate(db, f));
        if (first) {
            out = std::move(r);
            first = false;
        } else {
            out.rows.insert(r.rows.begin(), r.rows.end());
        }
    }
    return out;
}

PlainRelation certainOracle(const LogicalPtr& q, const UDatabase& db, std::size_t limit) {
    LogicalPtr body = stripPoss(q);
    PlainRelation out;
    bool first = true;
    for (const TotalValuation& f : enumerateWorlds(db.world, limit)) {
        PlainRelation r = evalPlain(body, instantiate(db, f));
        if (first) {
            out = std::move(r);
            first = false;
        } else {
            PlainRows kept;
            for (const auto& row : out.rows)
                if (r.rows.count(row)) kept.insert(row);
            out.rows = std::move(kept);
        }
    }
    return out;
}

}  // namespace urel
