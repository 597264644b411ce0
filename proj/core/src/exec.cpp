#include "urel/exec.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "urel/columns.hpp"
#include "urel/errors.hpp"
#include "urel/optimizer.hpp"

namespace urel {

namespace {

struct BoundOperand {
    bool is_column;
    std::size_t idx = 0;
    Value lit;
};

struct BoundAtom {
    BoundOperand lhs;
    CmpOp op;
    BoundOperand rhs;
};

BoundOperand bindOperand(const Operand& o, const std::vector<std::string>& attrs) {
    BoundOperand b;
    b.is_column = o.is_column;
    if (o.is_column) b.idx = resolveColumn(attrs, o.column);
    else b.lit = o.literal;
    return b;
}

std::vector<BoundAtom> bindCond(const Condition& cond, const std::vector<std::string>& attrs) {
    std::vector<BoundAtom> out;
    for (const auto& atom : cond)
        out.push_back({bindOperand(atom.lhs, attrs), atom.op, bindOperand(atom.rhs, attrs)});
    return out;
}

bool holds(const std::vector<BoundAtom>& cond, const std::vector<Value>& row) {
    for (const auto& a : cond) {
        const Value& l = a.lhs.is_column ? row[a.lhs.idx] : a.lhs.lit;
        const Value& r = a.rhs.is_column ? row[a.rhs.idx] : a.rhs.lit;
        if (!cmpOpHolds(a.op, l.compare(r))) return false;
    }
    return true;
}

std::set<std::string> originTags(const URelation& u) {
    std::set<std::string> tags;
    for (const URow& r : u.rows())
        for (const TidAtom& a : r.t.atoms()) tags.insert(a.tag);
    return tags;
}

bool tagsIntersect(const std::set<std::string>& a, const std::set<std::string>& b) {
    for (const auto& t : a)
        if (b.count(t)) return true;
    return false;
}

struct ValueVecHash {
    std::size_t operator()(const std::vector<Value>& v) const {
        std::size_t h = 1469598103934665603ull;
        ValueHash vh;
        for (const Value& x : v) h = (h ^ vh(x)) * 1099511628211ull;
        return h;
    }
};

}  // namespace

URelation opSelect(const URelation& u, const Condition& cond) {
    auto bound = bindCond(cond, u.schema().attrs);
    URelation out(u.schema());
    for (const URow& r : u.rows())
        if (holds(bound, r.a)) out.addRow(r);
    out.canonicalize();
    return out;
}

URelation opProject(const URelation& u,
                    const std::vector<std::pair<std::string, std::string>>& proj) {
    std::vector<std::size_t> idx;
    USchema schema;
    schema.tid_arity = u.schema().tid_arity;
    for (const auto& [src, out_name] : proj) {
        idx.push_back(resolveColumn(u.schema().attrs, src));
        schema.attrs.push_back(out_name);
    }
    URelation out(schema);
    for (const URow& r : u.rows()) {
        URow nr;
        nr.d = r.d;
        nr.t = r.t;
        for (std::size_t i : idx) nr.a.push_back(r.a[i]);
        out.addRow(std::move(nr));
    }
    out.canonicalize();
    return out;
}

URelation opJoin(const URelation& l, const URelation& r, const Condition& cond) {
    if (tagsIntersect(originTags(l), originTags(r)))
        throw AliasingError("join operands share a tuple-id origin; alias self-joins");

    USchema schema;
    schema.attrs = l.schema().attrs;
    schema.attrs.insert(schema.attrs.end(), r.schema().attrs.begin(),
                        r.schema().attrs.end());
    schema.tid_arity = l.schema().tid_arity + r.schema().tid_arity;

    // Split the condition into cross-operand equality keys and a residual.
    std::vector<std::pair<std::size_t, std::size_t>> keys;  // (left idx, right idx)
    Condition residual;
    for (const auto& atom : cond) {
        if (atom.op == CmpOp::Eq && atom.lhs.is_column && atom.rhs.is_column) {
            bool ll = columnResolves(l.schema().attrs, atom.lhs.column);
            bool lr = columnResolves(r.schema().attrs, atom.lhs.column);
            bool rl = columnResolves(l.schema().attrs, atom.rhs.column);
            bool rr = columnResolves(r.schema().attrs, atom.rhs.column);
            if (ll && !lr && rr && !rl) {
                keys.emplace_back(resolveColumn(l.schema().attrs, atom.lhs.column),
                                  resolveColumn(r.schema().attrs, atom.rhs.column));
                continue;
            }
            if (rl && !rr && lr && !ll) {
                keys.emplace_back(resolveColumn(l.schema().attrs, atom.rhs.column),
                                  resolveColumn(r.schema().attrs, atom.lhs.column));
                continue;
            }
        }
        residual.push_back(atom);
    }
    auto bound_residual = bindCond(residual, schema.attrs);

    URelation out(schema);
    auto emit = [&](const URow& a, const URow& b) {
        if (!a.d.consistentWith(b.d)) return;
        URow nr;
        nr.a = a.a;
        nr.a.insert(nr.a.end(), b.a.begin(), b.a.end());
        if (!holds(bound_residual, nr.a)) return;
        nr.d = a.d.combinedWith(b.d);
        nr.t = a.t.concatenated(b.t);
        out.addRow(std::move(nr));
    };

    if (keys.empty()) {
        for (const URow& a : l.rows())
            for (const URow& b : r.rows()) emit(a, b);
    } else {
        std::unordered_map<std::vector<Value>, std::vector<const URow*>, ValueVecHash> index;
        for (const URow& a : l.rows()) {
            std::vector<Value> k;
            for (const auto& [li, ri] : keys) k.push_back(a.a[li]);
            index[std::move(k)].push_back(&a);
        }
        for (const URow& b : r.rows()) {
            std::vector<Value> k;
            for (const auto& [li, ri] : keys) k.push_back(b.a[ri]);
            auto it = index.find(k);
            if (it == index.end()) continue;
            for (const URow* a : it->second) emit(*a, b);
        }
    }
    out.canonicalize();
    return out;
}

URelation opMerge(const URelation& l, const URelation& r) {
    USchema schema;
    schema.attrs = l.schema().attrs;
    std::vector<std::size_t> r_extra;                      // right attrs not on the left
    std::vector<std::pair<std::size_t, std::size_t>> shared;  // (left idx, right idx)
    for (std::size_t i = 0; i < r.schema().attrs.size(); ++i) {
        const std::string& a = r.schema().attrs[i];
        auto it = std::find(l.schema().attrs.begin(), l.schema().attrs.end(), a);
        if (it == l.schema().attrs.end()) {
            schema.attrs.push_back(a);
            r_extra.push_back(i);
        } else {
            shared.emplace_back(static_cast<std::size_t>(it - l.schema().attrs.begin()), i);
        }
    }

    if (l.empty() || r.empty()) {
        schema.tid_arity = std::max(l.schema().tid_arity, r.schema().tid_arity);
        return URelation(schema);
    }

    // Rows pair on the shared-origin portion of their ids; non-shared right
    // atoms (a merge pulled above a join) carry over into the output id.
    std::set<std::string> shared_tags;
    {
        std::set<std::string> lt = originTags(l), rt = originTags(r);
        for (const auto& t : lt)
            if (rt.count(t)) shared_tags.insert(t);
        if (shared_tags.empty())
            throw MergeOriginError("merge operands stem from different origins");
    }
    auto key = [&](const TupleId& t) {
        std::vector<TidAtom> k;
        for (const TidAtom& a : t.atoms())
            if (shared_tags.count(a.tag)) k.push_back(a);
        std::sort(k.begin(), k.end(),
                  [](const TidAtom& x, const TidAtom& y) { return x.canonicalLess(y); });
        return TupleId(std::move(k));
    };

    std::unordered_map<TupleId, std::vector<const URow*>, TupleIdHash> by_key;
    for (const URow& b : r.rows()) by_key[key(b.t)].push_back(&b);

    std::size_t r_carry = 0;
    for (const TidAtom& a : r.rows().front().t.atoms())
        if (!shared_tags.count(a.tag)) ++r_carry;
    schema.tid_arity = l.schema().tid_arity + r_carry;

    URelation out(schema);
    for (const URow& a : l.rows()) {
        auto it = by_key.find(key(a.t));
        if (it == by_key.end()) continue;
        for (const URow* b : it->second) {
            if (!a.d.consistentWith(b->d)) continue;
            bool agree = true;
            for (const auto& [li, ri] : shared)
                if (a.a[li] != b->a[ri]) {
                    agree = false;
                    break;
                }
            if (!agree) continue;
            URow nr;
            nr.d = a.d.combinedWith(b->d);
            std::vector<TidAtom> atoms = a.t.atoms();
            for (const TidAtom& atom : b->t.atoms())
                if (!shared_tags.count(atom.tag)) atoms.push_back(atom);
            nr.t = TupleId(std::move(atoms));
            nr.a = a.a;
            for (std::size_t i : r_extra) nr.a.push_back(b->a[i]);
            out.addRow(std::move(nr));
        }
    }
    out.canonicalize();
    return out;
}

URelation opUnion(const URelation& l, const URelation& r) {
    if (l.schema().attrs != r.schema().attrs)
        throw SchemaError("union branches have different attribute lists");

    USchema schema;
    schema.attrs = l.schema().attrs;
    schema.tid_arity = std::max(l.schema().tid_arity, r.schema().tid_arity);

    URelation out(schema);
    auto add = [&](const URelation& side, const char* prefix) {
        for (const URow& row : side.rows()) {
            URow nr = row;
            nr.t = nr.t.retagged(prefix);
            std::vector<TidAtom> atoms = nr.t.atoms();
            while (atoms.size() < schema.tid_arity)
                atoms.push_back({"pad", Value::integer(0)});
            nr.t = TupleId(std::move(atoms));
            out.addRow(std::move(nr));
        }
    };
    add(l, "L");
    add(r, "R");
    out.canonicalize();
    return out;
}

PlainRelation opPoss(const URelation& u) {
    PlainRelation out;
    out.attrs = u.schema().attrs;
    for (const URow& r : u.rows()) out.rows.insert(r.a);
    return out;
}

URelation evaluate(const PlanPtr& p, const UDatabase& db) {
    switch (p->kind) {
        case PlanNode::Kind::Scan: {
            const Partition& part = db.relation(p->rel_name).partitions[p->partition_index];
            USchema schema;
            schema.attrs = p->attrs;
            schema.tid_arity = part.rel.schema().tid_arity;
            URelation out(schema);
            for (const URow& r : part.rel.rows()) {
                URow nr = r;
                if (p->alias != p->rel_name) nr.t = nr.t.retagged(p->alias);
                out.addRow(std::move(nr));
            }
            out.canonicalize();
            return out;
        }
        case PlanNode::Kind::Select:
            return opSelect(evaluate(p->children[0], db), p->cond);
        case PlanNode::Kind::Project:
            return opProject(evaluate(p->children[0], db), p->proj);
        case PlanNode::Kind::Join:
            return opJoin(evaluate(p->children[0], db), evaluate(p->children[1], db),
                          p->cond);
        case PlanNode::Kind::Merge:
            return opMerge(evaluate(p->children[0], db), evaluate(p->children[1], db));
        case PlanNode::Kind::Union:
            return opUnion(evaluate(p->children[0], db), evaluate(p->children[1], db));
        case PlanNode::Kind::Poss:
            throw SchemaError("poss produces a plain relation; use possAnswers");
    }
    throw SchemaError("unreachable");
}

namespace {

using TidIndex = std::unordered_map<TupleId, std::vector<const URow*>, TupleIdHash>;

bool completable(const LogicalRelation& rel, const std::vector<TidIndex>& by_tid,
                 const std::set<std::string>& missing, const WsDescriptor& acc,
                 const TupleId& t) {
    if (missing.empty()) return true;
    const std::string& attr = *missing.begin();
    for (std::size_t q = 0; q < rel.partitions.size(); ++q) {
        const Partition& p = rel.partitions[q];
        if (std::find(p.covered_attrs.begin(), p.covered_attrs.end(), attr) ==
            p.covered_attrs.end())
            continue;
        auto it = by_tid[q].find(t);
        if (it == by_tid[q].end()) continue;
        for (const URow* r : it->second) {
            if (!acc.consistentWith(r->d)) continue;
            std::set<std::string> rest = missing;
            for (const auto& a : p.covered_attrs) rest.erase(a);
            if (completable(rel, by_tid, rest, acc.combinedWith(r->d), t)) return true;
        }
    }
    return false;
}

}  // namespace

UDatabase reduce(const UDatabase& db) {
    UDatabase out;
    out.world = db.world;
    out.normalized = db.normalized;
    out.reduced = true;

    for (const auto& [name, rel] : db.relations) {
        std::vector<TidIndex> by_tid(rel.partitions.size());
        for (std::size_t q = 0; q < rel.partitions.size(); ++q)
            for (const URow& r : rel.partitions[q].rel.rows()) by_tid[q][r.t].push_back(&r);

        LogicalRelation nrel;
        nrel.attrs = rel.attrs;
        for (std::size_t q = 0; q < rel.partitions.size(); ++q) {
            const Partition& p = rel.partitions[q];
            Partition np;
            np.covered_attrs = p.covered_attrs;
            np.rel = URelation(p.rel.schema());
            std::set<std::string> missing(rel.attrs.begin(), rel.attrs.end());
            for (const auto& a : p.covered_attrs) missing.erase(a);
            for (const URow& r : p.rel.rows())
                if (completable(rel, by_tid, missing, r.d, r.t)) np.rel.addRow(r);
            np.rel.canonicalize();
            nrel.partitions.push_back(std::move(np));
        }
        out.relations.emplace(name, std::move(nrel));
    }
    return out;
}

PlainRelation certainAnswers(const URelation& u, const WorldTable& w) {
    if (u.schema().tid_arity == 0) throw NotTupleLevel();
    struct ValueLess {
        bool operator()(const Value& a, const Value& b) const { return a.canonicalLess(b); }
    };
    // witness[values][var] = guarded domain values
    std::map<std::vector<Value>, std::map<VariableId, std::set<Value, ValueLess>>,
             ValueVecLess>
        witness;
    for (const URow& r : u.rows()) {
        if (r.d.size() != 1) throw NotNormalized();
        const auto& [var, val] = r.d.assignments()[0];
        witness[r.a][var].insert(val);
    }

    PlainRelation out;
    out.attrs = u.schema().attrs;
    for (const auto& [values, by_var] : witness) {
        for (const auto& [var, covered] : by_var) {
            const auto& dom = w.domainOf(var);
            bool full = true;
            for (const Value& v : dom)
                if (!covered.count(v)) {
                    full = false;
                    break;
                }
            if (full) {
                out.rows.insert(values);
                break;
            }
        }
    }
    return out;
}

namespace {

LogicalPtr stripPossRoot(const LogicalPtr& q) {
    return q->kind == LogicalNode::Kind::Poss ? q->children[0] : q;
}

}  // namespace

PlainRelation possAnswers(const LogicalPtr& parsed, const UDatabase& db) {
    const UDatabase* use = &db;
    UDatabase reduced_db;
    if (!db.reduced) {
        reduced_db = reduce(db);
        use = &reduced_db;
    }
    PlanPtr plan = optimize(planQuery(stripPossRoot(parsed), *use));
    return opPoss(evaluate(plan, *use));
}

PlainRelation certainAnswersForQuery(const LogicalPtr& parsed, const UDatabase& db,
                                     std::size_t guard) {
    const UDatabase* use = &db;
    UDatabase reduced_db;
    if (!db.reduced) {
        reduced_db = reduce(db);
        use = &reduced_db;
    }
    PlanPtr plan = planQuery(stripPossRoot(parsed), *use, /*full_reconstruction=*/true);
    URelation u = evaluate(plan, *use);

    UDatabase tmp;
    tmp.world = use->world;
    tmp.reduced = true;
    LogicalRelation rel;
    rel.attrs = u.schema().attrs;
    rel.partitions.push_back({u, u.schema().attrs});
    tmp.relations.emplace("result", std::move(rel));

    UDatabase norm = normalize(tmp, guard);
    const URelation& nu = norm.relations.at("result").partitions[0].rel;
    return certainAnswers(nu, norm.world);
}

}  // namespace urel
