#include "fixtures.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace fixtures {

WsDescriptor d(std::initializer_list<std::pair<const char*, int>> a) {
    std::vector<std::pair<VariableId, Value>> pairs;
    for (const auto& [var, val] : a) pairs.emplace_back(var, Value::integer(val));
    return WsDescriptor::of(std::move(pairs));
}

TupleId tid(const std::string& tag, const std::string& id) {
    return TupleId({{tag, Value::string(id)}});
}

std::vector<Value> vals(std::initializer_list<const char*> texts) {
    std::vector<Value> out;
    for (const char* t : texts) out.push_back(Value::parse(t));
    return out;
}

namespace {

Partition makePartition(const std::string& tag, std::vector<std::string> attrs,
                        std::vector<URow> rows) {
    Partition p;
    p.covered_attrs = attrs;
    p.rel = URelation(USchema{std::move(attrs), 1});
    for (auto& r : rows) p.rel.addRow(std::move(r));
    p.rel.canonicalize();
    (void)tag;
    return p;
}

}  // namespace

UDatabase battlefieldDb() {
    UDatabase db;
    for (const char* v : {"x", "y", "z"}) {
        db.world.addEntry(v, Value::integer(1));
        db.world.addEntry(v, Value::integer(2));
    }

    LogicalRelation rel;
    rel.attrs = {"Id", "Type", "Faction"};
    rel.partitions.push_back(makePartition(
        "R", {"Id"},
        {
            {d({}), tid("R", "a"), vals({"1"})},
            {d({{"x", 1}}), tid("R", "b"), vals({"2"})},
            {d({{"x", 2}}), tid("R", "b"), vals({"3"})},
            {d({{"x", 1}}), tid("R", "c"), vals({"3"})},
            {d({{"x", 2}}), tid("R", "c"), vals({"2"})},
            {d({}), tid("R", "d"), vals({"4"})},
        }));
    rel.partitions.push_back(makePartition(
        "R", {"Type"},
        {
            {d({}), tid("R", "a"), vals({"Tank"})},
            {d({}), tid("R", "b"), vals({"Transport"})},
            {d({}), tid("R", "c"), vals({"Tank"})},
            {d({{"y", 1}}), tid("R", "d"), vals({"Tank"})},
            {d({{"y", 2}}), tid("R", "d"), vals({"Transport"})},
        }));
    rel.partitions.push_back(makePartition(
        "R", {"Faction"},
        {
            {d({}), tid("R", "a"), vals({"Friend"})},
            {d({}), tid("R", "b"), vals({"Friend"})},
            {d({}), tid("R", "c"), vals({"Enemy"})},
            {d({{"z", 1}}), tid("R", "d"), vals({"Friend"})},
            {d({{"z", 2}}), tid("R", "d"), vals({"Enemy"})},
        }));
    db.relations.emplace("R", std::move(rel));
    db.reduced = true;
    return db;
}

UDatabase wsdnfDb() {
    UDatabase db;
    for (const char* v : {"c1", "c2"}) {
        db.world.addEntry(v, Value::integer(1));
        db.world.addEntry(v, Value::integer(2));
    }
    LogicalRelation rel;
    rel.attrs = {"A", "B"};
    rel.partitions.push_back(makePartition("T", {"A"},
                                           {
                                               {d({{"c1", 1}}), tid("T", "t1"), vals({"a1"})},
                                               {d({{"c2", 1}}), tid("T", "t2"), vals({"a2"})},
                                           }));
    rel.partitions.push_back(makePartition("T", {"B"},
                                           {
                                               {d({{"c1", 1}}), tid("T", "t1"), vals({"b1"})},
                                               {d({{"c1", 2}}), tid("T", "t1"), vals({"b2"})},
                                           }));
    db.relations.emplace("T", std::move(rel));
    return db;
}

UDatabase normalizationExampleDb() {
    UDatabase db;
    for (const char* v : {"c1", "c2", "c3"}) {
        db.world.addEntry(v, Value::integer(1));
        db.world.addEntry(v, Value::integer(2));
    }
    LogicalRelation rel;
    rel.attrs = {"A"};
    rel.partitions.push_back(
        makePartition("T", {"A"},
                      {
                          {d({{"c1", 1}}), tid("T", "t1"), vals({"a1"})},
                          {d({{"c1", 1}, {"c2", 2}}), tid("T", "t2"), vals({"a2"})},
                          {d({{"c1", 2}}), tid("T", "t2"), vals({"a3"})},
                          {d({{"c3", 1}}), tid("T", "t3"), vals({"a4"})},
                          {d({{"c3", 2}}), tid("T", "t3"), vals({"a5"})},
                      }));
    db.relations.emplace("T", std::move(rel));
    db.reduced = true;
    return db;
}

UDatabase chainDb(std::size_t n) {
    UDatabase db;
    auto var = [](std::size_t i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "c%02zu", i);
        return std::string(buf);
    };
    for (std::size_t i = 0; i < n; ++i) {
        db.world.addEntry(var(i), Value::integer(1));
        db.world.addEntry(var(i), Value::integer(2));
    }

    std::vector<URow> a_rows, b_rows;
    for (std::size_t i = 0; i < n; ++i) {
        TupleId t = tid("R", "t" + std::to_string(i));
        a_rows.push_back({WsDescriptor::of({{var(i), Value::integer(1)}}), t,
                          {Value::integer(1)}});
        a_rows.push_back({WsDescriptor::of({{var(i), Value::integer(2)}}), t,
                          {Value::integer(0)}});
        std::size_t next = (i + 1) % n;
        b_rows.push_back({WsDescriptor::of({{var(next), Value::integer(1)}}), t,
                          {Value::integer(1)}});
        b_rows.push_back({WsDescriptor::of({{var(next), Value::integer(2)}}), t,
                          {Value::integer(0)}});
    }

    LogicalRelation rel;
    rel.attrs = {"A", "B"};
    rel.partitions.push_back(makePartition("R", {"A"}, std::move(a_rows)));
    rel.partitions.push_back(makePartition("R", {"B"}, std::move(b_rows)));
    db.relations.emplace("R", std::move(rel));
    db.reduced = true;
    return db;
}

UDatabase randomReducedDb(std::mt19937_64& rng, const RandomDbOpts& opts) {
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    UDatabase db;
    std::size_t nvars = 1 + below(opts.max_vars);
    std::vector<VariableId> vars;
    for (std::size_t i = 0; i < nvars; ++i) {
        VariableId v = "v" + std::to_string(i);
        std::size_t dom = 2 + below(opts.max_dom - 1);
        for (std::size_t l = 1; l <= dom; ++l) db.world.addEntry(v, Value::integer(l));
        vars.push_back(v);
    }

    std::size_t rows = 0;
    std::size_t nrels = 1 + below(opts.max_rels);
    for (std::size_t r = 0; r < nrels; ++r) {
        std::string name = "R" + std::to_string(r);
        std::size_t nattrs = 1 + below(2);
        LogicalRelation rel;
        static const char* names[] = {"A", "B"};
        for (std::size_t a = 0; a < nattrs; ++a) rel.attrs.push_back(names[a]);
        std::vector<std::vector<URow>> part_rows(nattrs);

        std::size_t ntuples = 1 + below(3);
        for (std::size_t t = 0; t < ntuples && rows + nattrs * opts.max_dom <= opts.max_rows;
             ++t) {
            WsDescriptor guard;
            if (below(2) == 0) {
                const VariableId& v = vars[below(vars.size())];
                std::size_t dom = db.world.domainOf(v).size();
                guard = WsDescriptor::of({{v, Value::integer(1 + (std::int64_t)below(dom))}});
            }
            TupleId t_id = tid(name, "t" + std::to_string(t));
            std::vector<VariableId> free_vars;
            for (const VariableId& v : vars)
                if (!guard.valueOf(v).has_value()) free_vars.push_back(v);
            for (std::size_t a = 0; a < nattrs; ++a) {
                if (free_vars.empty() || below(2) == 0) {
                    part_rows[a].push_back({guard, t_id, {Value::integer((std::int64_t)below(4))}});
                    ++rows;
                } else {
                    // split this attribute on one variable not in the guard
                    VariableId v = free_vars[below(free_vars.size())];
                    for (const Value& l : db.world.domainOf(v)) {
                        part_rows[a].push_back({guard.combinedWith(WsDescriptor::of({{v, l}})),
                                                t_id,
                                                {Value::integer((std::int64_t)below(4))}});
                        ++rows;
                    }
                }
            }
        }
        for (std::size_t a = 0; a < nattrs; ++a)
            rel.partitions.push_back(makePartition(name, {rel.attrs[a]}, std::move(part_rows[a])));
        db.relations.emplace(name, std::move(rel));
    }
    db.reduced = true;
    return db;
}

UDatabase randomThreePartDb(std::mt19937_64& rng) {
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    UDatabase db;
    std::size_t nvars = 2 + below(2);
    std::vector<VariableId> vars;
    for (std::size_t i = 0; i < nvars; ++i) {
        VariableId v = "v" + std::to_string(i);
        for (std::size_t l = 1; l <= 2; ++l) db.world.addEntry(v, Value::integer(l));
        vars.push_back(v);
    }

    LogicalRelation t;
    t.attrs = {"A", "B", "C"};
    std::vector<std::vector<URow>> parts(3);
    std::size_t ntuples = 2 + below(3);
    for (std::size_t i = 0; i < ntuples; ++i) {
        WsDescriptor guard;
        if (below(2) == 0) {
            const VariableId& v = vars[below(vars.size())];
            guard = WsDescriptor::of({{v, Value::integer(1 + (std::int64_t)below(2))}});
        }
        TupleId t_id = tid("T", "t" + std::to_string(i));
        for (std::size_t a = 0; a < 3; ++a) {
            if (below(2) == 0) {
                parts[a].push_back({guard, t_id, {Value::integer((std::int64_t)below(3))}});
            } else {
                VariableId v;
                do {
                    v = vars[below(vars.size())];
                } while (guard.valueOf(v).has_value());
                for (const Value& l : db.world.domainOf(v))
                    parts[a].push_back({guard.combinedWith(WsDescriptor::of({{v, l}})), t_id,
                                        {Value::integer((std::int64_t)below(3))}});
            }
        }
    }
    for (std::size_t a = 0; a < 3; ++a)
        t.partitions.push_back(makePartition("T", {t.attrs[a]}, std::move(parts[a])));
    db.relations.emplace("T", std::move(t));

    LogicalRelation s;
    s.attrs = {"D"};
    std::vector<URow> srows;
    std::size_t nsrows = 1 + below(3);
    for (std::size_t i = 0; i < nsrows; ++i) {
        WsDescriptor guard;
        if (below(2) == 0) {
            const VariableId& v = vars[below(vars.size())];
            guard = WsDescriptor::of({{v, Value::integer(1 + (std::int64_t)below(2))}});
        }
        srows.push_back({guard, tid("S", "s" + std::to_string(i)),
                         {Value::integer((std::int64_t)below(3))}});
    }
    s.partitions.push_back(makePartition("S", {"D"}, std::move(srows)));
    db.relations.emplace("S", std::move(s));

    db.reduced = true;
    return db;
}

LogicalPtr randomQuery(std::mt19937_64& rng, const UDatabase& db, std::size_t max_joins) {
    auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    std::vector<std::string> rel_names;
    for (const auto& [name, rel] : db.relations) rel_names.push_back(name);

    std::size_t nitems = 1 + below(max_joins + 1);
    LogicalPtr tree;
    std::vector<std::string> cols;  // qualified alias.attr
    for (std::size_t i = 0; i < nitems; ++i) {
        const std::string& rel = rel_names[below(rel_names.size())];
        std::string alias = "q" + std::to_string(i);
        for (const auto& a : db.relation(rel).attrs) cols.push_back(alias + "." + a);
        LogicalPtr leaf = makeRelation(rel, alias);
        tree = tree ? makeJoin({}, tree, leaf) : leaf;
    }

    Condition cond;
    std::size_t natoms = below(4);
    for (std::size_t i = 0; i < natoms; ++i) {
        CondAtom atom;
        atom.lhs = Operand::col(cols[below(cols.size())]);
        static const CmpOp ops[] = {CmpOp::Eq, CmpOp::Eq, CmpOp::Ne, CmpOp::Lt,
                                    CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
        atom.op = ops[below(std::size(ops))];
        if (below(2) == 0)
            atom.rhs = Operand::col(cols[below(cols.size())]);
        else
            atom.rhs = Operand::lit(Value::integer((std::int64_t)below(4)));
        cond.push_back(std::move(atom));
    }
    if (!cond.empty()) tree = makeSelect(std::move(cond), tree);

    std::vector<std::pair<std::string, std::string>> proj;
    std::size_t nproj = 1 + below(cols.size());
    for (std::size_t i = 0; i < nproj; ++i)
        proj.emplace_back(cols[below(cols.size())], "o" + std::to_string(i));
    return makeProject(std::move(proj), false, tree);
}

std::string plainToString(const PlainRelation& r) {
    std::ostringstream out;
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i].toString();
        out << "\n";
    }
    return out.str();
}

std::string plainDbToString(const PlainDatabase& db) {
    std::ostringstream out;
    for (const auto& [name, rel] : db.relations) out << name << "\n" << plainToString(rel);
    return out.str();
}

std::vector<std::string> worldSetSignature(const UDatabase& db, std::size_t limit) {
    std::vector<std::string> sigs;
    for (const TotalValuation& f : enumerateWorlds(db.world, limit))
        sigs.push_back(plainDbToString(instantiate(db, f)));
    std::sort(sigs.begin(), sigs.end());
    return sigs;
}

PlainRelation instantiateRelation(const URelation& u, const TotalValuation& f) {
    PlainRelation out;
    out.attrs = u.schema().attrs;
    for (const URow& r : u.rows())
        if (r.d.extendedBy(f)) out.rows.insert(r.a);
    return out;
}

}  // namespace fixtures
