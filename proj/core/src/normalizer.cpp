#include "urel/normalizer.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "urel/errors.hpp"

namespace urel {

namespace {

struct UnionFind {
    std::map<VariableId, VariableId> parent;

    void add(const VariableId& v) { parent.emplace(v, v); }

    VariableId find(const VariableId& v) {
        VariableId r = v;
        while (parent[r] != r) r = parent[r];
        VariableId c = v;
        while (parent[c] != c) {
            VariableId next = parent[c];
            parent[c] = r;
            c = next;
        }
        return r;
    }

    void unite(const VariableId& a, const VariableId& b) {
        VariableId ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
};

std::string fusedValueText(const std::vector<Value>& vals) {
    std::string s = "(";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) s += ",";
        s += vals[i].toString();
    }
    s += ")";
    return s;
}

constexpr const char* kAlwaysVar = "comp:always";

}  // namespace

std::vector<std::vector<VariableId>> cooccurrenceComponents(const UDatabase& db) {
    UnionFind uf;
    for (const VariableId& v : db.world.variables()) uf.add(v);
    for (const auto& [name, rel] : db.relations) {
        for (const Partition& p : rel.partitions) {
            for (const URow& r : p.rel.rows()) {
                const auto& as = r.d.assignments();
                for (const auto& [var, val] : as) uf.add(var);
                for (std::size_t i = 1; i < as.size(); ++i)
                    uf.unite(as[0].first, as[i].first);
            }
        }
    }
    std::map<VariableId, std::vector<VariableId>> by_root;
    for (const auto& [v, _] : uf.parent) by_root[uf.find(v)].push_back(v);
    std::vector<std::vector<VariableId>> out;
    for (auto& [root, members] : by_root) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

UDatabase normalize(const UDatabase& db, std::size_t guard) {
    if (!db.reduced) throw NotReduced();

    auto components = cooccurrenceComponents(db);

    struct Comp {
        std::string id;
        std::vector<VariableId> members;
    };
    std::vector<Comp> comps;
    std::map<VariableId, std::size_t> comp_of;
    for (auto& members : components) {
        Comp c;
        c.id = members.size() == 1 ? members[0] : "comp:" + members[0];
        c.members = std::move(members);
        for (const VariableId& v : c.members) comp_of[v] = comps.size();
        comps.push_back(std::move(c));
    }

    const bool prob = db.world.probabilistic();
    WorldTable world;
    std::size_t emitted = 0;
    auto countRow = [&](std::size_t n) {
        if (n > guard - std::min(emitted, guard)) {
            std::size_t offender = 0;
            for (const Comp& c : comps) offender = std::max(offender, c.members.size());
            throw OutputGuardExceeded(offender, guard);
        }
        emitted += n;
    };

    for (const Comp& c : comps) {
        if (c.members.size() == 1) {
            const VariableId& v = c.members[0];
            const auto& dom = db.world.domainOf(v);
            countRow(dom.size());
            for (const Value& val : dom) {
                if (prob) world.addEntry(v, val, db.world.probabilityOf(v, val));
                else world.addEntry(v, val);
            }
            continue;
        }
        std::size_t product = 1;
        for (const VariableId& v : c.members) {
            std::size_t n = db.world.domainOf(v).size();
            if (product > guard / n) throw OutputGuardExceeded(c.members.size(), guard);
            product *= n;
        }
        countRow(product);
        std::vector<std::size_t> idx(c.members.size(), 0);
        for (std::size_t n = 0; n < product; ++n) {
            std::vector<Value> vals;
            double p = 1.0;
            for (std::size_t i = 0; i < c.members.size(); ++i) {
                const Value& val = db.world.domainOf(c.members[i])[idx[i]];
                vals.push_back(val);
                if (prob) p *= db.world.probabilityOf(c.members[i], val);
            }
            Value fused = Value::string(fusedValueText(vals));
            if (prob) world.addEntry(c.id, fused, p);
            else world.addEntry(c.id, fused);
            for (std::size_t i = c.members.size(); i-- > 0;) {
                if (++idx[i] < db.world.domainOf(c.members[i]).size()) break;
                idx[i] = 0;
            }
        }
    }

    bool always_used = false;
    UDatabase out;
    out.reduced = db.reduced;
    out.normalized = true;

    for (const auto& [name, rel] : db.relations) {
        LogicalRelation nrel;
        nrel.attrs = rel.attrs;
        for (const Partition& p : rel.partitions) {
            Partition np;
            np.covered_attrs = p.covered_attrs;
            np.rel = URelation(p.rel.schema());
            for (const URow& r : p.rel.rows()) {
                if (r.d.empty()) {
                    countRow(1);
                    URow nr = r;
                    nr.d = WsDescriptor::of({{kAlwaysVar, Value::integer(1)}});
                    np.rel.addRow(std::move(nr));
                    always_used = true;
                    continue;
                }
                const Comp& c = comps[comp_of.at(r.d.assignments()[0].first)];
                if (c.members.size() == 1) {
                    countRow(1);
                    np.rel.addRow(r);
                    continue;
                }
                std::vector<std::size_t> free_pos;
                std::size_t expansions = 1;
                for (std::size_t i = 0; i < c.members.size(); ++i) {
                    if (!r.d.valueOf(c.members[i])) {
                        free_pos.push_back(i);
                        expansions *= db.world.domainOf(c.members[i]).size();
                    }
                }
                countRow(expansions);
                std::vector<std::size_t> idx(free_pos.size(), 0);
                for (std::size_t n = 0; n < expansions; ++n) {
                    std::vector<Value> vals;
                    std::size_t k = 0;
                    for (std::size_t i = 0; i < c.members.size(); ++i) {
                        auto fixed = r.d.valueOf(c.members[i]);
                        if (fixed) {
                            vals.push_back(*fixed);
                        } else {
                            vals.push_back(db.world.domainOf(c.members[i])[idx[k]]);
                            ++k;
                        }
                    }
                    URow nr;
                    nr.d = WsDescriptor::of(
                        {{c.id, Value::string(fusedValueText(vals))}});
                    nr.t = r.t;
                    nr.a = r.a;
                    np.rel.addRow(std::move(nr));
                    for (std::size_t i = free_pos.size(); i-- > 0;) {
                        if (++idx[i] < db.world.domainOf(c.members[free_pos[i]]).size()) break;
                        idx[i] = 0;
                    }
                }
            }
            np.rel.canonicalize();
            nrel.partitions.push_back(std::move(np));
        }
        out.relations.emplace(name, std::move(nrel));
    }

    if (always_used) {
        if (prob) world.addEntry(kAlwaysVar, Value::integer(1), 1.0);
        else world.addEntry(kAlwaysVar, Value::integer(1));
    }
    out.world = std::move(world);
    return out;
}

}  // namespace urel
