#include "urel/udatabase.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "urel/errors.hpp"

namespace urel {

const LogicalRelation& UDatabase::relation(const std::string& name) const {
    auto it = relations.find(name);
    if (it == relations.end()) throw UnknownRelation(name);
    return it->second;
}

namespace {

void checkValueAgreement(const std::string& rel_name, const LogicalRelation& rel,
                         std::vector<Violation>& out) {
    for (std::size_t pi = 0; pi < rel.partitions.size(); ++pi) {
        for (std::size_t pj = pi; pj < rel.partitions.size(); ++pj) {
            const Partition& p1 = rel.partitions[pi];
            const Partition& p2 = rel.partitions[pj];
            // shared attribute positions
            std::vector<std::pair<std::size_t, std::size_t>> shared;
            for (std::size_t i = 0; i < p1.covered_attrs.size(); ++i) {
                for (std::size_t j = 0; j < p2.covered_attrs.size(); ++j) {
                    if (p1.covered_attrs[i] == p2.covered_attrs[j]) shared.emplace_back(i, j);
                }
            }
            if (shared.empty()) continue;
            // group p2's rows by tuple id
            std::unordered_map<TupleId, std::vector<const URow*>, TupleIdHash> by_tid;
            for (const URow& r : p2.rel.rows()) by_tid[r.t].push_back(&r);
            for (const URow& r1 : p1.rel.rows()) {
                auto it = by_tid.find(r1.t);
                if (it == by_tid.end()) continue;
                for (const URow* r2 : it->second) {
                    if (pi == pj && r2 == &r1) continue;
                    if (!r1.d.consistentWith(r2->d)) continue;
                    for (auto [i, j] : shared) {
                        if (!(r1.a[i] == r2->a[j])) {
                            out.push_back(Violation{
                                "relation '" + rel_name + "': tuple " + r1.t.serialize() +
                                " has contradictory values for attribute '" +
                                p1.covered_attrs[i] + "' under consistent descriptors '" +
                                r1.d.serialize() + "' and '" + r2->d.serialize() + "'"});
                        }
                    }
                }
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate(const UDatabase& db) {
    std::vector<Violation> out;

    for (const VariableId& var : db.world.variables()) {
        if (db.world.domainOf(var).empty())
            out.push_back(Violation{"variable '" + var + "' has an empty domain"});
    }
    for (const VariableId& var : db.world.probabilityViolations()) {
        out.push_back(Violation{"probabilities of variable '" + var + "' do not sum to 1"});
    }

    for (const auto& [name, rel] : db.relations) {
        std::set<std::string> covered;
        for (const Partition& p : rel.partitions) {
            if (p.covered_attrs != p.rel.schema().attrs)
                out.push_back(Violation{"relation '" + name +
                                        "': partition covered attrs differ from its schema"});
            covered.insert(p.covered_attrs.begin(), p.covered_attrs.end());
            for (const std::string& a : p.covered_attrs) {
                if (std::find(rel.attrs.begin(), rel.attrs.end(), a) == rel.attrs.end())
                    out.push_back(Violation{"relation '" + name + "': partition covers unknown attribute '" + a + "'"});
            }
            for (const URow& r : p.rel.rows()) {
                for (const auto& [var, val] : r.d.assignments()) {
                    if (!db.world.contains(var, val))
                        out.push_back(Violation{"relation '" + name + "': descriptor '" +
                                                r.d.serialize() +
                                                "' is not a subset of the world table"});
                }
            }
        }
        for (const std::string& a : rel.attrs) {
            if (!covered.count(a))
                out.push_back(
                    Violation{"relation '" + name + "': attribute '" + a + "' is not covered"});
        }
        checkValueAgreement(name, rel, out);
    }
    return out;
}

double worldCountLog10(const WorldTable& w) { return w.worldCountLog10(); }

double descriptorProbability(const WsDescriptor& d, const WorldTable& w) {
    if (!w.probabilistic()) throw NotProbabilistic();
    double p = 1.0;
    for (const auto& [var, val] : d.assignments()) p *= w.probabilityOf(var, val);
    return p;
}

}  // namespace urel
