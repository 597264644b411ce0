#include "urel/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "urel/errors.hpp"

namespace urel {

std::vector<std::size_t> zipfBucketCounts(std::size_t n, double z, std::size_t k) {
    double C;
    if (z == 1.0) C = static_cast<double>(n) / static_cast<double>(k + 1);
    else C = static_cast<double>(n) * (z - 1.0) / (std::pow(z, static_cast<double>(k + 1)) - 1.0);
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i <= k; ++i)
        counts.push_back(
            static_cast<std::size_t>(std::ceil(C * std::pow(z, static_cast<double>(i)))));
    return counts;
}

std::size_t domainSize(double p, const std::vector<std::size_t>& m) {
    double prod = 1.0;
    for (std::size_t mi : m) prod *= static_cast<double>(mi);
    double size = std::pow(p, static_cast<double>(m.size()) - 1.0) * prod;
    auto rounded = static_cast<std::size_t>(std::floor(size + 0.5));
    return std::max<std::size_t>(2, rounded);
}

namespace {

// All draws go through modulo/unit-interval reduction of raw mt19937_64
// output; std::uniform_int_distribution is implementation-defined and would
// break cross-platform determinism.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    std::uint64_t next() { return eng(); }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

const char* kNations[25] = {
    "ALGERIA", "ARGENTINA", "BRAZIL",       "CANADA",         "EGYPT",
    "ETHIOPIA", "FRANCE",   "GERMANY",      "INDIA",          "INDONESIA",
    "IRAN",     "IRAQ",     "JAPAN",        "JORDAN",         "KENYA",
    "MOROCCO",  "MOZAMBIQUE", "PERU",       "CHINA",          "ROMANIA",
    "SAUDI ARABIA", "VIETNAM", "RUSSIA",    "UNITED KINGDOM", "UNITED STATES",
};

const char* kSegments[5] = {"AUTOMOBILE", "BUILDING", "FURNITURE", "HOUSEHOLD",
                            "MACHINERY"};

struct TableSpec {
    std::string name;
    std::vector<std::string> attrs;
    std::size_t pk = 0;  // attr index of the primary key (never uncertain)
    std::size_t rows = 0;
};

Value randomDate(Rng& rng) {
    int y = 1992 + static_cast<int>(rng.below(7));
    int mo = 1 + static_cast<int>(rng.below(12));
    int d = 1 + static_cast<int>(rng.below(28));
    char buf[11];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", y, mo, d);
    return Value::date(buf);
}

Value twoDecimals(std::int64_t cents) {
    return Value::decimal(static_cast<double>(cents) / 100.0);
}

struct Generator {
    const GenParams& params;
    Rng rng;
    std::vector<TableSpec> tables;

    explicit Generator(const GenParams& p) : params(p), rng(p.seed) {
        auto scaled = [&](double base) {
            return std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(base * p.s)));
        };
        tables = {
            {"nation", {"nationkey", "name"}, 0, 25},
            {"supplier", {"suppkey", "name", "nationkey"}, 0, scaled(10)},
            {"customer", {"custkey", "name", "mktsegment", "nationkey"}, 0, scaled(150)},
            {"orders", {"orderkey", "custkey", "orderdate", "shippriority"}, 0,
             scaled(1500)},
            {"lineitem", {"orderkey", "suppkey", "shipdate", "discount", "quantity",
                          "extendedprice"},
             0, scaled(6000)},
        };
    }

    std::size_t rowsOf(const std::string& t) {
        for (const auto& s : tables)
            if (s.name == t) return s.rows;
        return 0;
    }

    Value fkDraw(const std::string& parent) {
        return Value::integer(static_cast<std::int64_t>(rng.below(rowsOf(parent)) + 1));
    }

    // A fresh value for a field; used for base values and for alternatives.
    Value draw(const std::string& table, const std::string& attr, std::size_t row) {
        if (table == "nation") {
            if (attr == "nationkey") return Value::integer(static_cast<std::int64_t>(row + 1));
            return Value::string(kNations[rng.below(25)]);
        }
        if (attr == "nationkey") return fkDraw("nation");
        if (attr == "custkey" && table != "customer") return fkDraw("customer");
        if (attr == "suppkey" && table != "supplier") return fkDraw("supplier");
        if (attr == "orderkey" && table != "orders") return fkDraw("orders");
        if (attr == "name")
            return Value::string(table + "#" + std::to_string(rng.below(1000000)));
        if (attr == "mktsegment") return Value::string(kSegments[rng.below(5)]);
        if (attr == "orderdate" || attr == "shipdate") return randomDate(rng);
        if (attr == "discount") return twoDecimals(static_cast<std::int64_t>(rng.below(11)));
        if (attr == "quantity")
            return Value::integer(static_cast<std::int64_t>(rng.below(50) + 1));
        if (attr == "extendedprice")
            return twoDecimals(static_cast<std::int64_t>(rng.below(9990001) + 10000));
        if (attr == "shippriority")
            return Value::integer(static_cast<std::int64_t>(rng.below(5) + 1));
        // primary keys of the owning table
        return Value::integer(static_cast<std::int64_t>(row + 1));
    }
};

struct FieldRef {
    std::size_t table;
    std::size_t row;
    std::size_t attr;
};

}  // namespace

UDatabase generate(const GenParams& params) {
    if (!(params.s > 0)) throw InvalidParameter("scale must be positive");
    if (params.x < 0 || params.x > 1) throw InvalidParameter("uncertainty must be in [0,1]");
    if (!(params.z > 0) || params.z > 1)
        throw InvalidParameter("correlation must be in (0,1]");
    if (params.m < 2) throw InvalidParameter("max alternatives must be >= 2");
    if (!(params.p > 0) || params.p > 1)
        throw InvalidParameter("combination probability must be in (0,1]");
    if (params.k < 1) throw InvalidParameter("max fields per variable must be >= 1");

    Generator gen(params);

    // Pass 1: certain base values, fixed draw order.
    std::vector<std::vector<std::vector<Value>>> base(gen.tables.size());
    for (std::size_t t = 0; t < gen.tables.size(); ++t) {
        const TableSpec& spec = gen.tables[t];
        base[t].resize(spec.rows);
        for (std::size_t r = 0; r < spec.rows; ++r) {
            for (std::size_t a = 0; a < spec.attrs.size(); ++a) {
                if (a == spec.pk) {
                    base[t][r].push_back(Value::integer(static_cast<std::int64_t>(r + 1)));
                    continue;
                }
                if (t == 0 && spec.attrs[a] == "name") {
                    // the 25 fixed nation names, in order
                    base[t][r].push_back(Value::string(kNations[r]));
                    continue;
                }
                base[t][r].push_back(gen.draw(spec.name, spec.attrs[a], r));
            }
        }
    }

    // Pass 2: mark uncertain fields (non-key attrs only), then shuffle the
    // pool so one variable can span tuples and relations.
    std::vector<FieldRef> pool;
    for (std::size_t t = 0; t < gen.tables.size(); ++t)
        for (std::size_t r = 0; r < gen.tables[t].rows; ++r)
            for (std::size_t a = 0; a < gen.tables[t].attrs.size(); ++a) {
                if (a == gen.tables[t].pk) continue;
                if (gen.rng.unit() < params.x) pool.push_back({t, r, a});
            }
    for (std::size_t i = pool.size(); i > 1; --i)
        std::swap(pool[i - 1], pool[gen.rng.below(i)]);

    // Pass 3: group fields onto variables; the group size (DFC) follows the
    // normalized weights z^i over i = 1..k.
    std::vector<double> cum;
    {
        double total = 0;
        for (std::size_t i = 1; i <= params.k; ++i)
            total += std::pow(params.z, static_cast<double>(i));
        double acc = 0;
        for (std::size_t i = 1; i <= params.k; ++i) {
            acc += std::pow(params.z, static_cast<double>(i)) / total;
            cum.push_back(acc);
        }
    }

    WorldTable world;
    struct UncertainField {
        VariableId var;
        std::vector<Value> alternatives;  // one per domain value, [0] = base
    };
    std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, UncertainField>>
        uncertain;  // (table,row) -> attr -> field

    std::size_t var_counter = 0;
    std::size_t taken = 0;
    while (taken < pool.size()) {
        double u = gen.rng.unit();
        std::size_t dfc = params.k;
        for (std::size_t i = 0; i < cum.size(); ++i)
            if (u < cum[i]) {
                dfc = i + 1;
                break;
            }
        dfc = std::min(dfc, pool.size() - taken);

        std::vector<std::size_t> alts;
        for (std::size_t i = 0; i < dfc; ++i)
            alts.push_back(2 + gen.rng.below(params.m - 1));
        std::size_t dom = domainSize(params.p, alts);

        char buf[16];
        std::snprintf(buf, sizeof buf, "v%06zu", ++var_counter);
        VariableId var = buf;
        for (std::size_t l = 1; l <= dom; ++l)
            world.addEntry(var, Value::integer(static_cast<std::int64_t>(l)));

        for (std::size_t i = 0; i < dfc; ++i) {
            const FieldRef& f = pool[taken + i];
            UncertainField uf;
            uf.var = var;
            uf.alternatives.push_back(base[f.table][f.row][f.attr]);
            const TableSpec& spec = gen.tables[f.table];
            for (std::size_t l = 1; l < dom; ++l)
                uf.alternatives.push_back(gen.draw(spec.name, spec.attrs[f.attr], f.row));
            uncertain[{f.table, f.row}].emplace(f.attr, std::move(uf));
        }
        taken += dfc;
    }

    // Pass 4: assemble — one partition per attribute, tuple ids tagged by
    // relation name.
    UDatabase db;
    db.world = std::move(world);
    db.reduced = true;
    for (std::size_t t = 0; t < gen.tables.size(); ++t) {
        const TableSpec& spec = gen.tables[t];
        LogicalRelation rel;
        rel.attrs = spec.attrs;
        for (std::size_t a = 0; a < spec.attrs.size(); ++a) {
            Partition part;
            part.covered_attrs = {spec.attrs[a]};
            part.rel = URelation(USchema{{spec.attrs[a]}, 1});
            for (std::size_t r = 0; r < spec.rows; ++r) {
                TupleId tid(
                    {{spec.name, Value::integer(static_cast<std::int64_t>(r + 1))}});
                auto row_it = uncertain.find({t, r});
                const UncertainField* uf = nullptr;
                if (row_it != uncertain.end()) {
                    auto attr_it = row_it->second.find(a);
                    if (attr_it != row_it->second.end()) uf = &attr_it->second;
                }
                if (!uf) {
                    part.rel.addRow({WsDescriptor{}, tid, {base[t][r][a]}});
                    continue;
                }
                for (std::size_t l = 0; l < uf->alternatives.size(); ++l) {
                    WsDescriptor d = WsDescriptor::of(
                        {{uf->var, Value::integer(static_cast<std::int64_t>(l + 1))}});
                    part.rel.addRow({std::move(d), tid, {uf->alternatives[l]}});
                }
            }
            part.rel.canonicalize();
            rel.partitions.push_back(std::move(part));
        }
        db.relations.emplace(spec.name, std::move(rel));
    }
    return db;
}

GenStats stats(const UDatabase& db) {
    GenStats s;
    s.worlds_log10 = db.world.worldCountLog10();
    for (const VariableId& v : db.world.variables())
        s.max_rng = std::max(s.max_rng, db.world.domainOf(v).size());

    std::map<VariableId, std::size_t> dfc;  // fields guarded per variable
    for (const auto& [name, rel] : db.relations) {
        for (const Partition& p : rel.partitions) {
            s.total_rows += p.rel.size();
            // Per (partition, tuple id): each variable mentioned counts one field.
            std::map<std::string, std::vector<VariableId>> by_tid;
            for (const URow& r : p.rel.rows())
                for (const auto& [var, val] : r.d.assignments())
                    by_tid[r.t.serialize()].push_back(var);
            for (auto& [tid, vars] : by_tid) {
                std::sort(vars.begin(), vars.end());
                vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
                for (const VariableId& v : vars) ++dfc[v];
            }
        }
    }
    for (const auto& [var, n] : dfc) ++s.variables_by_dfc[n];
    return s;
}

std::vector<std::pair<std::string, std::string>> sampleQueries() {
    return {
        {"q1.sql",
         "possible (select o.orderkey, o.orderdate, o.shippriority\n"
         "from customer c, orders o, lineitem l\n"
         "where c.mktsegment = 'BUILDING' and c.custkey = o.custkey\n"
         "and o.orderkey = l.orderkey and o.orderdate > '1995-03-15'\n"
         "and l.shipdate < '1995-03-17')\n"},
        {"q2.sql",
         "possible (select extendedprice from lineitem\n"
         "where shipdate >= '1994-01-01' and shipdate <= '1996-01-01'\n"
         "and discount >= 0.05 and discount <= 0.08 and quantity < 24)\n"},
        {"q3.sql",
         "possible (select n1.name, n2.name\n"
         "from supplier s, lineitem l, orders o, customer c, nation n1, nation n2\n"
         "where n2.name = 'IRAQ' and n1.name = 'GERMANY'\n"
         "and c.nationkey = n2.nationkey and s.suppkey = l.suppkey\n"
         "and o.orderkey = l.orderkey and c.custkey = o.custkey\n"
         "and s.nationkey = n1.nationkey)\n"},
    };
}

}  // namespace urel
