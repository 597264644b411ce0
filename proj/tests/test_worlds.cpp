#include <doctest.h>

#include "fixtures.hpp"
#include "urel/errors.hpp"
#include "urel/parser.hpp"
#include "urel/worlds.hpp"

using namespace urel;
using fixtures::vals;

namespace {

TotalValuation world(int x, int y, int z) {
    return {{"x", Value::integer(x)}, {"y", Value::integer(y)}, {"z", Value::integer(z)}};
}

}  // namespace

TEST_CASE("world enumeration") {
    UDatabase bf = fixtures::battlefieldDb();
    CHECK(enumerateWorlds(bf.world).size() == 8);
    CHECK(enumerateWorlds(WorldTable{}).size() == 1);

    WorldTable w;
    for (int l : {1, 2}) w.addEntry("a", Value::integer(l));
    for (int l : {1, 2, 3}) w.addEntry("b", Value::integer(l));
    CHECK_THROWS_AS(enumerateWorlds(w, 5), WorldLimitExceeded);

    // every valuation exactly once, first variable most significant
    auto worlds = enumerateWorlds(w);
    CHECK(worlds.size() == 6);
    CHECK(worlds.front().at("a") == Value::integer(1));
    CHECK(worlds.front().at("b") == Value::integer(1));
    CHECK(worlds.back().at("a") == Value::integer(2));
    CHECK(worlds.back().at("b") == Value::integer(3));
}

TEST_CASE("battlefield instantiation") {
    UDatabase bf = fixtures::battlefieldDb();
    PlainDatabase w = instantiate(bf, world(1, 1, 1));
    PlainRelation expected;
    expected.attrs = {"Id", "Type", "Faction"};
    expected.rows.insert(vals({"1", "Tank", "Friend"}));
    expected.rows.insert(vals({"2", "Transport", "Friend"}));
    expected.rows.insert(vals({"3", "Tank", "Enemy"}));
    expected.rows.insert(vals({"4", "Tank", "Friend"}));
    CHECK(w.relations.at("R") == expected);
}

TEST_CASE("partial tuples are dropped on instantiation") {
    UDatabase db = fixtures::wsdnfDb();
    TotalValuation f{{"c1", Value::integer(1)}, {"c2", Value::integer(1)}};
    PlainDatabase w = instantiate(db, f);
    // t2 has an A value but no B value in this world
    PlainRelation expected;
    expected.attrs = {"A", "B"};
    expected.rows.insert(vals({"a1", "b1"}));
    CHECK(w.relations.at("T") == expected);
}

TEST_CASE("empty database instantiates to an empty world") {
    UDatabase db;
    CHECK(instantiate(db, {}).relations.empty());
}

TEST_CASE("per-world evaluation") {
    UDatabase bf = fixtures::battlefieldDb();
    PlainDatabase w = instantiate(bf, world(1, 1, 1));

    LogicalPtr sel = parseQuery("select * from R where Type='Tank' and Faction='Enemy'");
    PlainRelation r = evalPlain(sel, w);
    CHECK(r.rows.size() == 1);
    CHECK(r.rows.count(vals({"3", "Tank", "Enemy"})) == 1);

    LogicalPtr proj = parseQuery("select Id from R where Type='Tank' and Faction='Enemy'");
    PlainRelation p = evalPlain(proj, w);
    CHECK(p.rows.size() == 1);
    CHECK(p.rows.count(vals({"3"})) == 1);

    // full projection is the identity on rows
    LogicalPtr star = parseQuery("select * from R");
    CHECK(evalPlain(star, w).rows == w.relations.at("R").rows);

    // join with an always-false condition
    LogicalPtr never = parseQuery("select r1.Id from R r1, R r2 where 1 = 2");
    CHECK(evalPlain(never, w).rows.empty());
}

TEST_CASE("poss oracle on the battlefield") {
    UDatabase bf = fixtures::battlefieldDb();
    LogicalPtr q =
        parseQuery("possible (select Id from R where Type='Tank' and Faction='Enemy')");
    PlainRelation r = possOracle(q, bf);
    CHECK(r.rows.size() == 3);
    for (const char* id : {"2", "3", "4"}) CHECK(r.rows.count(vals({id})) == 1);
}

TEST_CASE("certain oracle on the battlefield") {
    UDatabase bf = fixtures::battlefieldDb();
    CHECK(certainOracle(parseQuery("select Id from R where Faction='Enemy'"), bf).rows.empty());

    PlainRelation friends =
        certainOracle(parseQuery("select Id from R where Faction='Friend'"), bf);
    CHECK(friends.rows.size() == 1);
    CHECK(friends.rows.count(vals({"1"})) == 1);
}

TEST_CASE("certain is possible on a one-world database") {
    UDatabase db;
    LogicalRelation rel;
    rel.attrs = {"A"};
    Partition p;
    p.covered_attrs = {"A"};
    p.rel = URelation(USchema{{"A"}, 1});
    p.rel.addRow({WsDescriptor{}, fixtures::tid("T", "t1"), vals({"a"})});
    rel.partitions.push_back(std::move(p));
    db.relations.emplace("T", std::move(rel));

    LogicalPtr q = parseQuery("select A from T");
    CHECK(possOracle(q, db) == certainOracle(q, db));
}

TEST_CASE("certain answers are a subset of possible answers") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        UDatabase db = fixtures::randomReducedDb(rng);
        LogicalPtr q = fixtures::randomQuery(rng, db, 2);
        PlainRelation poss = possOracle(q, db);
        for (const auto& row : certainOracle(q, db).rows) CHECK(poss.rows.count(row) == 1);
    }
}
