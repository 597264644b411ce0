#include <doctest.h>

#include "fixtures.hpp"
#include "urel/errors.hpp"
#include "urel/exec.hpp"
#include "urel/optimizer.hpp"
#include "urel/parser.hpp"
#include "urel/planner.hpp"

using namespace urel;
using fixtures::d;
using fixtures::tid;
using fixtures::vals;

namespace {

URelation evalQuery(const char* text, const UDatabase& db) {
    LogicalPtr q = parseQuery(text);
    LogicalPtr body = q->kind == LogicalNode::Kind::Poss ? q->children[0] : q;
    return evaluate(planQuery(body, db), db);
}

bool hasRow(const URelation& u, const WsDescriptor& dd, const std::vector<Value>& a) {
    for (const URow& r : u.rows())
        if (r.d == dd && r.a == a) return true;
    return false;
}

}  // namespace

TEST_CASE("enemy-tanks query yields U_4") {
    UDatabase bf = fixtures::battlefieldDb();
    URelation u =
        evalQuery("select Id from R where Type='Tank' and Faction='Enemy'", bf);
    REQUIRE(u.size() == 3);
    CHECK(hasRow(u, d({{"x", 1}}), vals({"3"})));
    CHECK(hasRow(u, d({{"x", 2}}), vals({"2"})));
    CHECK(hasRow(u, d({{"y", 1}, {"z", 2}}), vals({"4"})));
}

TEST_CASE("self-join of the enemy-tanks query yields U_5") {
    UDatabase bf = fixtures::battlefieldDb();
    URelation u = evalQuery(
        "select s1.Id, s2.Id from R s1, R s2 where s1.Id <> s2.Id"
        " and s1.Type='Tank' and s1.Faction='Enemy'"
        " and s2.Type='Tank' and s2.Faction='Enemy'",
        bf);
    REQUIRE(u.size() == 4);
    WsDescriptor full1 = d({{"x", 1}, {"y", 1}, {"z", 2}});
    WsDescriptor full2 = d({{"x", 2}, {"y", 1}, {"z", 2}});
    CHECK(hasRow(u, full1, vals({"3", "4"})));
    CHECK(hasRow(u, full2, vals({"2", "4"})));
    CHECK(hasRow(u, full1, vals({"4", "3"})));
    CHECK(hasRow(u, full2, vals({"4", "2"})));

    PlainRelation poss = opPoss(u);
    CHECK(poss.rows.size() == 4);
    for (auto pair : {std::pair{"3", "4"}, {"2", "4"}, {"4", "3"}, {"4", "2"}})
        CHECK(poss.rows.count(vals({pair.first, pair.second})) == 1);
}

TEST_CASE("merge of the Type and Faction partitions") {
    UDatabase bf = fixtures::battlefieldDb();
    const auto& parts = bf.relation("R").partitions;
    URelation m = opMerge(parts[1].rel, parts[2].rel);
    CHECK(m.size() == 7);  // a, b, c certain; d expands to the four (y, z) combinations
    CHECK(hasRow(m, d({}), vals({"Tank", "Friend"})));
    for (auto [y, z, type, faction] :
         {std::tuple{1, 1, "Tank", "Friend"}, {1, 2, "Tank", "Enemy"},
          {2, 1, "Transport", "Friend"}, {2, 2, "Transport", "Enemy"}})
        CHECK(hasRow(m, d({{"y", y}, {"z", z}}), vals({type, faction})));
}

TEST_CASE("merge drops inconsistent pairs") {
    URelation a(USchema{{"A"}, 1}), b(USchema{{"B"}, 1});
    a.addRow({d({{"x", 1}}), tid("T", "t"), vals({"v"})});
    b.addRow({d({{"x", 2}}), tid("T", "t"), vals({"w"})});
    a.canonicalize();
    b.canonicalize();
    CHECK(opMerge(a, b).empty());
}

TEST_CASE("merge with empty descriptors is a natural join on tids") {
    URelation a(USchema{{"A"}, 1}), b(USchema{{"B"}, 1});
    a.addRow({d({}), tid("T", "t1"), vals({"a1"})});
    a.addRow({d({}), tid("T", "t2"), vals({"a2"})});
    b.addRow({d({}), tid("T", "t1"), vals({"b1"})});
    a.canonicalize();
    b.canonicalize();
    URelation m = opMerge(a, b);
    REQUIRE(m.size() == 1);
    CHECK(m.rows()[0].a == vals({"a1", "b1"}));
}

TEST_CASE("merge rejects unrelated origins") {
    URelation a(USchema{{"A"}, 1}), b(USchema{{"B"}, 1});
    a.addRow({d({}), tid("T", "t1"), vals({"a"})});
    b.addRow({d({}), tid("S", "t1"), vals({"b"})});
    a.canonicalize();
    b.canonicalize();
    CHECK_THROWS_AS(opMerge(a, b), MergeOriginError);
}

TEST_CASE("join combines descriptors and concatenates tids") {
    URelation a(USchema{{"A"}, 1}), b(USchema{{"B"}, 1});
    a.addRow({d({{"x", 1}}), tid("T", "t"), vals({"v"})});
    b.addRow({d({{"y", 1}}), tid("S", "s"), vals({"v"})});
    a.canonicalize();
    b.canonicalize();

    URelation j = opJoin(a, b, {});
    REQUIRE(j.size() == 1);
    CHECK(j.rows()[0].d == d({{"x", 1}, {"y", 1}}));
    CHECK(j.rows()[0].t.arity() == 2);

    URelation c(USchema{{"B"}, 1});
    c.addRow({d({{"x", 2}}), tid("S", "s"), vals({"v"})});
    c.canonicalize();
    CHECK(opJoin(a, c, {}).empty());  // psi filter regardless of condition

    CHECK_THROWS_AS(opJoin(a, a, {}), AliasingError);
}

TEST_CASE("union keeps branches tid-disjoint") {
    URelation a(USchema{{"A"}, 1}), b(USchema{{"A"}, 1});
    a.addRow({d({{"x", 1}}), tid("T", "t"), vals({"a"})});
    b.addRow({d({{"y", 1}}), tid("T", "t"), vals({"a"})});
    a.canonicalize();
    b.canonicalize();
    URelation u = opUnion(a, b);
    CHECK(u.size() == 2);

    URelation self = opUnion(a, a);
    CHECK(self.size() == 2);  // two tid-distinct copies
    CHECK(opPoss(self).rows == opPoss(a).rows);

    URelation empty(USchema{{"A"}, 1});
    CHECK(opUnion(a, empty).size() == 1);

    URelation other(USchema{{"B"}, 1});
    CHECK_THROWS_AS(opUnion(a, other), SchemaError);
}

TEST_CASE("select and project basics") {
    URelation a(USchema{{"A", "B"}, 1});
    a.addRow({d({{"x", 1}}), tid("T", "t1"), vals({"1", "2"})});
    a.addRow({d({{"x", 2}}), tid("T", "t2"), vals({"3", "2"})});
    a.canonicalize();

    Condition cond{{Operand::col("A"), CmpOp::Gt, Operand::lit(Value::integer(2))}};
    URelation s = opSelect(a, cond);
    REQUIRE(s.size() == 1);
    CHECK(s.rows()[0].a == vals({"3", "2"}));

    Condition never{{Operand::lit(Value::integer(1)), CmpOp::Eq, Operand::lit(Value::integer(2))}};
    CHECK(opSelect(a, never).empty());

    URelation p = opProject(a, {{"B", "B"}});
    CHECK(p.schema().attrs == std::vector<std::string>{"B"});
    CHECK(p.size() == 2);  // distinct descriptors/tids survive value duplication
}

TEST_CASE("reduce removes exactly the dangling wsdnf rows") {
    UDatabase db = fixtures::wsdnfDb();
    UDatabase red = reduce(db);
    CHECK(red.reduced);

    const auto& pa = red.relation("T").partitions[0].rel;
    const auto& pb = red.relation("T").partitions[1].rel;
    REQUIRE(pa.size() == 1);
    REQUIRE(pb.size() == 1);
    CHECK(pa.rows()[0].d == d({{"c1", 1}}));
    CHECK(pa.rows()[0].a == vals({"a1"}));
    CHECK(pb.rows()[0].d == d({{"c1", 1}}));
    CHECK(pb.rows()[0].a == vals({"b1"}));
}

TEST_CASE("reduce keeps the battlefield database unchanged") {
    UDatabase bf = fixtures::battlefieldDb();
    UDatabase red = reduce(bf);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(red.relation("R").partitions[i].rel.rows() ==
              bf.relation("R").partitions[i].rel.rows());
}

TEST_CASE("reduce is idempotent and world-set preserving") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        UDatabase db = fixtures::randomReducedDb(rng);
        // punch holes to create dangling rows
        for (auto& [name, rel] : db.relations)
            for (auto& p : rel.partitions) {
                URelation kept(p.rel.schema());
                for (const URow& r : p.rel.rows())
                    if (rng() % 4 != 0) kept.addRow(r);
                kept.canonicalize();
                p.rel = kept;
            }
        db.reduced = false;

        UDatabase once = reduce(db);
        UDatabase twice = reduce(once);
        for (const auto& [name, rel] : once.relations)
            for (std::size_t q = 0; q < rel.partitions.size(); ++q)
                CHECK(rel.partitions[q].rel.rows() ==
                      twice.relation(name).partitions[q].rel.rows());
        CHECK(fixtures::worldSetSignature(db) == fixtures::worldSetSignature(once));
    }
}

TEST_CASE("certain answers on normalized tuple-level input") {
    WorldTable w;
    w.addEntry("x", Value::integer(1));
    w.addEntry("x", Value::integer(2));

    URelation u(USchema{{"A"}, 1});
    u.addRow({d({{"x", 1}}), tid("T", "t1"), vals({"a"})});
    u.addRow({d({{"x", 2}}), tid("T", "t2"), vals({"a"})});
    u.canonicalize();
    PlainRelation r = certainAnswers(u, w);
    CHECK(r.rows.size() == 1);
    CHECK(r.rows.count(vals({"a"})) == 1);

    URelation half(USchema{{"A"}, 1});
    half.addRow({d({{"x", 1}}), tid("T", "t1"), vals({"a"})});
    half.canonicalize();
    CHECK(certainAnswers(half, w).rows.empty());

    WorldTable single;
    single.addEntry("s", Value::integer(1));
    URelation cert(USchema{{"A"}, 1});
    cert.addRow({d({{"s", 1}}), tid("T", "t1"), vals({"a"})});
    cert.canonicalize();
    CHECK(certainAnswers(cert, single).rows == opPoss(cert).rows);
}

TEST_CASE("certain answers enforce preconditions") {
    WorldTable w;
    w.addEntry("x", Value::integer(1));
    w.addEntry("x", Value::integer(2));

    URelation wide(USchema{{"A"}, 1});
    wide.addRow({d({{"x", 1}}), tid("T", "t1"), vals({"a"})});
    wide.addRow({d({}), tid("T", "t2"), vals({"b"})});
    wide.canonicalize();
    CHECK_THROWS_AS(certainAnswers(wide, w), NotNormalized);

    URelation no_tid(USchema{{"A"}, 0});
    CHECK_THROWS_AS(certainAnswers(no_tid, w), NotTupleLevel);
}

TEST_CASE("certain pipeline matches the oracle on the battlefield") {
    UDatabase bf = fixtures::battlefieldDb();
    LogicalPtr friends = parseQuery("select Id from R where Faction='Friend'");
    CHECK(certainAnswersForQuery(friends, bf).rows == certainOracle(friends, bf).rows);
    LogicalPtr enemies = parseQuery("select Id from R where Faction='Enemy'");
    CHECK(certainAnswersForQuery(enemies, bf).rows.empty());
}

TEST_CASE("evaluation output of a reduced database is reduced") {
    UDatabase bf = fixtures::battlefieldDb();
    URelation u =
        evalQuery("select Id from R where Type='Tank' and Faction='Enemy'", bf);
    for (const URow& r : u.rows()) {
        bool live = false;
        for (const TotalValuation& f : enumerateWorlds(bf.world)) live |= r.d.extendedBy(f);
        CHECK(live);
    }
}
