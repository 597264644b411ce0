#pragma once

#include <random>
#include <string>
#include <vector>

#include "urel/ast.hpp"
#include "urel/udatabase.hpp"
#include "urel/urelation.hpp"
#include "urel/worlds.hpp"

namespace fixtures {

using namespace urel;

// Shorthand builders used throughout the tests.
WsDescriptor d(std::initializer_list<std::pair<const char*, int>> a);
TupleId tid(const std::string& tag, const std::string& id);
std::vector<Value> vals(std::initializer_list<const char*> texts);

// Battlefield database: W over x, y, z (domains {1,2}); relation R(Id, Type,
// Faction) vertically partitioned into one partition per attribute, tuple ids
// a..d. Already reduced.
UDatabase battlefieldDb();

// Two-partition relation T(A, B) over c1, c2 where one row per partition
// cannot find a partner: reduce drops exactly those two rows.
UDatabase wsdnfDb();

// Single-partition relation T(A) over c1, c2, c3 with the five rows whose
// normalization fuses c1 and c2 into a four-valued product variable.
UDatabase normalizationExampleDb();

// Paired-variable chain: R(A, B) with partitions guarded by c_i (A side) and
// c_{i+1 mod n} (B side); selecting A = B after the merge yields 2n rows whose
// descriptors chain all n variables into one component.
UDatabase chainDb(std::size_t n);

struct RandomDbOpts {
    std::size_t max_vars = 6;
    std::size_t max_dom = 3;
    std::size_t max_rows = 20;
    std::size_t max_rels = 2;
};

// Random database that is reduced by construction: every tuple has a guard
// descriptor, and each attribute is either one certain row or a full
// per-domain-value split of one extra variable — so any live row belongs to a
// complete tuple in every world its descriptor admits.
UDatabase randomReducedDb(std::mt19937_64& rng, const RandomDbOpts& opts = {});

// Random database with one relation T(A, B, C) split into three single-attr
// partitions plus a single-partition relation S(D); reduced by construction.
// Used to exercise the merge rewrite rules.
UDatabase randomThreePartDb(std::mt19937_64& rng);

// Random positive-RA query (project over optional select over a left-deep
// join of aliased relation refs) against db's schema.
LogicalPtr randomQuery(std::mt19937_64& rng, const UDatabase& db, std::size_t max_joins);

// Sorted per-world serializations of the whole database; equal vectors mean
// equal represented world-sets (as multisets of worlds).
std::vector<std::string> worldSetSignature(const UDatabase& db,
                                           std::size_t limit = kDefaultWorldLimit);

std::string plainToString(const PlainRelation& r);
std::string plainDbToString(const PlainDatabase& db);

// Instantiates a bare U-relation (all attributes covered) in world f.
PlainRelation instantiateRelation(const URelation& u, const TotalValuation& f);

}  // namespace fixtures
