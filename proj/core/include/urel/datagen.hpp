#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "urel/udatabase.hpp"

namespace urel {

// Parameters of the uncertain TPC-H-style generator.
struct GenParams {
    double s = 0.01;        // scale factor (> 0)
    double x = 0.1;         // uncertainty ratio in [0, 1]
    double z = 0.5;         // correlation ratio in (0, 1]
    std::size_t m = 8;      // max alternatives per field (>= 2)
    double p = 0.25;        // combination-survival probability in (0, 1]
    std::size_t k = 4;      // max fields per variable (>= 1)
    std::uint64_t seed = 42;
};

struct GenStats {
    double worlds_log10 = 0.0;
    std::size_t max_rng = 0;     // largest variable domain
    std::size_t total_rows = 0;  // over all partitions
    std::map<std::size_t, std::size_t> variables_by_dfc;
};

// Truncated-Zipf bucket counts: ceil(C * z^i) for i = 0..k with
// C = n(z-1)/(z^{k+1} - 1); for z = 1, C = n/(k+1).
std::vector<std::size_t> zipfBucketCounts(std::size_t n, double z, std::size_t k);

// max(2, round-half-up(p^{k-1} * prod(m_i))) for per-field alternative counts
// m_1..m_k of one variable.
std::size_t domainSize(double p, const std::vector<std::size_t>& m);

// Seeded generation of a valid, reduced database over a five-table schema
// (nation, supplier, customer, orders, lineitem; row counts 25 / 10s / 150s /
// 1500s / 6000s, minimum 1). Every non-key field is independently uncertain
// with probability x; uncertain fields are pooled, shuffled, and grouped onto
// variables whose field count follows the normalized weights z^i (i = 1..k).
// Deterministic per params+seed. Throws InvalidParameter.
UDatabase generate(const GenParams& params);

GenStats stats(const UDatabase& db);

// Texts of the three sample queries shipped next to generated databases.
std::vector<std::pair<std::string, std::string>> sampleQueries();  // (filename, text)

}  // namespace urel
