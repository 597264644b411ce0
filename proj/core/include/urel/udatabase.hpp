#pragma once

#include <map>
#include <string>
#include <vector>

#include "urel/urelation.hpp"
#include "urel/world_table.hpp"

namespace urel {

struct Partition {
    URelation rel;
    std::vector<std::string> covered_attrs;  // equals rel.schema().attrs
};

struct LogicalRelation {
    std::vector<std::string> attrs;
    std::vector<Partition> partitions;
};

struct UDatabase {
    WorldTable world;
    std::map<std::string, LogicalRelation> relations;
    bool reduced = false;
    bool normalized = false;

    const LogicalRelation& relation(const std::string& name) const;
};

struct Violation {
    std::string message;
};

// Checks partition coverage, descriptor membership in the world table,
// probability sums, and cross-partition value agreement (no two rows with the
// same tuple id and consistent descriptors may disagree on a shared
// attribute). Returns all violations; never aborts.
std::vector<Violation> validate(const UDatabase& db);

double worldCountLog10(const WorldTable& w);

// Product over d's assignments of the assignment marginals; 1.0 for the empty
// descriptor. Throws NotProbabilistic when w carries no probabilities.
double descriptorProbability(const WsDescriptor& d, const WorldTable& w);

}  // namespace urel
