#pragma once

#include <cstddef>
#include <vector>

#include "urel/udatabase.hpp"

namespace urel {

inline constexpr std::size_t kDefaultNormalizeGuard = 1'000'000;

// Connected components of the variable co-occurrence graph (two variables are
// adjacent when some row's descriptor mentions both). Variables of the world
// table that appear in no descriptor form singleton components. Each component
// is sorted; components are ordered by their first member.
std::vector<std::vector<VariableId>> cooccurrenceComponents(const UDatabase& db);

// Rewrites the database so every descriptor has exactly one assignment.
// Per component of co-occurring variables a fused variable `comp:<first
// member>` ranges over the product of the member domains; a row fixing only
// part of a component expands to one row per completion. Singleton components
// keep their variable and values unchanged; rows with empty descriptors get a
// guard on a dedicated variable `comp:always` with a one-value domain. Fused
// probabilities are products of member marginals. Throws NotReduced on
// unreduced input and OutputGuardExceeded when the rewrite would emit more
// than `guard` rows.
UDatabase normalize(const UDatabase& db, std::size_t guard = kDefaultNormalizeGuard);

}  // namespace urel
