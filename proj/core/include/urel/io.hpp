#pragma once

#include <filesystem>
#include <string>

#include "urel/udatabase.hpp"

namespace urel {

// Directory layout:
//   manifest.json   {relations: [{name, attrs, partitions: [{file, tid_arity,
//                   covered_attrs}]}], world_file, probabilistic, reduced,
//                   normalized}
//   world table TSV: columns var, val[, prob]; header row, tab-separated
//   one TSV per partition: column d (descriptor "var=val;..."), columns
//   t1..tk ("tag:id"), then one column per covered value attribute.
UDatabase loadDatabase(const std::filesystem::path& dir);
void saveDatabase(const UDatabase& db, const std::filesystem::path& dir);

}  // namespace urel
