#pragma once

#include <string>
#include <vector>

namespace urel {

// Resolves a possibly-qualified column reference against a schema of
// qualified attribute names. An unqualified name matches any attribute whose
// base (text after the last '.') equals it; ambiguity is a SchemaError and a
// miss is an UnknownAttribute.
std::size_t resolveColumn(const std::vector<std::string>& attrs, const std::string& name);

// True iff `name` resolves within `attrs` (unambiguously).
bool columnResolves(const std::vector<std::string>& attrs, const std::string& name);

std::string baseName(const std::string& qualified);

}  // namespace urel
