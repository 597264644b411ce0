#pragma once

#include <string>

#include "urel/ast.hpp"

namespace urel {

// Parses the surface query language:
//   query   := ["possible" ["("] select [")"]] | select "union" select
//   select  := "select" cols "from" rels ["where" conj]
//   cols    := "*" | ident ("," ident)*
//   rels    := ident [alias] ("," ident [alias])*
//   conj    := atom ("and" atom)* ; atom := operand op operand
//   op ∈ {=, <>, <, >, <=, >=}
// Operands are (possibly qualified) identifiers or literals: integer,
// decimal, 'string' (ISO dates in quotes parse as dates), date 'YYYY-MM-DD'.
// Keywords are case-insensitive. Unknown relations/attributes are not checked
// here; binding happens against a database schema later.
LogicalPtr parseQuery(const std::string& text);

}  // namespace urel
