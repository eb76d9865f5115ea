#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "micromacro/system.hpp"

namespace micromacro {

// Insertion-ordered so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

// System document: format tag, version, n, alpha, macro, optional reversion,
// optional per-label values (rationals as strings) and names.
Json system_to_json(const System& s);
System system_from_json(const Json& j);

std::string emit_system(const System& s);  // pretty-printed, newline-terminated
System parse_system(const std::string& text);
System load_system(std::istream& in);

// Report fields: exact value as a string plus an advisory float rendering.
Json rational_json(const Rational& r);
Json logvalue_json(const LogValue& v);

// 15 significant digits, fixed formatting.
std::string float_repr(double x);

}  // namespace micromacro
