#pragma once

#include <cstdint>

#include "micromacro/rational.hpp"

namespace micromacro {

// Enumeration budget in microstates (or tuples, for cylinder scans).
// Defaults to 10^7; the MICROMACRO_BUDGET environment variable or
// set_enumeration_budget override it.
std::int64_t enumeration_budget();
void set_enumeration_budget(std::int64_t budget);

// Throws BudgetError if count (exact) exceeds the budget; returns it as int64.
std::int64_t charge_budget(const BigInt& count, const char* what);

}  // namespace micromacro
