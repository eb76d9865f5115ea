#include "micromacro/budget.hpp"

#include <cstdlib>
#include <string>

#include "micromacro/errors.hpp"

namespace micromacro {

namespace {

std::int64_t initial_budget() {
    if (const char* env = std::getenv("MICROMACRO_BUDGET")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 10'000'000;
}

std::int64_t g_budget = initial_budget();

}  // namespace

std::int64_t enumeration_budget() { return g_budget; }

void set_enumeration_budget(std::int64_t budget) { g_budget = budget; }

std::int64_t charge_budget(const BigInt& count, const char* what) {
    if (count > BigInt(static_cast<long>(g_budget)))
        throw BudgetError(std::string(what) + ": enumeration of " + count.get_str() +
                          " states exceeds budget " + std::to_string(g_budget));
    return static_cast<std::int64_t>(count.get_si());
}

}  // namespace micromacro
