#pragma once
// Shared generators for the test suites.

#include "elab/budget.hpp"
#include "elab/prng.hpp"
#include "elab/radix.hpp"

namespace elab::testing {

inline const Budgets budget = Budgets::from_env();

inline UnitAngle random_angle(SplitMix64& rng, long long max_den = 1'000'000) {
    long long den = rng.range(2, max_den);
    long long num = rng.range(0, den - 1);
    return UnitAngle(make_int(num), make_int(den));
}

}  // namespace elab::testing
