#pragma once
// growth.hpp - sumset-density machinery: the {0,1}^n density bound, the
// gamma-inequality scan, bilinear representation counting, iterated common
// differences, and the recursive product-expansion construction with audit
// traces.

#include <cstdint>
#include <vector>

#include "elab/additive.hpp"
#include "elab/budget.hpp"

namespace elab {

// Subset of {0,1}^n with members encoded as n-bit masks.
struct CubeSet {
    int n = 0;
    std::vector<uint32_t> members;  // sorted, duplicate-free

    double density() const {
        return static_cast<double>(members.size()) / std::ldexp(1.0, n);
    }
};

CubeSet random_cube_subset(int n, double density, uint64_t seed);

// Exact sumset A_1 + ... + A_r in {0,..,r}^n and the density bound
// |sum| >= (alpha_1...alpha_r)^gamma (r+1)^n, gamma = log_2(r+1)/r,
// compared via logarithms with 1e-9 slack.
struct CubeDensityReport {
    long long sum_size = 0;
    double lhs_log = 0;  // log |sum| - n log(r+1)
    double rhs_log = 0;  // gamma * sum_i log(alpha_i)
    bool ok = false;
};
CubeDensityReport cube_density_check(const std::vector<CubeSet>& sets, const Budgets& budget);

// Minimise f(x) = sum_{j=0}^r (x_1..x_j (1-x_{j+1})..(1-x_r))^gamma over the
// ordered simplex 1 >= x_1 >= ... >= x_r >= 0 by grid search plus coordinate
// descent. The scan is its own oracle: the minimum should be >= 1 - 1e-9.
struct SimplexScan {
    double minimum;
    std::vector<double> argmin;
};
SimplexScan simplex_min_scan(int r, double step, int refine_iters);
double simplex_objective(const std::vector<double>& x);

// A signed product term prod_j (L_d(words[j]) + t_j).
struct SignedProduct {
    int sign;                     // +1 or -1
    std::vector<uint32_t> words;  // one m-bit word per factor
};

// An output value with its recorded +- combination of product terms.
struct TracedValue {
    long long value;
    std::vector<SignedProduct> combo;
};

// Result of the recursive expansion: every value carries a combination of at
// most (4d)^r product terms with tuples drawn from A.
struct ExpansionResult {
    enum class Outcome { Ok, EmptyFiber };

    Outcome outcome = Outcome::Ok;
    int stalled_level = 0;  // recursion depth at which no fiber passed the cutoff
    long long depth_bound = 0;
    std::vector<TracedValue> values;  // sorted by value
};

// Expansion from density: A is a set of r-tuples of m-bit words (each word
// encodes y in {0,1}^m with L_d(y) = sum y_i d^i), |t_j| <= d^m. The fiber
// cutoff defaults to half the density of the current set when negative.
ExpansionResult product_expansion(long long d, int r, int m,
                                  const std::vector<std::vector<uint32_t>>& tuples,
                                  const std::vector<long long>& shifts, double fiber_cutoff,
                                  const Budgets& budget);

// Re-evaluates every recorded combination with exact integers and checks
// membership of each tuple in A plus the depth bound.
bool audit_expansion(const ExpansionResult& result, long long d, int r, int m,
                     const std::vector<std::vector<uint32_t>>& tuples,
                     const std::vector<long long>& shifts);

// Number of distinct u1 v1 + u2 v2 over pairs from omega.
long long bilinear_value_count(const std::vector<std::pair<long long, long long>>& omega,
                               const Budgets& budget);

// Exact intersection of difference sets S_i - S_i, with a shift witness
// (h_2..h_t) realising a common core S with S - S inside the intersection.
struct CommonDifferences {
    IntSet diffs;                       // the intersection
    std::vector<long long> shifts;      // h_2..h_t
    IntSet core;                        // S_1 cap (S_2 - h_2) cap ...
};
CommonDifferences common_differences(const std::vector<IntSet>& sets, long long X,
                                     const Budgets& budget);

}  // namespace elab
