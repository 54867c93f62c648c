#pragma once
// ellipsephic.hpp - enumeration of two-digit integers in base b, their k-th
// powers, representation counts, basis-order search, and the two
// interval-growth lemmas used to assemble basis results from sumset density.

#include <optional>
#include <vector>

#include "elab/bitset_range.hpp"
#include "elab/numeric.hpp"
#include "elab/radix.hpp"

namespace elab {

// Parameters (b, k, n, d1, d2) for the digit set {d1, d2}. Words of length n
// map to integers u + (d2 - d1) * L_b(x), where u is the all-d1 value.
struct EllipsephicParams {
    Base base;
    int k;
    int n;
    int d1;
    int d2;

    EllipsephicParams(Base b, int k_, int n_, int d1_, int d2_);

    Int modulus() const { return pow_int(base.value, static_cast<unsigned long>(n)); }
    Int all_d1_value() const;  // u = d1 (b^n - 1)/(b - 1)
    // gcd(d1^k, d2^k) == 1; basis-order experiments require this, pure
    // exponential-sum work only warns.
    bool coprime_powers() const;
};

// Value of a 0/1 word in the given radix: sum x_i * radix^i.
Int word_value(const std::vector<int>& bits, const Int& radix);

// All 2^n fixed-length members u + (d2 - d1) L_b(x), sorted, duplicate-free.
std::vector<Int> fixed_length_members(const EllipsephicParams& p, const Budgets& budget);

// Sorted k-th powers of fixed_length_members; the support of the word
// measure, each point carrying mass 2^-n.
std::vector<Int> power_support(const EllipsephicParams& p, const Budgets& budget);

// Ordered t-fold representation counts r_t(x) over `window`:
// the number of ordered t-tuples of support points summing to x.
struct RepCounts {
    Window window;
    std::vector<long long> counts;  // counts[x - window.lo]

    long long at(long long x) const {
        return window.contains(x) ? counts[static_cast<size_t>(x - window.lo)] : 0;
    }
};
RepCounts representation_counts(int t, const EllipsephicParams& p, Window window,
                                const Budgets& budget);

// Convolution of two count arrays (associativity oracle for the above).
RepCounts convolve_counts(const RepCounts& a, const RepCounts& b, Window window,
                          const Budgets& budget);

// Order certificate for covering `window` by sums of at most s k-th powers
// of variable-length members (0 included, so s-fold covers "at most s").
struct BasisCertificate {
    bool found = false;
    int order = 0;                           // least covering s, or s_max when !found
    Window window;
    std::optional<long long> witness_prev;   // least window point uncovered at order-1
};
BasisCertificate min_basis_order(const EllipsephicParams& p, Window window, int s_max,
                                 const Budgets& budget);

// Variable-length members of the digit set within [0, limit), including 0.
std::vector<long long> variable_length_members(const EllipsephicParams& p, long long limit,
                                               const Budgets& budget);

// An arithmetic progression found inside the 4r-fold sumset of A (A within
// [1, X], |A| >= 1 + X/r): difference in [1, r-1], length >= floor(X/2r^2).
struct Progression {
    long long diff = 0;
    long long start = 0;
    long long length = 0;
};
Progression find_progression(const std::vector<long long>& a_set, long long X, long long r,
                             const Budgets& budget);

// Exact union of j-fold interval sums j*I for j <= ceil(2K/eta^2), checked
// to contain [ceil(4X/eta), floor(KX/eta)] where eta = |I|/X.
struct IntervalCover {
    long long j_limit = 0;
    long long target_lo = 0;
    long long target_hi = 0;
    bool covered = false;
};
IntervalCover interval_sum_cover(long long x0, long long x1, long long X, long long K);

}  // namespace elab
