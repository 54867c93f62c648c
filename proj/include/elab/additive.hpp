#pragma once
// additive.hpp - additive energy, quadripartite energy with carries, digital
// Hamming balls, and box norms with their Cauchy-Schwarz inequality.
//
// Energies are exact integers throughout: inequality certificates like
// E(A) <= (2b)^{4r} |A|^2 are compared after clearing roots by squaring, so
// no tolerances enter integer-side checks.

#include <complex>
#include <optional>
#include <vector>

#include "elab/bitset_range.hpp"
#include "elab/numeric.hpp"
#include "elab/radix.hpp"

namespace elab {

// Sorted duplicate-free integer set.
using IntSet = std::vector<long long>;

IntSet make_set(std::vector<long long> values);

// E(A): number of quadruples with a1 + a2 = a3 + a4.
Int additive_energy(const IntSet& a, const Budgets& budget);

// Number of quadruples (a1,a2,a3,a4) in A1 x A2 x A3 x A4 with
// a1 + a2 = a3 + a4 + e, |e| < b.
Int quad_energy_carry(const IntSet& a1, const IntSet& a2, const IntSet& a3, const IntSet& a4,
                      long long e, Base base, const Budgets& budget);

// Number of solutions s1 + s2 = s3 + s4 with s_i in S_i (no carry).
Int quad_set_energy(const IntSet& s1, const IntSet& s2, const IntSet& s3, const IntSet& s4,
                    const Budgets& budget);

// All integers with at most r nonzero centered digits among positions
// 0..m-1, optionally intersected with a window.
IntSet hamming_ball(Base base, int r, int m, std::optional<Window> window,
                    const Budgets& budget);

// Complex function on a product of finite axis sets X_1 x ... x X_|I|,
// stored row-major (last axis fastest).
struct BoxFunction {
    std::vector<int> axis_sizes;
    std::vector<std::complex<long double>> values;

    size_t table_size() const {
        size_t s = 1;
        for (int a : axis_sizes) s *= static_cast<size_t>(a);
        return s;
    }
    size_t index(const std::vector<int>& coords) const {
        size_t idx = 0;
        for (size_t i = 0; i < axis_sizes.size(); ++i)
            idx = idx * static_cast<size_t>(axis_sizes[i]) + static_cast<size_t>(coords[i]);
        return idx;
    }
};

// Gowers box norm: 2^|I|-th root of the product average over coordinate
// pairs. The average is real up to rounding; it is clamped at zero before
// the root and the discarded imaginary part feeds the error radius.
struct BoxNorm {
    long double value;
    long double avg;         // the (clamped) real product average
    long double err_radius;  // bound on the average's rounding error
};
BoxNorm box_norm(const BoxFunction& f, const Budgets& budget);

// |E prod_i Psi_i(x) f(x)| <= ||f||_box for 1-bounded Psi_i independent of
// coordinate i. Independence and boundedness of each factor are verified.
struct BoxCsReport {
    long double lhs;
    long double rhs;
    bool ok;
};
BoxCsReport box_cs_check(const BoxFunction& f, const std::vector<BoxFunction>& psis,
                         const Budgets& budget);

// E(S1,S2,S3,S4)^4 <= E(S1) E(S2) E(S3) E(S4), exact integers.
struct QuadEnergyReport {
    Int mixed;                 // E(S1,S2,S3,S4)
    std::vector<Int> singles;  // E(S_i)
    bool ok;
};
QuadEnergyReport gowers_energy_check(const IntSet& s1, const IntSet& s2, const IntSet& s3,
                                     const IntSet& s4, const Budgets& budget);

// For A inside the r-ball (membership verified digit by digit):
// E(A) <= (2b)^{4r} |A|^2.
struct BallEnergyReport {
    Int energy;
    Int bound;
    bool ok;
};
BallEnergyReport ball_energy_check(const IntSet& a, Base base, int r, const Budgets& budget);

}  // namespace elab
