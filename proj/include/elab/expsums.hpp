#pragma once
// expsums.hpp - the normalised exponential sum over k-th powers of two-digit
// words, large-value scans with rational-approximation annotations, exact
// moments with quadrature cross-checks, and the decoupling identities.
//
// Phase evaluation always reduces theta*m to an exact rational in [0,1)
// before any trigonometric call. Magnitudes carry a documented guard band
// eps_num = (#terms) * 2^-58 which every threshold comparison must respect.

#include <complex>
#include <vector>

#include "elab/ellipsephic.hpp"

namespace elab {

// The scale constants of the method, computed exactly from (b, k, d1, d2).
struct MethodConstants {
    Int weyl_threshold_B;    // b^(6k^2)
    Int expansion_C_sq;      // b^(7k^2), the square of the growth constant
    Int moment_fold_t;       // 8 b^(9k^2)
    Rat near_one_gap;        // (1/4) b^(-3k^2)
    Int major_q_bound;       // 2 k! b^(k(k-1)/2 + 1)
    Rat major_dist_coeff;    // b^(k(k+1)/2 - 1) / (2 k!), scales N^-k
    Int linear_modulus_q0;   // k! |d2 - d1|^k b^(k(k-1)/2), <= b^(k^2)

    static MethodConstants from(const EllipsephicParams& p);
};

// mu_hat(theta): average of e(theta * m^k) over all 2^n digit words.
std::complex<long double> weyl_sum(const EllipsephicParams& p, const UnitAngle& theta,
                                   const Budgets& budget);

// |E_{y in {0,1}^m} e(alpha * L_d(y))| via the exact product formula
// prod |(1 + e(alpha d^i))/2|, plus the bound exp(-sum ||alpha d^i||^2).
struct LinearProduct {
    long double magnitude;
    long double exp_bound;
};
LinearProduct linear_product_magnitude(const UnitAngle& alpha, int m, const Int& stride);

struct LargeValueRecord {
    UnitAngle theta;
    long double magnitude;
    Int a;      // best rational approximation a/q with q <= q_bound
    Int q;
    Rat qdist;  // exact ||theta * q||
};

// All grid angles a/grid with |mu_hat| >= delta, annotated with the best
// rational approximation of denominator <= q_bound (continued fractions).
std::vector<LargeValueRecord> scan_large_values(const EllipsephicParams& p, long long grid,
                                                long double delta, const Int& q_bound,
                                                const Budgets& budget, unsigned threads = 1);

// Exact 2t-th moment: sum_x r_t(x)^2 / 2^(2tn).
Rat moment_exact(const EllipsephicParams& p, int t, const Budgets& budget);

// Composite quadrature of |mu_hat|^(2t) over [0,1); cross-check target for
// moment_exact. error_estimate compares against the half-panel rule.
struct Quadrature {
    long double value;
    long double error_estimate;
};
Quadrature moment_quadrature(const EllipsephicParams& p, int t, long long panels,
                             const Budgets& budget, unsigned threads = 1);

// Split an n-bit word into k stride classes x^(j) = (x_{ik+j})_i and assert
// the exact identity L_b(x) = sum_j b^j L_{b^k}(x^(j)).
std::vector<std::vector<int>> multisection_split(const std::vector<int>& bits, int k, Base base);

// Decoupling chain checks at one angle, for caller-supplied shifts
// t_1..t_{k-1}:
//  (i)  |E_y e(alpha L_{b^k}(y))| <= exp(-b^(-2k) * wtilde_n(alpha)) for the
//       angles alpha = theta q0 prod_i (L_{b^k}(x^(i)) + t_i), all choices of
//       x^(1..k-1);
//  (ii) |mu_hat(theta)|^(2^k) <= the box-average of the decoupled product
//       phase, both sides by direct summation.
struct DecouplingReport {
    bool product_bound_ok;
    long double product_worst_margin;  // min over tuples of (bound - magnitude)
    long double lhs_pow;               // |mu_hat|^(2^k)
    long double rhs_box;               // box average (real, >= 0)
    bool box_ok;
};
DecouplingReport decoupling_check(const EllipsephicParams& p, const UnitAngle& theta,
                                  const std::vector<Int>& shifts, const Budgets& budget);

}  // namespace elab
