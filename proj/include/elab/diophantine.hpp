#pragma once
// diophantine.hpp - rational approximation and the constructive
// digital-to-diophantine pipeline: Dirichlet approximation by continued
// fractions, the bootstrapped refinement lemma with exact certificates, the
// digit-truncation almost-homomorphism, and the fiber-selection pipeline
// that turns a low-digit-weight census into a single modulus q.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "elab/numeric.hpp"
#include "elab/radix.hpp"

namespace elab {

struct RationalApprox {
    Int a;    // gcd(a, q) = 1
    Int q;    // 1 <= q <= Q
    Rat err;  // exact |theta - a/q| <= 1/(qQ)
};

// Best approximation with denominator <= Q via continued-fraction
// convergents; exact rational arithmetic throughout.
RationalApprox dirichlet_approx(const UnitAngle& theta, const Int& Q);

// Refinement: given >= delta2 * L elements n in [1, L] with ||alpha n|| <=
// delta1 (and delta2 >= 32 delta1, L >= 16/delta2), produce q <= 16/delta2
// with ||alpha q|| <= delta1 / (delta2 L). Hypotheses are verified exactly;
// a violated clause is named in the thrown hypothesis_error.
struct VinogradovResult {
    Int q;
    Rat qdist;                 // exact ||alpha q||
    RationalApprox dirichlet;  // the stage-one approximation at Q = 4L
    bool divisibility_ok;      // every census element divisible by q
};
VinogradovResult vinogradov_refine(const UnitAngle& alpha, long long L, const Rat& delta1,
                                   const Rat& delta2, const std::vector<long long>& census);

// The 7(6b+1) values lambda*b^(n-1) + lambda', |lambda| <= 3b, |lambda'| <= 3.
std::vector<Int> carry_set(Base base, int n);
bool in_carry_set(const Int& x, Base base, int n);

// psi(theta*m1) + psi(theta*m2) - psi(theta*m3) - psi(theta*m4) lies in the
// carry set for every additive quadruple m1 + m2 = m3 + m4.
struct AlmostHomReport {
    long long checked = 0;
    long long failures = 0;
};
AlmostHomReport almost_hom_check(const UnitAngle& theta, Base base, int n,
                                 const std::vector<std::array<long long, 4>>& quadruples);

// Inputs of the digital-to-diophantine conversion. eta = 0 means "take the
// density from the exact census".
struct DigitalHypothesis {
    UnitAngle theta;
    Base base;
    int n;          // digit count; N = b^n
    long long M;    // census range [-M, M]
    int r;          // digit-weight bound
    Rat eta;        // claimed density of {m : w_n(theta m) <= r}

    // M, N >= b^(20r) eta^-2: the regime in which the default deltas are
    // usable. False at desk scale; overrides exist for exactly that reason.
    bool default_scale_feasible() const;
};

// Optional replacements for the default parameters delta1 = 2b/N and
// delta2 = 2^(-4r-22) b^(-4r-1) eta^2, which are far out of reach at desk
// scale; overriding them exercises the construction on planted instances.
struct DiophOverrides {
    std::optional<Rat> delta1;
    std::optional<Rat> delta2;
};

struct FiberRow {
    Int label;        // a = psi(theta m)
    long long size;   // |X_a|
    int dyadic_j;     // 2^(-j-1) M < |X_a| <= 2^-j M
};

struct DiophTrace {
    // Refined: the full pipeline ran through vinogradov_refine.
    // DirichletFallback: the chosen fiber was a singleton (a desk-scale
    // degeneracy: the translated set has no nonzero element), so q comes
    // from the plain stage-one approximation at Q = 2M.
    // Trivial: theta = 0, q = 1 immediately.
    enum class Outcome { Refined, DirichletFallback, Trivial };

    Outcome outcome = Outcome::Refined;
    long long census_size = 0;
    Rat census_eta;
    std::vector<FiberRow> fibers;     // sorted by (j, -size, a)
    Int chosen_label;
    int chosen_j = 0;
    long long fiber_size = 0;
    long long base_point = 0;         // m0 subtracted from the fiber
    bool flipped_sign = false;
    long long refine_census = 0;      // |S| fed into the refinement
    Rat delta1, delta2;
    Int q;
    Rat qdist;
};

// Executes the pipeline: census of {m in [-M, M] : w_n(theta m) <= r},
// fiber decomposition through psi, dyadic class selection, translation and
// sign normalisation, then vinogradov_refine. Throws hypothesis_error when a
// precondition fails (naming it) and reports a stalled pipeline through the
// same channel when no fiber passes.
DiophTrace digital_to_diophantine(const DigitalHypothesis& hyp, const DiophOverrides& ov,
                                  const Budgets& budget, unsigned threads = 1);

}  // namespace elab
