#pragma once
// radix.hpp - exact centered base-b digit arithmetic.
//
// Centered expansions use digits in (-b/2, b/2]. For integers the expansion
// is finite and unique; for angles mod 1 it is unique once the ambiguous
// all-(b-1)/2 tail is resolved toward the all-negative form, which is the
// convention used throughout. Everything here is exact rational arithmetic;
// no floating point is involved in digit extraction.

#include <vector>

#include "elab/budget.hpp"
#include "elab/numeric.hpp"

namespace elab {

struct Base {
    int value;

    // b = 2 is rejected: the digit-weight sandwich inequality fails there.
    explicit Base(int b) : value(b) {
        if (b < 3) throw hypothesis_error("Base: b >= 3 required");
    }
};

// An exact rational angle reduced mod 1: num/den with 0 <= num < den,
// gcd(num, den) = 1.
class UnitAngle {
public:
    UnitAngle() : num_(0), den_(1) {}
    UnitAngle(Int num, Int den);
    explicit UnitAngle(const Rat& r) : UnitAngle(r.get_num(), r.get_den()) {}

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    Rat to_rat() const { return make_rat(num_, den_); }

    UnitAngle times(const Int& m) const;       // theta * m mod 1
    UnitAngle times_pow(long base, unsigned long e) const;  // theta * base^e mod 1
    UnitAngle plus(const UnitAngle& o) const;
    UnitAngle negated() const;

    Rat dist_to_int() const;  // ||theta||, in [0, 1/2]

    // Value in [0, 1) with error < 2^-63 (the only lossy exit from this type).
    long double to_ld() const;

    bool operator==(const UnitAngle& o) const { return num_ == o.num_ && den_ == o.den_; }

private:
    Int num_, den_;
};

// Distance from an arbitrary rational to the nearest integer.
Rat dist_to_int(const Rat& x);

struct CenteredExpansion {
    enum class Kind { Integer, Fractional };

    int base;
    Kind kind;
    // Integer kind: little-endian, digits[i] multiplies b^i, no trailing zero.
    // Fractional kind: digits[j] multiplies b^-(j+1), exactly n entries.
    std::vector<long> digits;
};

// Unique finite centered expansion of an integer (empty for zero).
CenteredExpansion centered_digits(const Int& x, Base base);

// Reconstruction sum(digits[i] * b^i); inverse of centered_digits.
Int eval_centered(const CenteredExpansion& e);

// d_b(x): number of nonzero digits of the centered expansion of x.
int nonzero_digit_count(const Int& x, Base base);

// First n digits after the radix point of the centered expansion of alpha
// mod 1, ambiguous tails resolved toward -(b-1)/2.
CenteredExpansion frac_digits(const UnitAngle& alpha, Base base, int n);

// w_n(alpha): nonzero count among the first n fractional digits.
int frac_nonzero_count(const UnitAngle& alpha, Base base, int n);

// Analytic weight sum_{i in [0,n)} ||alpha * b^i||^2, exact.
Rat dist_sq_sum(const UnitAngle& alpha, Base base, int n);

// psi: the integer sum_j frac_digits(alpha)[j] * b^(n-1-j). Satisfies
// |psi| <= (3/4) b^n, d_b(psi(alpha)) = w_n(alpha), and
// ||alpha - b^-n psi(alpha)|| <= (3/4) b^-n.
Int encode_frac_prefix(const UnitAngle& alpha, Base base, int n);

}  // namespace elab
