#include "elab/radix.hpp"

namespace elab {

UnitAngle::UnitAngle(Int num, Int den) {
    if (den == 0) throw hypothesis_error("UnitAngle: zero denominator");
    if (den < 0) { den = -den; num = -num; }
    num = fmod_int(num, den);  // representative in [0, den)
    Int g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    num_ = num / g;
    den_ = den / g;
}

UnitAngle UnitAngle::times(const Int& m) const { return UnitAngle(num_ * m, den_); }

UnitAngle UnitAngle::times_pow(long base, unsigned long e) const {
    // num * base^e mod den via modular exponentiation; den is unchanged
    // (up to reduction), so this stays cheap for huge e.
    Int be, b(base);
    mpz_powm_ui(be.get_mpz_t(), b.get_mpz_t(), e, den_.get_mpz_t());
    return UnitAngle(num_ * be, den_);
}

UnitAngle UnitAngle::plus(const UnitAngle& o) const {
    return UnitAngle(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

UnitAngle UnitAngle::negated() const { return UnitAngle(-num_, den_); }

Rat UnitAngle::dist_to_int() const {
    Int alt = den_ - num_;
    return make_rat(num_ <= alt ? num_ : alt, den_);
}

long double UnitAngle::to_ld() const {
    Int scaled = (num_ << 63) / den_;  // in [0, 2^63)
    return static_cast<long double>(scaled.get_ui()) * 0x1p-63L;
}

Rat dist_to_int(const Rat& x) {
    Int r = fmod_int(x.get_num(), x.get_den());
    Int alt = x.get_den() - r;
    return make_rat(r <= alt ? r : alt, x.get_den());
}

CenteredExpansion centered_digits(const Int& x, Base base) {
    const long b = base.value;
    CenteredExpansion e{base.value, CenteredExpansion::Kind::Integer, {}};
    Int rest = x;
    while (rest != 0) {
        long r = mpz_fdiv_ui(rest.get_mpz_t(), static_cast<unsigned long>(b));
        // residue -> digit in (-b/2, b/2]; r == b/2 stays positive (no borrow)
        long d = (2 * r > b) ? r - b : r;
        e.digits.push_back(d);
        rest = (rest - d) / b;
    }
    return e;
}

Int eval_centered(const CenteredExpansion& e) {
    if (e.kind != CenteredExpansion::Kind::Integer)
        throw hypothesis_error("eval_centered: integer expansion expected");
    Int acc = 0;
    for (auto it = e.digits.rbegin(); it != e.digits.rend(); ++it) acc = acc * e.base + *it;
    return acc;
}

int nonzero_digit_count(const Int& x, Base base) {
    int count = 0;
    for (long d : centered_digits(x, base).digits)
        if (d != 0) ++count;
    return count;
}

CenteredExpansion frac_digits(const UnitAngle& alpha, Base base, int n) {
    if (n < 1) throw hypothesis_error("frac_digits: n >= 1 required");
    const long b = base.value;
    const long shift = (b - 1) / 2;
    // Digit-wise shift trick: the centered expansion of alpha equals the
    // plain base-b expansion of alpha + shift*b/(b-1), with `shift`
    // subtracted from every digit. The plain greedy expansion of a rational
    // never ends in an all-(b-1) tail, which realises the preferred
    // all-negative resolution of ambiguous centered tails.
    Int den = alpha.den() * (b - 1);
    Int num = fmod_int(alpha.num() * (b - 1) + Int(shift) * b * alpha.den(), den);
    CenteredExpansion e{base.value, CenteredExpansion::Kind::Fractional, {}};
    e.digits.reserve(n);
    for (int j = 0; j < n; ++j) {
        num *= b;
        Int q = fdiv(num, den);
        num -= q * den;
        e.digits.push_back(q.get_si() - shift);
    }
    return e;
}

int frac_nonzero_count(const UnitAngle& alpha, Base base, int n) {
    int count = 0;
    for (long d : frac_digits(alpha, base, n).digits)
        if (d != 0) ++count;
    return count;
}

Rat dist_sq_sum(const UnitAngle& alpha, Base base, int n) {
    if (n < 1) throw hypothesis_error("dist_sq_sum: n >= 1 required");
    const Int& den = alpha.den();
    Int r = alpha.num();
    Int acc = 0;
    for (int i = 0; i < n; ++i) {
        Int d = (2 * r <= den) ? r : den - r;
        acc += d * d;
        r = fmod_int(r * base.value, den);
    }
    return make_rat(acc, den * den);
}

Int encode_frac_prefix(const UnitAngle& alpha, Base base, int n) {
    CenteredExpansion e = frac_digits(alpha, base, n);
    Int acc = 0;
    for (long d : e.digits) acc = acc * base.value + d;
    return acc;
}

}  // namespace elab
