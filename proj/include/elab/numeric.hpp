#pragma once
// numeric.hpp - exact integer/rational aliases and small helpers.
//
// All exact arithmetic in the library goes through these types. Floating
// point never touches digit extraction or inequality certificates; it is
// confined to exponential-sum evaluation and box-norm averages.

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace elab {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long constructor; long is 64-bit on every platform we
// build for.
static_assert(sizeof(long) == 8, "64-bit long assumed");

inline Int make_int(long long v) { return Int(static_cast<long>(v)); }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int pow_int(long base, unsigned long e) { return pow_int(Int(base), e); }

inline Int factorial(unsigned long k) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

// Floor division and the matching remainder in [0, |d|).
inline Int fdiv(const Int& a, const Int& d) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline Int fmod_int(const Int& a, const Int& d) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return r;
}

inline Rat make_rat(Int num, Int den) {
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline bool fits_ll(const Int& v) { return v.fits_slong_p(); }

inline long long to_ll(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer exceeds 64-bit range");
    return v.get_si();
}

// "num/den" with den omitted for integers; used wherever exactness is claimed.
inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Documented guard band for long-double accumulations: every floating
// threshold comparison adds this on the safe side.
inline long double eps_num(uint64_t terms) {
    return static_cast<long double>(terms) * 0x1p-58L;
}

inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

}  // namespace elab
