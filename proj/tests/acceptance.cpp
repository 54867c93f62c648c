// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <set>
#include <vector>

#include "elab/additive.hpp"
#include "elab/diophantine.hpp"
#include "elab/ellipsephic.hpp"
#include "elab/expsums.hpp"
#include "elab/growth.hpp"
#include "elab/prng.hpp"

using namespace elab;

namespace {

const Budgets budget = Budgets::from_env();
int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int idx, const char* name, bool ok, double secs, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s (%.3fs)%s%s\n", ok ? "PASS" : "FAIL", idx, name, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

UnitAngle random_angle(SplitMix64& rng, long long max_den = 1'000'000) {
    long long den = rng.range(2, max_den);
    return UnitAngle(make_int(rng.range(0, den - 1)), make_int(den));
}

// 1. the worked decimal example, under a millisecond
void criterion_1() {
    (void)centered_digits(Int(6277), Base(10));  // warm
    Timer t;
    auto e = centered_digits(Int(6277), Base(10));
    double secs = t.seconds();
    bool ok = e.digits == std::vector<long>{-3, -2, 3, -4, 1} && secs < 0.001;
    report(1, "centered digits of 6277 in base 10", ok, secs);
}

// 2. digit-weight sandwich, 10^4 random angles, exact rationals. The upper
// bound holds for every angle; the lower bound holds on its domain of
// validity (w_n >= 1, or an expansion terminating within n digits) and is
// checked there -- an angle whose only nonzero digits lie beyond position n
// is a genuine counterexample to the unrestricted form (1/9 at b=3, n=1).
void criterion_2() {
    Timer t;
    SplitMix64 rng(2);
    long violations = 0;
    for (int i = 0; i < 10'000; ++i) {
        int b = std::vector<int>{3, 5, 10}[rng.below(3)];
        int n = static_cast<int>(rng.range(1, 40));
        UnitAngle a = random_angle(rng);
        Rat wt = dist_sq_sum(a, Base(b), n);
        int w = frac_nonzero_count(a, Base(b), n);
        if (Rat(w) > 16 * b * b * wt) ++violations;
        if (w >= 1 && wt > w) ++violations;

        int j = static_cast<int>(rng.range(1, n));
        UnitAngle term(make_int(rng.range(0, 1'000'000)),
                       pow_int(b, static_cast<unsigned long>(j)));
        Rat wt2 = dist_sq_sum(term, Base(b), n);
        int w2 = frac_nonzero_count(term, Base(b), n);
        if (wt2 > w2 || Rat(w2) > 16 * b * b * wt2) ++violations;
    }
    double secs = t.seconds();
    report(2, "sandwich wt <= w <= 16 b^2 wt on 10^4 angles (lower bound on its domain)",
           violations == 0 && secs < 30, secs,
           violations ? std::to_string(violations) + " violations" : "");
}

// 3. very-large-value characterisation on the full grid a/2^20 at
// (b,k,n) = (3,2,4): no angle lacking (q <= 36, ||theta q|| <= (9/4) 81^-2)
// reaches magnitude 1 - (1/4) 3^-12; single-threaded
void criterion_3() {
    Timer t;
    EllipsephicParams p(Base(3), 2, 4, 1, 2);
    const long long G = 1 << 20;
    auto support = power_support(p, budget);
    const size_t terms = support.size();
    std::vector<uint64_t> m_mod(terms);
    for (size_t i = 0; i < terms; ++i)
        m_mod[i] = mpz_fdiv_ui(support[i].get_mpz_t(), static_cast<unsigned long>(G));

    std::vector<long double> tc(static_cast<size_t>(G)), ts(static_cast<size_t>(G));
    constexpr long double TAU = 6.283185307179586476925286766559L;
    for (long long j = 0; j < G; ++j) {
        tc[static_cast<size_t>(j)] = cosl(TAU * static_cast<long double>(j) / G);
        ts[static_cast<size_t>(j)] = sinl(TAU * static_cast<long double>(j) / G);
    }

    const long double thresh = 1.0L - 0.25L * powl(3.0L, -12);
    const long double guard = eps_num(terms);
    const long double limit_sq = (thresh - guard) * (thresh - guard) *
                                 static_cast<long double>(terms) * static_cast<long double>(terms);
    // ||a q / 2^20|| <= 9/26244  <=>  min(r, G-r) * 26244 <= 9 G
    const long long dist_num = 26244, dist_cap = 9 * G;

    long long large = 0, bad = 0;
    for (long long a = 0; a < G; ++a) {
        long double re = 0, im = 0;
        for (size_t i = 0; i < terms; ++i) {
            uint64_t j = (m_mod[i] * static_cast<uint64_t>(a)) & (G - 1);
            re += tc[j];
            im += ts[j];
        }
        if (re * re + im * im >= limit_sq) {
            ++large;
            bool good = false;
            for (long long q = 1; q <= 36 && !good; ++q) {
                long long r = (a * q) & (G - 1);
                good = std::min(r, G - r) * dist_num <= dist_cap;
            }
            if (!good) ++bad;
        }
    }
    double secs = t.seconds();
    report(3, "grid 2^20 very-large values all lie on major arcs", bad == 0 && secs < 600, secs,
           std::to_string(large) + " large values");
}

// 4. moment identity: exact convolution vs quadrature, and the pinned 1/2
void criterion_4() {
    Timer t;
    bool ok = true;
    for (auto [n, tt] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        EllipsephicParams p(Base(3), 2, n, 1, 2);
        Rat exact = moment_exact(p, tt, budget);
        Quadrature q = moment_quadrature(p, tt, 1 << 14, budget);
        if (fabsl(static_cast<long double>(mpq_get_d(exact.get_mpq_t())) - q.value) > 1e-6L)
            ok = false;
    }
    EllipsephicParams p11(Base(3), 2, 1, 1, 2);
    ok = ok && moment_exact(p11, 1, budget) == Rat(1, 2);
    report(4, "moment identity exact vs quadrature within 1e-6", ok, t.seconds());
}

// 5. energy bounds over ball subsets, plus the quadripartite carry bound
void criterion_5() {
    Timer t;
    SplitMix64 rng(5);
    bool ok = true;
    for (int i = 0; i < 200 && ok; ++i) {
        int r = static_cast<int>(rng.range(0, 3));
        int m = static_cast<int>(rng.range(1, 6));
        IntSet ball = hamming_ball(Base(3), r, m, std::nullopt, budget);
        std::vector<long long> sub;
        for (long long v : ball)
            if (rng.unit() < 0.5) sub.push_back(v);
        if (sub.empty()) sub.push_back(0);
        ok = ball_energy_check(make_set(std::move(sub)), Base(3), r, budget).ok;
    }
    for (int i = 0; i < 50 && ok; ++i) {
        std::vector<IntSet> sets;
        std::vector<int> rs;
        for (int j = 0; j < 4; ++j) {
            int r = static_cast<int>(rng.range(0, 3));
            IntSet ball = hamming_ball(Base(3), r, 5, std::nullopt, budget);
            std::vector<long long> sub;
            for (long long v : ball)
                if (rng.unit() < 0.5) sub.push_back(v);
            if (sub.empty()) sub.push_back(0);
            sets.push_back(make_set(std::move(sub)));
            rs.push_back(r);
        }
        for (long long e = -2; e <= 2 && ok; ++e) {
            Int c = quad_energy_carry(sets[0], sets[1], sets[2], sets[3], e, Base(3), budget);
            Int rhs = pow_int(6, static_cast<unsigned long>(2 * (rs[0] + rs[1] + rs[2] + rs[3])));
            for (auto& s : sets) rhs *= static_cast<unsigned long>(s.size());
            ok = c * c <= rhs;
        }
    }
    double secs = t.seconds();
    report(5, "ball energy and quadripartite carry bounds, exact integers", ok && secs < 60,
           secs);
}

// 6. cube sumset density, exhaustive pairs for n <= 3
void criterion_6() {
    Timer t;
    long long bad = 0, pairs = 0;
    for (int n = 1; n <= 3; ++n) {
        const uint32_t full = uint32_t{1} << n;
        for (uint32_t m1 = 1; m1 < (uint32_t{1} << full); ++m1)
            for (uint32_t m2 = 1; m2 < (uint32_t{1} << full); ++m2) {
                CubeSet a{n, {}}, b{n, {}};
                for (uint32_t i = 0; i < full; ++i) {
                    if ((m1 >> i) & 1) a.members.push_back(i);
                    if ((m2 >> i) & 1) b.members.push_back(i);
                }
                ++pairs;
                if (!cube_density_check({a, b}, budget).ok) ++bad;
            }
    }
    double secs = t.seconds();
    report(6, "cube sumset density exhaustive n <= 3, r = 2", bad == 0 && secs < 60, secs,
           std::to_string(pairs) + " pairs");
}

// 7. the gamma-sum scan minimum and its center value
void criterion_7() {
    Timer t;
    bool ok = std::fabs(simplex_objective({0.5, 0.5}) - 1.0) <= 1e-12;
    for (int r = 2; r <= 4; ++r) {
        auto scan = simplex_min_scan(r, r <= 3 ? 0.01 : 0.02, 200);
        if (scan.minimum < 1 - 1e-9) ok = false;
    }
    report(7, "ordered-simplex gamma-sum minimum >= 1 - 1e-9 for r in {2,3,4}", ok, t.seconds());
}

// 8. refinement lemma property suite on 10^4 planted instances
void criterion_8() {
    Timer t;
    SplitMix64 rng(8);
    long ran = 0, bad = 0;
    while (ran < 10'000) {
        long long q = rng.range(2, 40);
        long long a = rng.range(1, q - 1);
        Int g;
        mpz_gcd(g.get_mpz_t(), make_int(a).get_mpz_t(), make_int(q).get_mpz_t());
        if (g != 1) continue;
        long long L = q * rng.range(32, 120);
        Int pert_den = make_int(L) * make_int(L) * make_int(q) * 64;
        UnitAngle alpha(make_int(a) * pert_den + make_int(q), make_int(q) * pert_den);
        std::vector<long long> census;
        for (long long n = q; n <= L; n += q) census.push_back(n);
        Rat delta1(0);
        for (long long n : census) delta1 = std::max(delta1, alpha.times(make_int(n)).dist_to_int());
        if (delta1 == 0) delta1 = make_rat(1, pert_den);
        Rat delta2 = make_rat(Int(static_cast<long>(census.size())), make_int(2 * L));
        if (delta2 < 32 * delta1 || Rat(make_int(L)) * delta2 < 16) continue;
        try {
            auto res = vinogradov_refine(alpha, L, delta1, delta2, census);
            if (Rat(res.q) * delta2 > 16 || res.qdist * delta2 * make_int(L) > delta1) ++bad;
        } catch (const std::exception&) {
            ++bad;
        }
        ++ran;
    }
    double secs = t.seconds();
    report(8, "refinement certificates on 10^4 planted instances", bad == 0, secs,
           bad ? std::to_string(bad) + " failures" : "");
}

// 9. almost-homomorphism: 10^5 quadruples across b in {3,5,10}
void criterion_9() {
    Timer t;
    SplitMix64 rng(9);
    long long checked = 0, failed = 0;
    for (int b : {3, 5, 10}) {
        size_t sigma = carry_set(Base(b), 6).size();
        if (sigma > 7u * (6u * static_cast<unsigned>(b) + 1)) ++failed;
        for (int blockrep = 0; blockrep < 34; ++blockrep) {
            UnitAngle theta = random_angle(rng);
            std::vector<std::array<long long, 4>> quads;
            for (int i = 0; i < 1000; ++i) {
                long long m1 = rng.range(-1'000'000, 1'000'000);
                long long m2 = rng.range(-1'000'000, 1'000'000);
                long long m3 = rng.range(-1'000'000, 1'000'000);
                quads.push_back({m1, m2, m3, m1 + m2 - m3});
            }
            auto rep = almost_hom_check(theta, Base(b), 6, quads);
            checked += rep.checked;
            failed += rep.failures;
        }
    }
    double secs = t.seconds();
    report(9, "psi is an almost-homomorphism into the carry set", failed == 0 && checked >= 100'000,
           secs, std::to_string(checked) + " quadruples");
}

// 10. oracle equivalences, zero tolerance on the integer sides
void criterion_10() {
    Timer t;
    SplitMix64 rng(10);
    bool ok = true;

    for (int i = 0; i < 50 && ok; ++i) {  // sumset vs pairwise brute force
        std::vector<long long> av, bv;
        for (int j = 0; j < 200; ++j) {
            av.push_back(rng.range(-150, 150));
            bv.push_back(rng.range(-150, 150));
        }
        Window w{-300, 301};
        RangeBitset a = RangeBitset::from_values(av, w, budget);
        RangeBitset b = RangeBitset::from_values(bv, w, budget);
        Window clip{rng.range(-250, 0), rng.range(1, 250)};
        auto got = sumset(a, b, clip, budget).values();
        std::set<long long> oracle;
        for (long long x : a.values())
            for (long long y : b.values())
                if (clip.contains(x + y)) oracle.insert(x + y);
        ok = got == std::vector<long long>(oracle.begin(), oracle.end());
    }

    for (int i = 0; i < 10 && ok; ++i) {  // energy vs quadruple loop
        std::vector<long long> v;
        for (int j = 0, sz = static_cast<int>(rng.range(1, 60)); j < sz; ++j)
            v.push_back(rng.range(-400, 400));
        IntSet a = make_set(std::move(v));
        Int loop = 0;
        for (long long x1 : a)
            for (long long x2 : a)
                for (long long x3 : a)
                    for (long long x4 : a)
                        if (x1 + x2 == x3 + x4) ++loop;
        ok = additive_energy(a, budget) == loop;
    }

    constexpr long double TAU = 6.283185307179586476925286766559L;
    for (int m = 1; m <= 12 && ok; ++m) {  // product formula vs direct sum
        UnitAngle alpha = random_angle(rng, 10'000);
        long d = rng.range(2, 9);
        auto lp = linear_product_magnitude(alpha, m, Int(d));
        std::complex<long double> acc(0, 0);
        for (uint64_t y = 0; y < (uint64_t{1} << m); ++y) {
            Int l = 0, pw = 1;
            for (int i = 0; i < m; ++i) {
                if ((y >> i) & 1) l += pw;
                pw *= d;
            }
            long double x = alpha.times(l).to_ld();
            acc += std::complex<long double>(cosl(TAU * x), sinl(TAU * x));
        }
        ok = fabsl(lp.magnitude - std::abs(acc) / static_cast<long double>(uint64_t{1} << m)) <
             1e-13L;
    }

    for (int i = 0; i < 10'000 && ok; ++i) {  // multisection identity, exact
        int k = static_cast<int>(rng.range(2, 4));
        int n = k * static_cast<int>(rng.range(1, 5));
        std::vector<int> bits(static_cast<size_t>(n));
        for (auto& x : bits) x = static_cast<int>(rng.below(2));
        try {
            multisection_split(bits, k, Base(static_cast<int>(rng.range(3, 8))));
        } catch (const std::exception&) {
            ok = false;
        }
    }
    report(10, "oracle equivalences: sumset, energy, product formula, multisection", ok,
           t.seconds());
}

// 11. box-norm Cauchy-Schwarz on 500 random instances
void criterion_11() {
    Timer t;
    SplitMix64 rng(11);
    constexpr long double TAU = 6.283185307179586476925286766559L;
    bool ok = true;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        size_t axes = 1 + rng.below(3);
        std::vector<int> sizes;
        size_t table = 1;
        for (size_t i = 0; i < axes; ++i) {
            sizes.push_back(static_cast<int>(rng.range(2, 4)));
            table *= static_cast<size_t>(sizes.back());
        }
        BoxFunction f{sizes, {}};
        for (size_t i = 0; i < table; ++i)
            f.values.emplace_back(rng.unit() * 2 - 1, rng.unit() * 2 - 1);
        std::vector<BoxFunction> psis;
        for (size_t ax = 0; ax < axes; ++ax) {
            BoxFunction psi{sizes, std::vector<std::complex<long double>>(table)};
            std::vector<int> coords(axes, 0);
            for (size_t idx = 0; idx < table; ++idx) {
                std::vector<int> alt = coords;
                alt[ax] = 0;
                size_t base_idx = psi.index(alt);
                if (idx == base_idx) {
                    long double ph = TAU * static_cast<long double>(rng.unit());
                    psi.values[idx] = {cosl(ph), sinl(ph)};
                } else {
                    psi.values[idx] = psi.values[base_idx];
                }
                for (size_t j = axes; j-- > 0;) {
                    if (++coords[j] < sizes[j]) break;
                    coords[j] = 0;
                }
            }
            psis.push_back(std::move(psi));
        }
        ok = box_cs_check(f, psis, budget).ok;
    }
    report(11, "box Cauchy-Schwarz on 500 random instances", ok, t.seconds());
}

// 12. desk-scale basis order with an independently re-checked certificate
void criterion_12() {
    Timer t;
    EllipsephicParams p(Base(3), 2, 4, 1, 2);
    bool ok = false;
    std::string detail;
    try {
        auto cert = min_basis_order(p, Window{50, 2001}, 64, budget);
        // min_basis_order re-verifies coverage and the witness internally by
        // an independent search; reaching here with found == true is the
        // certificate.
        ok = cert.found && cert.witness_prev.has_value();
        detail = "order " + std::to_string(cert.order) + ", witness at order-1: " +
                 std::to_string(*cert.witness_prev);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    report(12, "basis order certificate on [50, 2000]", ok, t.seconds(), detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("%s: %d/12 criteria passed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                12 - failures);
    return failures == 0 ? 0 : 1;
}
