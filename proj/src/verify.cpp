#include "elab/verify.hpp"

#include <cmath>
#include <ostream>
#include <set>

#include "elab/additive.hpp"
#include "elab/diophantine.hpp"
#include "elab/ellipsephic.hpp"
#include "elab/expsums.hpp"
#include "elab/growth.hpp"
#include "elab/prng.hpp"

namespace elab {

namespace {

const Budgets budget = Budgets::from_env();

UnitAngle random_angle(SplitMix64& rng, long long max_den = 1'000'000) {
    long long den = rng.range(2, max_den);
    long long num = rng.range(0, den - 1);
    return UnitAngle(make_int(num), make_int(den));
}

bool check_roundtrip(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        int b = static_cast<int>(rng.range(3, 16));
        Int x = make_int(rng.range(-1'000'000'000'000LL, 1'000'000'000'000LL));
        auto e = centered_digits(x, Base(b));
        if (eval_centered(e) != x) { out << "reconstruction mismatch\n"; return false; }
        for (long d : e.digits)
            if (2 * d <= -b || 2 * d > b) { out << "digit out of range\n"; return false; }
        if (!e.digits.empty() && e.digits.back() == 0) { out << "trailing zero\n"; return false; }
    }
    // Distinct canonical digit strings evaluate to distinct integers.
    for (int b : {3, 4, 5, 10}) {
        std::set<Int> seen;
        long count = 0;
        const long dmin = -(b - 1) / 2, dmax = b / 2;
        std::vector<long> digits(4, dmin);
        for (;;) {
            if (digits.back() != 0) {
                CenteredExpansion e{b, CenteredExpansion::Kind::Integer, digits};
                Int v = eval_centered(e);
                if (!seen.insert(v).second) {
                    out << "collision in base " << b << "\n";
                    return false;
                }
                if (centered_digits(v, Base(b)).digits != digits) {
                    out << "non-canonical extraction in base " << b << "\n";
                    return false;
                }
                ++count;
            }
            size_t i = 0;
            while (i < digits.size() && digits[i] == dmax) digits[i++] = dmin;
            if (i == digits.size()) break;
            ++digits[i];
        }
        (void)count;
    }
    return true;
}

bool check_word_map(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        int n = static_cast<int>(rng.range(1, 40));
        int b = static_cast<int>(rng.range(3, 12));
        int d1 = static_cast<int>(rng.range(0, b - 1)), d2;
        do { d2 = static_cast<int>(rng.range(0, b - 1)); } while (d2 == d1);
        std::vector<int> bits(static_cast<size_t>(n));
        for (auto& x : bits) x = static_cast<int>(rng.below(2));
        // direct power-sum evaluation as the oracle
        Int direct = 0;
        for (int i = 0; i < n; ++i)
            if (bits[static_cast<size_t>(i)])
                direct += pow_int(b, static_cast<unsigned long>(i));
        if (word_value(bits, Int(b)) != direct) { out << "word value mismatch\n"; return false; }
        // two-digit construction: digits d1/d2 per bit equal u + (d2-d1) L
        Int by_digits = 0;
        for (int i = n - 1; i >= 0; --i)
            by_digits = by_digits * b + (bits[static_cast<size_t>(i)] ? d2 : d1);
        Int u = Int(d1) * (pow_int(b, static_cast<unsigned long>(n)) - 1) / (b - 1);
        if (by_digits != u + Int(d2 - d1) * direct) {
            out << "digit map mismatch\n";
            return false;
        }
    }
    return true;
}

bool check_ns_progression(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 100, 10); ++t) {
        long long r = rng.range(2, 3);
        long long X = rng.range(6 * r, 60);
        long long need = 1 + (X + r - 1) / r;  // |A| >= 1 + X/r
        std::vector<long long> pool(static_cast<size_t>(X));
        for (long long i = 0; i < X; ++i) pool[static_cast<size_t>(i)] = i + 1;
        for (size_t i = pool.size(); i-- > 1;) std::swap(pool[i], pool[rng.below(i + 1)]);
        pool.resize(static_cast<size_t>(std::min<long long>(need, X)));
        auto A = make_set(pool);
        Progression pr = find_progression(A, X, r, budget);
        if (pr.diff < 1 || pr.diff > r - 1 || pr.length < X / (2 * r * r)) {
            out << "progression bounds violated\n";
            return false;
        }
        // membership re-verified against a freshly computed 4r-fold sumset
        Window w{4 * r, 4 * r * X + 1};
        RangeBitset acc = RangeBitset::from_values(A, w, budget);
        RangeBitset gen = acc;
        for (long long j = 1; j < 4 * r; ++j) acc = sumset(acc, gen, w, budget);
        for (long long i = 0; i < pr.length; ++i)
            if (!acc.test(pr.start + i * pr.diff)) { out << "member missing\n"; return false; }
    }
    return true;
}

bool check_interval_sum(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 50, 20); ++t) {
        long long X = rng.range(8, 60);
        long long x0 = rng.range(0, X - 2);
        long long x1 = rng.range(x0 + 1, X - 1);
        long long K = rng.range(4, 8);
        IntervalCover c = interval_sum_cover(x0, x1, X, K);
        if (!c.covered) { out << "cover failed\n"; return false; }
        // brute-force bitmap cross-check
        if (c.target_hi <= 4'000'000) {
            std::vector<char> hit(static_cast<size_t>(c.target_hi + 1), 0);
            for (long long j = 1; j <= c.j_limit; ++j)
                for (long long v = j * x0; v <= j * x1 && v <= c.target_hi; ++v)
                    if (v >= 0) hit[static_cast<size_t>(v)] = 1;
            for (long long v = c.target_lo; v <= c.target_hi; ++v)
                if (!hit[static_cast<size_t>(v)]) { out << "bitmap gap at " << v << "\n"; return false; }
        }
    }
    return true;
}

bool check_moment_parseval(uint64_t, uint64_t, std::ostream& out) {
    for (auto [n, t] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
        EllipsephicParams p(Base(3), 2, n, 1, 2);
        Rat exact = moment_exact(p, t, budget);
        Quadrature q = moment_quadrature(p, t, 1 << 12, budget);
        long double diff = fabsl(static_cast<long double>(mpq_get_d(exact.get_mpq_t())) - q.value);
        if (diff > 1e-6L) {
            out << "moment mismatch at n=" << n << " t=" << t << " diff=" << static_cast<double>(diff) << "\n";
            return false;
        }
    }
    return true;
}

bool check_support_chain(uint64_t, uint64_t, std::ostream& out) {
    for (int n : {1, 2}) {
        for (int t : {1, 2, 3}) {
            EllipsephicParams p(Base(3), 2, n, 1, 2);
            auto s = power_support(p, budget);
            Window full{to_ll(s.front()) * t, to_ll(s.back()) * t + 1};
            RepCounts rc = representation_counts(t, p, full, budget);
            Int supp = 0, sq = 0;
            for (long long c : rc.counts) {
                if (c > 0) ++supp;
                sq += make_int(c) * make_int(c);
            }
            // 1 <= |Supp| * sum mu^2, i.e. supp * sq >= 2^(2tn), exactly
            if (supp * sq < pow_int(2, static_cast<unsigned long>(2 * t * n))) {
                out << "support chain violated\n";
                return false;
            }
        }
    }
    return true;
}

bool check_very_large_values(uint64_t trials, uint64_t, std::ostream& out) {
    EllipsephicParams p(Base(3), 2, 4, 1, 2);
    MethodConstants mc = MethodConstants::from(p);
    long long grid = trials >= 1024 ? static_cast<long long>(trials) : (1LL << 16);
    long double thresh = 1.0L - static_cast<long double>(mpq_get_d(mc.near_one_gap.get_mpq_t()));
    auto recs = scan_large_values(p, grid, thresh - eps_num(16), mc.major_q_bound, budget);
    Rat dist_bound = mc.major_dist_coeff /
                     Rat(pow_int(p.modulus(), static_cast<unsigned long>(p.k)));
    for (const auto& r : recs)
        if (r.qdist > dist_bound || r.q > mc.major_q_bound) {
            out << "large value without close rational at " << rat_str(r.theta.to_rat()) << "\n";
            return false;
        }
    out << "grid " << grid << ": " << recs.size() << " large values, all on major arcs; ";
    return true;
}

bool check_decoupling(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    EllipsephicParams p(Base(3), 2, 4, 1, 2);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 200, 5); ++t) {
        UnitAngle theta = t == 0 ? UnitAngle() : random_angle(rng, 1000);
        std::vector<Int> shifts{make_int(rng.range(-80, 80))};
        auto rep = decoupling_check(p, theta, shifts, budget);
        if (!rep.product_bound_ok || !rep.box_ok) { out << "decoupling failed\n"; return false; }
    }
    // pointwise |1 + e(x)| <= 2 exp(-||x||^2) and 2 - |1+e(x)| >= 4||x||^2
    for (long j = 0; j <= 1000; ++j) {
        long double x = static_cast<long double>(j) / 1000;
        long double mag = 2 * fabsl(cosl(3.14159265358979323846264338328L * x));
        long double d = fabsl(x - roundl(x));
        if (mag > 2 * expl(-d * d) + 1e-15L) { out << "cos bound failed\n"; return false; }
        if (2 - mag + 1e-15L < 4 * d * d) { out << "sin bound failed\n"; return false; }
    }
    return true;
}

bool check_multisection(uint64_t trials, uint64_t seed, std::ostream&) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        int k = static_cast<int>(rng.range(2, 4));
        int n = k * static_cast<int>(rng.range(1, 4));
        int b = static_cast<int>(rng.range(3, 6));
        std::vector<int> bits(static_cast<size_t>(n));
        for (auto& x : bits) x = static_cast<int>(rng.below(2));
        multisection_split(bits, k, Base(b));  // throws on violation
    }
    return true;
}

bool check_bilinear(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 100, 10); ++t) {
        long long U = rng.range(3, 12), V = rng.range(3, 12);
        std::vector<std::pair<long long, long long>> omega;
        for (long long u = -U; u <= U; ++u)
            for (long long v = -V; v <= V; ++v)
                if (rng.unit() < 0.3) omega.emplace_back(u, v);
        if (omega.empty()) omega.emplace_back(1, 1);
        long long got = bilinear_value_count(omega, budget);
        std::set<long long> oracle;
        for (auto& [u1, v1] : omega)
            for (auto& [u2, v2] : omega) oracle.insert(u1 * v1 + u2 * v2);
        if (got != static_cast<long long>(oracle.size())) { out << "count mismatch\n"; return false; }
        // density form of the lower bound, trivially satisfiable but falsifiable
        double eps = static_cast<double>(omega.size()) / (4.0 * static_cast<double>(U) * static_cast<double>(V));
        if (static_cast<double>(got) < std::pow(eps, 7) * static_cast<double>(U) * static_cast<double>(V)) {
            out << "representation bound violated\n";
            return false;
        }
    }
    return true;
}

bool check_common_diffs(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 100, 10); ++t) {
        long long X = rng.range(10, 60);
        int count = static_cast<int>(rng.range(1, 3));
        std::vector<IntSet> sets;
        long long min_size = 4 * X;
        for (int i = 0; i < count; ++i) {
            std::vector<long long> s;
            for (long long v = -X; v <= X; ++v)
                if (rng.unit() < 0.4) s.push_back(v);
            if (s.empty()) s.push_back(0);
            sets.push_back(make_set(std::move(s)));
            min_size = std::min(min_size, static_cast<long long>(sets.back().size()));
        }
        auto cd = common_differences(sets, X, budget);
        // |D| >= (eta/5)^t X with eta = min|S_i|/X, as integers:
        // |D| * 5^t * X^(t-1) >= min|S_i|^t
        Int lhs = Int(static_cast<long>(cd.diffs.size())) *
                  pow_int(5, static_cast<unsigned long>(count)) *
                  pow_int(X, static_cast<unsigned long>(count - 1));
        if (lhs < pow_int(min_size, static_cast<unsigned long>(count))) {
            out << "difference bound violated\n";
            return false;
        }
        // witness: core - core inside every S_i - S_i
        for (long long a : cd.core)
            for (long long b : cd.core) {
                bool found = false;
                for (long long d : cd.diffs)
                    if (d == a - b) { found = true; break; }
                if (!found) { out << "core difference outside intersection\n"; return false; }
            }
    }
    return true;
}

bool check_product_expansion(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 500, 4); ++t) {
        long long d = rng.range(2, 3);
        int r = static_cast<int>(rng.range(1, 2));
        int m = static_cast<int>(rng.range(2, 3));
        uint32_t words = uint32_t{1} << m;
        std::vector<std::vector<uint32_t>> tuples;
        for (uint32_t mask = 0; mask < (uint32_t{1} << (m * r)); ++mask) {
            if (rng.unit() < 0.5) {
                std::vector<uint32_t> tup;
                for (int j = 0; j < r; ++j) tup.push_back((mask >> (j * m)) & (words - 1));
                tuples.push_back(std::move(tup));
            }
        }
        if (tuples.empty()) continue;
        std::vector<long long> shifts(static_cast<size_t>(r));
        for (auto& s : shifts) s = rng.range(-4, 4);
        auto res = product_expansion(d, r, m, tuples, shifts, 0.0, budget);
        if (res.outcome != ExpansionResult::Outcome::Ok) continue;
        if (!audit_expansion(res, d, r, m, tuples, shifts)) {
            out << "audit failed\n";
            return false;
        }
    }
    return true;
}

bool check_ww_tilde(uint64_t trials, uint64_t seed, std::ostream& out) {
    // Upper bound unconditionally; lower bound on its domain of validity
    // (w_n >= 1, or a terminating expansion): a lone digit beyond position n
    // is invisible to w_n but not to wtilde_n.
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        int b = std::vector<int>{3, 5, 10}[rng.below(3)];
        int n = static_cast<int>(rng.range(1, 40));
        UnitAngle a = random_angle(rng);
        Rat wt = dist_sq_sum(a, Base(b), n);
        Rat w = Rat(frac_nonzero_count(a, Base(b), n));
        if (w > 16 * b * b * wt || (w >= 1 && wt > w)) {
            out << "sandwich violated at " << rat_str(a.to_rat()) << " b=" << b << " n=" << n << "\n";
            return false;
        }
        int j = static_cast<int>(rng.range(1, n));
        UnitAngle term(make_int(rng.range(0, 1'000'000)),
                       pow_int(b, static_cast<unsigned long>(j)));
        Rat wt2 = dist_sq_sum(term, Base(b), n);
        Rat w2 = Rat(frac_nonzero_count(term, Base(b), n));
        if (wt2 > w2 || w2 > 16 * b * b * wt2) {
            out << "sandwich violated on terminating angle\n";
            return false;
        }
    }
    return true;
}

bool check_digit_gap(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        int b = static_cast<int>(rng.range(3, 12));
        int n = static_cast<int>(rng.range(1, 30));
        UnitAngle a = random_angle(rng);
        auto e = frac_digits(a, Base(b), n);
        for (int j = 1; j <= n; ++j) {
            if (e.digits[static_cast<size_t>(j - 1)] == 0) continue;
            Rat d = a.times_pow(b, static_cast<unsigned long>(j - 1)).dist_to_int();
            if (d * 4 * b < 1) {
                out << "gap violated\n";
                return false;
            }
        }
    }
    return true;
}

bool check_hamming_energy(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 50, 20); ++t) {
        int b = std::vector<int>{3, 5}[rng.below(2)];
        int r = static_cast<int>(rng.range(0, 3));
        int m = static_cast<int>(rng.range(1, 6));
        IntSet ball = hamming_ball(Base(b), r, m, std::nullopt, budget);
        std::vector<long long> sub;
        for (long long v : ball)
            if (rng.unit() < 0.5) sub.push_back(v);
        if (sub.empty()) sub.push_back(0);
        auto rep = ball_energy_check(make_set(std::move(sub)), Base(b), r, budget);
        if (!rep.ok) { out << "energy bound violated\n"; return false; }
    }
    return true;
}

bool check_quad_energy(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 50, 20); ++t) {
        int b = 3;
        std::vector<IntSet> sets;
        std::vector<int> rs;
        for (int i = 0; i < 4; ++i) {
            int r = static_cast<int>(rng.range(0, 2));
            IntSet ball = hamming_ball(Base(b), r, 4, std::nullopt, budget);
            std::vector<long long> sub;
            for (long long v : ball)
                if (rng.unit() < 0.6) sub.push_back(v);
            if (sub.empty()) sub.push_back(0);
            sets.push_back(make_set(std::move(sub)));
            rs.push_back(r);
        }
        for (long long e = -(b - 1); e <= b - 1; ++e) {
            Int cnt = quad_energy_carry(sets[0], sets[1], sets[2], sets[3], e, Base(b), budget);
            Int lhs = cnt * cnt;
            Int rhs = pow_int(2 * b, static_cast<unsigned long>(2 * (rs[0] + rs[1] + rs[2] + rs[3])));
            for (const auto& s : sets) rhs *= static_cast<unsigned long>(s.size());
            if (lhs > rhs) { out << "quadripartite bound violated\n"; return false; }
        }
    }
    return true;
}

bool check_psi_truncation(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        int b = static_cast<int>(rng.range(3, 10));
        int n = static_cast<int>(rng.range(1, 20));
        UnitAngle a = random_angle(rng);
        Int psi = encode_frac_prefix(a, Base(b), n);
        if (nonzero_digit_count(psi, Base(b)) != frac_nonzero_count(a, Base(b), n)) {
            out << "digit count identity violated\n";
            return false;
        }
        Int bn = pow_int(b, static_cast<unsigned long>(n));
        if (4 * abs(psi) > 3 * bn) { out << "psi range violated\n"; return false; }
        Rat diff = dist_to_int(a.to_rat() - make_rat(psi, bn));
        if (diff * 4 * bn > 3) { out << "truncation bound violated\n"; return false; }
    }
    return true;
}

bool check_almost_hom(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    long long done = 0;
    for (int b : {3, 5, 10}) {
        std::vector<std::array<long long, 4>> quads;
        for (uint64_t t = 0; t < trials / 3 + 1; ++t) {
            long long m1 = rng.range(-1'000'000, 1'000'000);
            long long m2 = rng.range(-1'000'000, 1'000'000);
            long long m3 = rng.range(-1'000'000, 1'000'000);
            quads.push_back({m1, m2, m3, m1 + m2 - m3});
        }
        UnitAngle theta = random_angle(rng);
        auto rep = almost_hom_check(theta, Base(b), 4 + b % 3, quads);
        done += rep.checked;
        if (rep.failures != 0) { out << "defect outside carry set\n"; return false; }
    }
    out << done << " quadruples; ";
    return true;
}

bool check_dioph_pipeline(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 200, 5); ++t) {
        // planted: theta = a/q exactly, census = multiples of q
        long long q = rng.range(2, 20);
        long long a = rng.range(1, q - 1);
        Int g;
        mpz_gcd(g.get_mpz_t(), make_int(a).get_mpz_t(), make_int(q).get_mpz_t());
        if (g != 1) continue;
        long long M = q * rng.range(40, 80);
        DigitalHypothesis hyp{UnitAngle(make_int(a), make_int(q)), Base(3), 12, M, 0, Rat(0)};
        long long s_count = 2 * M / q;  // positive multiples of q in [1, 2M]
        DiophOverrides ov;
        ov.delta2 = make_rat(make_int(s_count), make_int(4 * M));  // half the true density
        ov.delta1 = *ov.delta2 / 64;
        auto trace = digital_to_diophantine(hyp, ov, budget);
        if (trace.outcome != DiophTrace::Outcome::Refined) { out << "expected refinement\n"; return false; }
        if (trace.q % make_int(q) != 0 && q % to_ll(trace.q) != 0) {
            out << "q unrelated to planted modulus\n";
            return false;
        }
        if (trace.qdist != 0) { out << "nonzero distance on exact plant\n"; return false; }
    }
    // trivial and fallback shapes
    DigitalHypothesis zero{UnitAngle(), Base(3), 6, 100, 0, Rat(0)};
    if (digital_to_diophantine(zero, {}, budget).q != 1) { out << "trivial case failed\n"; return false; }
    DigitalHypothesis unit{UnitAngle(Int(1), Int(729)), Base(3), 6, 243, 1, Rat(0)};
    auto tr = digital_to_diophantine(unit, {}, budget);
    if (tr.qdist * pow_int(3, 6) > tr.q) { out << "fallback distance bound failed\n"; return false; }
    return true;
}

bool check_box_norm(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    BoxFunction one{{2, 3}, std::vector<std::complex<long double>>(6, {1, 0})};
    if (fabsl(box_norm(one, budget).value - 1) > 1e-12L) { out << "constant norm\n"; return false; }
    BoxFunction pm{{2}, {{1, 0}, {-1, 0}}};
    if (box_norm(pm, budget).value > 1e-12L) { out << "seminorm zero case\n"; return false; }
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 100, 10); ++t) {
        int s1 = static_cast<int>(rng.range(2, 4)), s2 = static_cast<int>(rng.range(2, 4));
        BoxFunction f{{s1, s2}, {}};
        long double re = 0, im = 0;
        for (int i = 0; i < s1 * s2; ++i) {
            std::complex<long double> v(rng.unit() * 2 - 1, rng.unit() * 2 - 1);
            f.values.push_back(v);
            re += v.real();
            im += v.imag();
        }
        long double mean = sqrtl(re * re + im * im) / (s1 * s2);
        auto bn = box_norm(f, budget);
        if (mean > bn.value + bn.err_radius + 1e-12L) { out << "|Ef| <= ||f|| violated\n"; return false; }
    }
    return true;
}

bool check_box_cs(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    constexpr long double TAU = 6.283185307179586476925286766559L;
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 10, 50); ++t) {
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
            // unimodular, constant along its own axis: fill by index with
            // axis-ax coordinate forced to zero
            std::vector<int> coords(axes, 0);
            for (size_t idx = 0; idx < table; ++idx) {
                std::vector<int> alt = coords;
                alt[ax] = 0;
                size_t base_idx = psi.index(alt);
                if (idx == base_idx) {
                    long double phase = TAU * static_cast<long double>(rng.unit());
                    psi.values[idx] = {cosl(phase), sinl(phase)};
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
        auto rep = box_cs_check(f, psis, budget);
        if (!rep.ok) { out << "box Cauchy-Schwarz violated\n"; return false; }
    }
    return true;
}

bool check_cube_density(uint64_t trials, uint64_t seed, std::ostream& out) {
    // base case n = 1, r = 2: all pairs of nonempty subsets of {0,1}
    for (uint32_t m1 = 1; m1 < 4; ++m1)
        for (uint32_t m2 = 1; m2 < 4; ++m2) {
            CubeSet a{1, {}}, b{1, {}};
            for (uint32_t i = 0; i < 2; ++i) {
                if ((m1 >> i) & 1) a.members.push_back(i);
                if ((m2 >> i) & 1) b.members.push_back(i);
            }
            if (!cube_density_check({a, b}, budget).ok) { out << "base case failed\n"; return false; }
        }
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < std::max<uint64_t>(trials / 10, 100); ++t) {
        int n = static_cast<int>(rng.range(1, 8));
        int r = static_cast<int>(rng.range(2, 4));
        std::vector<CubeSet> sets;
        for (int i = 0; i < r; ++i)
            sets.push_back(random_cube_subset(n, 0.1 + 0.9 * rng.unit(), rng.next()));
        if (!cube_density_check(sets, budget).ok) {
            out << "random instance failed (n=" << n << ", r=" << r << ")\n";
            return false;
        }
    }
    return true;
}

bool check_real_var(uint64_t, uint64_t, std::ostream& out) {
    if (std::fabs(simplex_objective({0.37}) - 1.0) > 1e-12) { out << "r=1 identity\n"; return false; }
    if (std::fabs(simplex_objective({0.5, 0.5}) - 1.0) > 1e-12) { out << "r=2 center\n"; return false; }
    for (int r = 2; r <= 4; ++r) {
        auto scan = simplex_min_scan(r, r <= 3 ? 0.02 : 0.05, 60);
        if (scan.minimum < 1 - 1e-9) {
            out << "minimum below 1 at r=" << r << ": " << scan.minimum << "\n";
            return false;
        }
    }
    return true;
}

bool check_vinogradov(uint64_t trials, uint64_t seed, std::ostream& out) {
    SplitMix64 rng(seed);
    for (uint64_t t = 0; t < trials; ++t) {
        long long q = rng.range(2, 40);
        long long a = rng.range(1, q - 1);
        Int g;
        mpz_gcd(g.get_mpz_t(), make_int(a).get_mpz_t(), make_int(q).get_mpz_t());
        if (g != 1) continue;
        long long L = q * rng.range(20, 200);
        Int pert_den = make_int(L) * make_int(L) * make_int(q) * 64;
        UnitAngle alpha(make_int(a) * pert_den + make_int(q), make_int(q) * pert_den);  // a/q + 1/(q*pert)
        std::vector<long long> census;
        for (long long n = q; n <= L; n += q) census.push_back(n);
        Rat delta1(0);
        for (long long n : census) delta1 = std::max(delta1, alpha.times(make_int(n)).dist_to_int());
        if (delta1 == 0) delta1 = make_rat(1, pert_den);
        Rat delta2 = make_rat(Int(static_cast<unsigned long>(census.size())), make_int(2 * L));
        if (delta2 < 32 * delta1 || Rat(make_int(L)) * delta2 < 16) continue;
        auto res = vinogradov_refine(alpha, L, delta1, delta2, census);
        if (Rat(res.q) * delta2 > 16 || res.qdist * delta2 * make_int(L) > delta1 || !res.divisibility_ok) {
            out << "certificate failed\n";
            return false;
        }
    }
    // hypothesis violations are named
    try {
        vinogradov_refine(UnitAngle(Int(1), Int(7)), 100, make_rat(1, 10), make_rat(1, 100), {7});
        out << "expected delta2 >= 32 delta1 rejection\n";
        return false;
    } catch (const hypothesis_error&) {}
    return true;
}

}  // namespace

const std::vector<LemmaCheck>& lemma_checks() {
    static const std::vector<LemmaCheck> checks = {
        {"centered-roundtrip",
         "centered digits reconstruct their integer exactly; canonical strings are unique",
         check_roundtrip},
        {"word-map", "word values match power sums; two-digit numbers equal u + (d2-d1) L(x)",
         check_word_map},
        {"ns-progression",
         "|A| >= 1 + X/r forces a progression of difference < r, length >= X/2r^2, in 4rA",
         check_ns_progression},
        {"interval-sum",
         "the union of jI for j <= ceil(2K/eta^2) covers [4X/eta, KX/eta], eta = |I|/X",
         check_interval_sum},
        {"moment-parseval",
         "sum_x r_t(x)^2 / 2^(2tn) equals the integral of |mu_hat|^(2t) (quadrature cross-check)",
         check_moment_parseval},
        {"support-chain", "1 <= |Supp| * sum of squared masses for every t-fold convolution",
         check_support_chain},
        {"very-large-values",
         "any grid angle with |mu_hat| >= 1 - (1/4)b^(-3k^2) admits q <= 2k! b^(k(k-1)/2+1) with "
         "||theta q|| below the stated N^-k multiple",
         check_very_large_values},
        {"decoupling",
         "|E e(alpha L(y))| <= exp(-b^(-2k) wtilde_n(alpha)) along shift products, and "
         "|mu_hat|^(2^k) is bounded by the decoupled box average",
         check_decoupling},
        {"multisection", "L_b(x) = sum_j b^j L_{b^k}(x^(j)) for the k stride classes",
         check_multisection},
        {"bilinear-count", "distinct u1v1 + u2v2 counts match brute force and the density bound",
         check_bilinear},
        {"common-diffs",
         "|intersection of S_i - S_i| >= (eta/5)^t X with a greedy shift witness",
         check_common_diffs},
        {"product-expansion",
         "every expansion output is a recorded +-combination of at most (4d)^r products",
         check_product_expansion},
        {"ww-tilde", "wtilde_n(alpha) <= w_n(alpha) <= 16 b^2 wtilde_n(alpha), exact rationals",
         check_ww_tilde},
        {"digit-gap", "a nonzero j-th fractional digit forces ||alpha b^(j-1)|| >= 1/(4b)",
         check_digit_gap},
        {"hamming-energy", "E(A) <= (2b)^(4r) |A|^2 for subsets of the r-ball", check_hamming_energy},
        {"quad-energy",
         "carry-e quadruple counts are at most (2b)^(r1+..+r4) (|A1|..|A4|)^(1/2)",
         check_quad_energy},
        {"psi-truncation",
         "d_b(psi(alpha)) = w_n(alpha), |psi| <= (3/4) b^n, ||alpha - b^-n psi|| <= (3/4) b^-n",
         check_psi_truncation},
        {"almost-hom",
         "psi defects of additive quadruples land in the carry set of 7(6b+1) values",
         check_almost_hom},
        {"dioph-pipeline",
         "the census -> fiber -> refine pipeline returns q with the certified distance on "
         "planted instances",
         check_dioph_pipeline},
        {"box-norm", "box norm basics: constants, the |I| = 1 seminorm, |Ef| <= ||f||",
         check_box_norm},
        {"box-cs", "|E prod Psi_i f| <= ||f||_box for 1-bounded axis-independent factors",
         check_box_cs},
        {"cube-density",
         "|A_1 + .. + A_r| >= (alpha_1..alpha_r)^gamma (r+1)^n in {0..r}^n, gamma = log_2(r+1)/r",
         check_cube_density},
        {"real-var", "the ordered-simplex gamma-sum stays >= 1; equality at the r=2 center",
         check_real_var},
        {"vinogradov",
         "a delta2-dense set of near-integer multiples yields q <= 16/delta2 with "
         "||alpha q|| <= delta1/(delta2 L)",
         check_vinogradov},
    };
    return checks;
}

}  // namespace elab
