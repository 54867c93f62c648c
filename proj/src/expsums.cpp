#include "elab/expsums.hpp"

#include <algorithm>
#include <cmath>

#include "elab/parallel.hpp"

namespace elab {

namespace {

constexpr long double TWO_PI = 6.283185307179586476925286766559L;

std::complex<long double> unit_phase(long double frac01) {
    return {cosl(TWO_PI * frac01), sinl(TWO_PI * frac01)};
}

// Residues (theta * m_x) mod 1 share the denominator of theta; walking words
// in Gray-code order keeps the per-term cost at a few modular operations.
template <class Visit>
void for_each_power_residue(const EllipsephicParams& p, const UnitAngle& theta, Visit visit) {
    const Int& q = theta.den();
    const Int& a = theta.num();
    const uint64_t count = uint64_t{1} << p.n;
    std::vector<Int> powers(p.n);
    Int pw = 1;
    for (int i = 0; i < p.n; ++i) { powers[i] = fmod_int(pw, q); pw *= p.base.value; }
    Int u = fmod_int(p.all_d1_value(), q);
    Int step = fmod_int(Int(p.d2 - p.d1), q);

    Int l = 0;  // L_b(x) mod q
    uint64_t gray = 0;
    Int v, r;
    for (uint64_t x = 0; x < count; ++x) {
        if (x) {
            uint64_t g = x ^ (x >> 1);
            uint64_t flip = g ^ gray;
            int bit = __builtin_ctzll(flip);
            if (g & flip) l += powers[bit]; else l -= powers[bit];
            l = fmod_int(l, q);
            gray = g;
        }
        v = fmod_int(u + step * l, q);
        mpz_powm_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p.k),
                    q.get_mpz_t());
        r = fmod_int(a * v, q);
        visit(r);
    }
}

long double frac_to_ld(const Int& num, const Int& den) {
    Int scaled = (num << 63) / den;
    return static_cast<long double>(scaled.get_ui()) * 0x1p-63L;
}

}  // namespace

MethodConstants MethodConstants::from(const EllipsephicParams& p) {
    const unsigned long k = static_cast<unsigned long>(p.k);
    const Int b = p.base.value;
    MethodConstants c;
    c.weyl_threshold_B = pow_int(b, 6 * k * k);
    c.expansion_C_sq = pow_int(b, 7 * k * k);
    c.moment_fold_t = 8 * pow_int(b, 9 * k * k);
    c.near_one_gap = make_rat(1, 4 * pow_int(b, 3 * k * k));
    Int kfac = factorial(k);
    c.major_q_bound = 2 * kfac * pow_int(b, k * (k - 1) / 2 + 1);
    c.major_dist_coeff = make_rat(pow_int(b, k * (k + 1) / 2 - 1), 2 * kfac);
    Int dd = abs(Int(p.d2 - p.d1));
    c.linear_modulus_q0 = kfac * pow_int(dd, k) * pow_int(b, k * (k - 1) / 2);
    if (c.linear_modulus_q0 > pow_int(b, k * k))
        throw std::logic_error("MethodConstants: q0 <= b^(k^2) violated");
    return c;
}

std::complex<long double> weyl_sum(const EllipsephicParams& p, const UnitAngle& theta,
                                   const Budgets& budget) {
    if (p.n >= 63) throw budget_error("weyl_sum: n too large");
    budget.need_enum(uint64_t{1} << p.n, "weyl_sum");
    long double re = 0, im = 0;
    const Int& q = theta.den();
    for_each_power_residue(p, theta, [&](const Int& r) {
        auto z = unit_phase(frac_to_ld(r, q));
        re += z.real();
        im += z.imag();
    });
    const long double scale = 1.0L / static_cast<long double>(uint64_t{1} << p.n);
    return {re * scale, im * scale};
}

LinearProduct linear_product_magnitude(const UnitAngle& alpha, int m, const Int& stride) {
    if (m < 1) throw hypothesis_error("linear_product_magnitude: m >= 1 required");
    long double mag = 1;
    long double dist_sq = 0;
    UnitAngle cur = alpha;
    for (int i = 0; i < m; ++i) {
        long double x = cur.to_ld();
        mag *= fabsl(cosl(TWO_PI * x / 2)) ;  // |(1 + e(x))/2| = |cos(pi x)|
        long double d = static_cast<long double>(mpq_get_d(cur.dist_to_int().get_mpq_t()));
        dist_sq += d * d;
        cur = cur.times(stride);
    }
    return {mag, expl(-dist_sq)};
}

std::vector<LargeValueRecord> scan_large_values(const EllipsephicParams& p, long long grid,
                                                long double delta, const Int& q_bound,
                                                const Budgets& budget, unsigned threads) {
    if (grid < 1) throw hypothesis_error("scan_large_values: grid >= 1 required");
    if (p.n >= 40) throw budget_error("scan_large_values: n too large");
    budget.need_enum(uint64_t{1} << p.n, "scan_large_values");
    budget.need_bits(static_cast<uint64_t>(grid) * 256, "scan_large_values grid");

    // Support residues mod grid fit in 64 bits; products m*a stay below
    // 2^127 and are reduced with 128-bit arithmetic.
    std::vector<Int> support = power_support(p, budget);
    const size_t terms = support.size();
    std::vector<uint64_t> m_mod(terms);
    for (size_t i = 0; i < terms; ++i)
        m_mod[i] = mpz_fdiv_ui(support[i].get_mpz_t(), static_cast<unsigned long>(grid));

    // Phase table e(j/grid) (the grid is small enough per the bits budget).
    std::vector<long double> tc(static_cast<size_t>(grid)), ts(static_cast<size_t>(grid));
    for_blocks(static_cast<uint64_t>(grid), threads, 1 << 12,
               [&](uint64_t, uint64_t lo, uint64_t hi) {
                   for (uint64_t j = lo; j < hi; ++j) {
                       long double x = TWO_PI * static_cast<long double>(j) /
                                       static_cast<long double>(grid);
                       tc[j] = cosl(x);
                       ts[j] = sinl(x);
                   }
               });

    const long double scale = 1.0L / static_cast<long double>(terms);
    const uint64_t g = static_cast<uint64_t>(grid);
    const uint64_t nblocks = (g + (1 << 12) - 1) >> 12;
    std::vector<std::vector<LargeValueRecord>> partial(nblocks);
    for_blocks(g, threads, 1 << 12, [&](uint64_t blk, uint64_t lo, uint64_t hi) {
        auto& out = partial[blk];
        for (uint64_t a = lo; a < hi; ++a) {
            long double re = 0, im = 0;
            for (size_t i = 0; i < terms; ++i) {
                uint64_t j = static_cast<uint64_t>(
                    (static_cast<unsigned __int128>(m_mod[i]) * a) % g);
                re += tc[j];
                im += ts[j];
            }
            long double mag = sqrtl(re * re + im * im) * scale;
            if (mag >= delta) {
                LargeValueRecord rec;
                rec.theta = UnitAngle(Int(static_cast<unsigned long>(a)), make_int(grid));
                rec.magnitude = mag;
                // best approximation with denominator <= q_bound, by the
                // continued fraction of theta
                Int num = rec.theta.num(), den = rec.theta.den();
                Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;  // h/k convergent seeds
                Int x = num, y = den;
                Int best_a = 0, best_q = 1;
                while (y != 0) {
                    Int t = x / y;
                    Int h2 = t * h1 + h0, k2 = t * k1 + k0;
                    if (k2 > q_bound) break;
                    best_a = h2;
                    best_q = k2;
                    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
                    Int r = x - t * y;
                    x = y; y = r;
                }
                rec.a = best_a;
                rec.q = best_q;
                rec.qdist = rec.theta.times(best_q).dist_to_int();
                out.push_back(std::move(rec));
            }
        }
    });

    std::vector<LargeValueRecord> result;
    for (auto& blk : partial)
        for (auto& r : blk) result.push_back(std::move(r));
    return result;
}

Rat moment_exact(const EllipsephicParams& p, int t, const Budgets& budget) {
    std::vector<Int> support = power_support(p, budget);
    Window full{to_ll(support.front()) * t, to_ll(support.back()) * t + 1};
    RepCounts rc = representation_counts(t, p, full, budget);
    Int num = 0;
    for (long long c : rc.counts) num += make_int(c) * make_int(c);
    return make_rat(num, pow_int(2, static_cast<unsigned long>(2 * t * p.n)));
}

Quadrature moment_quadrature(const EllipsephicParams& p, int t, long long panels,
                             const Budgets& budget, unsigned threads) {
    if (panels < 2 || panels % 2 != 0)
        throw hypothesis_error("moment_quadrature: panels must be even and >= 2");
    if (t < 0) throw hypothesis_error("moment_quadrature: t >= 0 required");
    std::vector<Int> support = power_support(p, budget);
    budget.need_enum(static_cast<uint64_t>(panels) * support.size(), "moment_quadrature");
    const size_t terms = support.size();
    std::vector<uint64_t> m_mod(terms);
    for (size_t i = 0; i < terms; ++i)
        m_mod[i] = mpz_fdiv_ui(support[i].get_mpz_t(), static_cast<unsigned long>(panels));

    const uint64_t g = static_cast<uint64_t>(panels);
    const uint64_t block = 1 << 12;
    const uint64_t nblocks = (g + block - 1) / block;
    std::vector<long double> sum_full(nblocks, 0), sum_half(nblocks, 0);
    const long double scale = 1.0L / static_cast<long double>(terms);
    for_blocks(g, threads, block, [&](uint64_t blk, uint64_t lo, uint64_t hi) {
        long double acc = 0, acc_half = 0;
        for (uint64_t j = lo; j < hi; ++j) {
            long double re = 0, im = 0;
            for (size_t i = 0; i < terms; ++i) {
                uint64_t r = static_cast<uint64_t>(
                    (static_cast<unsigned __int128>(m_mod[i]) * j) % g);
                long double x = TWO_PI * static_cast<long double>(r) / static_cast<long double>(g);
                re += cosl(x);
                im += sinl(x);
            }
            long double msq = (re * re + im * im) * scale * scale;
            long double v = powl(msq, static_cast<long double>(t));
            acc += v;
            if ((j & 1) == 0) acc_half += v;
        }
        sum_full[blk] = acc;
        sum_half[blk] = acc_half;
    });
    long double full = 0, half = 0;
    for (uint64_t i = 0; i < nblocks; ++i) { full += sum_full[i]; half += sum_half[i]; }
    long double value = full / static_cast<long double>(g);
    long double coarse = half / static_cast<long double>(g / 2);
    return {value, fabsl(value - coarse)};
}

std::vector<std::vector<int>> multisection_split(const std::vector<int>& bits, int k,
                                                 Base base) {
    const int n = static_cast<int>(bits.size());
    if (k < 1 || n % k != 0)
        throw hypothesis_error("multisection_split: k must divide the word length");
    std::vector<std::vector<int>> parts(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) {
        parts[static_cast<size_t>(j)].reserve(static_cast<size_t>(n / k));
        for (int i = 0; i * k + j < n; ++i)
            parts[static_cast<size_t>(j)].push_back(bits[static_cast<size_t>(i * k + j)]);
    }
    // L_b(x) = sum_j b^j L_{b^k}(x^(j)), exactly.
    Int lhs = word_value(bits, Int(base.value));
    Int bk = pow_int(base.value, static_cast<unsigned long>(k));
    Int rhs = 0, bj = 1;
    for (int j = 0; j < k; ++j) {
        rhs += bj * word_value(parts[static_cast<size_t>(j)], bk);
        bj *= base.value;
    }
    if (lhs != rhs) throw std::logic_error("multisection_split: identity violated");
    return parts;
}

DecouplingReport decoupling_check(const EllipsephicParams& p, const UnitAngle& theta,
                                  const std::vector<Int>& shifts, const Budgets& budget) {
    if (p.n % p.k != 0) throw hypothesis_error("decoupling_check: k | n required");
    if (static_cast<int>(shifts.size()) != p.k - 1)
        throw hypothesis_error("decoupling_check: k-1 shifts required");
    const int m = p.n / p.k;
    const uint64_t words = uint64_t{1} << m;
    budget.need_enum(words * (p.k - 1), "decoupling_check");

    const Int bk = pow_int(p.base.value, static_cast<unsigned long>(p.k));
    std::vector<Int> lvals(words);
    for (uint64_t y = 0; y < words; ++y) {
        Int acc = 0, pw = 1;
        for (int i = 0; i < m; ++i) {
            if ((y >> i) & 1) acc += pw;
            pw *= bk;
        }
        lvals[y] = acc;
    }

    MethodConstants mc = MethodConstants::from(p);
    const long double bound_scale =
        powl(static_cast<long double>(p.base.value), -2.0L * p.k);

    DecouplingReport rep{};
    rep.product_bound_ok = true;
    rep.product_worst_margin = 2;

    // (i) product bound over all shift-tuple angles
    uint64_t tuples = 1;
    for (int i = 0; i < p.k - 1; ++i) tuples *= words;
    budget.need_enum(tuples, "decoupling_check tuples");
    const long double guard = eps_num(words);
    for (uint64_t idx = 0; idx < tuples; ++idx) {
        uint64_t rest = idx;
        Int prod = mc.linear_modulus_q0;
        for (int i = 0; i < p.k - 1; ++i) {
            uint64_t y = rest % words;
            rest /= words;
            prod *= lvals[y] + shifts[static_cast<size_t>(i)];
        }
        UnitAngle alpha = theta.times(prod);
        LinearProduct lp = linear_product_magnitude(alpha, m, bk);
        Rat wt = dist_sq_sum(alpha, p.base, p.n);
        long double rhs = expl(-bound_scale *
                               static_cast<long double>(mpq_get_d(wt.get_mpq_t())));
        long double margin = rhs - lp.magnitude;
        rep.product_worst_margin = std::min(rep.product_worst_margin, margin);
        if (lp.magnitude > rhs + guard) rep.product_bound_ok = false;
    }

    // (ii) |mu_hat|^(2^k) <= E e(theta q0 prod_i (L(x_i) - L(x'_i)))
    auto mh = weyl_sum(p, theta, budget);
    rep.lhs_pow = powl(sqrtl(mh.real() * mh.real() + mh.imag() * mh.imag()),
                       static_cast<long double>(1 << p.k));
    uint64_t pair_tuples = 1;
    for (int i = 0; i < 2 * p.k; ++i) pair_tuples *= words;
    budget.need_enum(pair_tuples, "decoupling_check box average");
    long double re = 0, im = 0;
    for (uint64_t idx = 0; idx < pair_tuples; ++idx) {
        uint64_t rest = idx;
        Int prod = mc.linear_modulus_q0;
        for (int i = 0; i < p.k; ++i) {
            uint64_t y0 = rest % words;
            rest /= words;
            uint64_t y1 = rest % words;
            rest /= words;
            prod *= lvals[y0] - lvals[y1];
        }
        auto z = unit_phase(theta.times(prod).to_ld());
        re += z.real();
        im += z.imag();
    }
    rep.rhs_box = re / static_cast<long double>(pair_tuples);
    rep.box_ok = rep.lhs_pow <= rep.rhs_box + eps_num(pair_tuples) +
                                   fabsl(im / static_cast<long double>(pair_tuples));
    return rep;
}

}  // namespace elab
