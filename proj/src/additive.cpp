#include "elab/additive.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace elab {

namespace {

// r_{A,B}(s) = #{(a,b) : a + b = s} as a sorted (sum, count) sequence.
std::map<long long, long long> pair_sums(const IntSet& a, const IntSet& b,
                                         const Budgets& budget) {
    budget.need_enum(static_cast<uint64_t>(a.size()) * b.size(), "pair_sums");
    std::map<long long, long long> r;
    for (long long x : a)
        for (long long y : b) ++r[x + y];
    return r;
}

}  // namespace

IntSet make_set(std::vector<long long> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

Int additive_energy(const IntSet& a, const Budgets& budget) {
    auto r = pair_sums(a, a, budget);
    Int e = 0;
    for (auto& [s, c] : r) e += make_int(c) * make_int(c);
    return e;
}

Int quad_energy_carry(const IntSet& a1, const IntSet& a2, const IntSet& a3, const IntSet& a4,
                      long long e, Base base, const Budgets& budget) {
    if (std::llabs(e) >= base.value)
        throw hypothesis_error("quad_energy_carry: |e| < b required");
    auto r12 = pair_sums(a1, a2, budget);
    auto r34 = pair_sums(a3, a4, budget);
    Int count = 0;
    for (auto& [s, c] : r12) {
        auto it = r34.find(s - e);
        if (it != r34.end()) count += make_int(c) * make_int(it->second);
    }
    return count;
}

Int quad_set_energy(const IntSet& s1, const IntSet& s2, const IntSet& s3, const IntSet& s4,
                    const Budgets& budget) {
    auto r12 = pair_sums(s1, s2, budget);
    auto r34 = pair_sums(s3, s4, budget);
    Int count = 0;
    for (auto& [s, c] : r12) {
        auto it = r34.find(s);
        if (it != r34.end()) count += make_int(c) * make_int(it->second);
    }
    return count;
}

IntSet hamming_ball(Base base, int r, int m, std::optional<Window> window,
                    const Budgets& budget) {
    if (r < 0 || m < 0) throw hypothesis_error("hamming_ball: r, m >= 0 required");
    if (m > 0 && m * std::log2(static_cast<double>(base.value)) > 61)
        throw budget_error("hamming_ball: values exceed 64-bit range");
    // Count first: sum_{j<=r} C(m,j)(b-1)^j choices.
    Int total = 0;
    for (int j = 0; j <= std::min(r, m); ++j) {
        Int c;
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m),
                     static_cast<unsigned long>(j));
        total += c * pow_int(base.value - 1, static_cast<unsigned long>(j));
    }
    if (!total.fits_ulong_p()) throw budget_error("hamming_ball: too many elements");
    budget.need_enum(total.get_ui(), "hamming_ball");

    std::vector<long long> pw(static_cast<size_t>(m), 1);
    for (int i = 1; i < m; ++i) pw[static_cast<size_t>(i)] = pw[static_cast<size_t>(i - 1)] * base.value;
    const long dmin = -(base.value - 1) / 2;          // least digit in (-b/2, b/2]
    const long dmax = base.value / 2;

    std::vector<long long> out;
    // Choose nonzero positions, then digit values; recursion over positions.
    std::vector<int> pos;
    auto emit = [&](long long v) {
        if (!window || window->contains(v)) out.push_back(v);
    };
    auto rec = [&](auto&& self, int next_pos, int left, long long acc) -> void {
        emit(acc);
        if (left == 0) return;
        for (int p = next_pos; p < m; ++p)
            for (long d = dmin; d <= dmax; ++d) {
                if (d == 0) continue;
                self(self, p + 1, left - 1, acc + d * pw[static_cast<size_t>(p)]);
            }
    };
    rec(rec, 0, std::min(r, m), 0);
    return make_set(std::move(out));
}

BoxNorm box_norm(const BoxFunction& f, const Budgets& budget) {
    const size_t axes = f.axis_sizes.size();
    if (axes == 0) throw hypothesis_error("box_norm: at least one axis required");
    const size_t table = f.table_size();
    if (f.values.size() != table) throw hypothesis_error("box_norm: table size mismatch");
    size_t pairs = 1;
    for (int a : f.axis_sizes) {
        if (a < 1) throw hypothesis_error("box_norm: empty axis");
        pairs *= static_cast<size_t>(a) * static_cast<size_t>(a);
    }
    budget.need_enum(pairs << axes, "box_norm");

    const size_t corners = size_t{1} << axes;
    std::vector<int> x0(axes, 0), x1(axes, 0), coords(axes, 0);
    long double sum_re = 0, c_re = 0;  // Kahan-compensated real part
    long double sum_im = 0;
    long double max_abs = 0;

    // Iterate pairs (x0, x1) as one mixed-radix counter of doubled axes.
    std::vector<int> counter(2 * axes, 0);
    for (size_t step = 0;; ++step) {
        for (size_t i = 0; i < axes; ++i) { x0[i] = counter[2 * i]; x1[i] = counter[2 * i + 1]; }
        std::complex<long double> term(1, 0);
        for (size_t w = 0; w < corners; ++w) {
            int parity = 0;
            for (size_t i = 0; i < axes; ++i) {
                bool pick1 = (w >> i) & 1;
                coords[i] = pick1 ? x1[i] : x0[i];
                parity ^= pick1 ? 1 : 0;
            }
            std::complex<long double> v = f.values[f.index(coords)];
            term *= parity ? std::conj(v) : v;
        }
        max_abs = std::max(max_abs, std::abs(term));
        long double y = term.real() - c_re;
        long double t = sum_re + y;
        c_re = (t - sum_re) - y;
        sum_re = t;
        sum_im += term.imag();

        size_t i = 0;
        for (; i < 2 * axes; ++i) {
            int axis = f.axis_sizes[i / 2];
            if (++counter[i] < axis) break;
            counter[i] = 0;
        }
        if (i == 2 * axes) break;
    }

    const long double denom = static_cast<long double>(pairs);
    long double avg = sum_re / denom;
    // Error radius: per-term rounding (2^|I| multiplies) plus the residual
    // imaginary part that exact conjugate pairing would cancel.
    long double err = max_abs * static_cast<long double>(corners + 2) * 0x1p-62L +
                      fabsl(sum_im) / denom;
    BoxNorm out;
    out.err_radius = err;
    out.avg = avg < 0 ? 0 : avg;
    out.value = powl(out.avg, 1.0L / static_cast<long double>(corners));
    return out;
}

BoxCsReport box_cs_check(const BoxFunction& f, const std::vector<BoxFunction>& psis,
                         const Budgets& budget) {
    const size_t axes = f.axis_sizes.size();
    if (psis.size() != axes)
        throw hypothesis_error("box_cs_check: one factor per axis required");
    const size_t table = f.table_size();
    std::vector<int> coords(axes, 0);

    for (size_t i = 0; i < axes; ++i) {
        if (psis[i].axis_sizes != f.axis_sizes)
            throw hypothesis_error("box_cs_check: factor axes mismatch");
        // 1-boundedness and independence of coordinate i, checked exactly.
        std::fill(coords.begin(), coords.end(), 0);
        for (size_t idx = 0; idx < table; ++idx) {
            if (std::abs(psis[i].values[idx]) > 1 + 0x1p-40L)
                throw hypothesis_error("box_cs_check: factor not 1-bounded");
            std::vector<int> alt = coords;
            alt[i] = 0;
            if (psis[i].values[idx] != psis[i].values[psis[i].index(alt)])
                throw hypothesis_error("box_cs_check: factor depends on its own axis");
            for (size_t j = axes; j-- > 0;) {
                if (++coords[j] < f.axis_sizes[j]) break;
                coords[j] = 0;
            }
        }
    }

    long double re = 0, im = 0;
    std::fill(coords.begin(), coords.end(), 0);
    for (size_t idx = 0; idx < table; ++idx) {
        std::complex<long double> t = f.values[idx];
        for (size_t i = 0; i < axes; ++i) t *= psis[i].values[idx];
        re += t.real();
        im += t.imag();
        for (size_t j = axes; j-- > 0;) {
            if (++coords[j] < f.axis_sizes[j]) break;
            coords[j] = 0;
        }
    }
    BoxCsReport rep;
    rep.lhs = sqrtl(re * re + im * im) / static_cast<long double>(table);
    BoxNorm bn = box_norm(f, budget);
    rep.rhs = bn.value;
    rep.ok = rep.lhs <= rep.rhs + bn.err_radius + eps_num(table);
    return rep;
}

QuadEnergyReport gowers_energy_check(const IntSet& s1, const IntSet& s2, const IntSet& s3,
                                     const IntSet& s4, const Budgets& budget) {
    QuadEnergyReport rep;
    rep.mixed = quad_set_energy(s1, s2, s3, s4, budget);
    for (const IntSet* s : {&s1, &s2, &s3, &s4})
        rep.singles.push_back(additive_energy(*s, budget));
    Int lhs = rep.mixed * rep.mixed;
    lhs *= lhs;
    Int rhs = rep.singles[0] * rep.singles[1] * rep.singles[2] * rep.singles[3];
    rep.ok = lhs <= rhs;
    return rep;
}

BallEnergyReport ball_energy_check(const IntSet& a, Base base, int r, const Budgets& budget) {
    for (long long v : a)
        if (nonzero_digit_count(make_int(v), base) > r)
            throw hypothesis_error("ball_energy_check: element outside the r-ball");
    BallEnergyReport rep;
    rep.energy = additive_energy(a, budget);
    rep.bound = pow_int(2 * base.value, static_cast<unsigned long>(4 * r)) * Int(a.size()) *
                Int(a.size());
    rep.ok = rep.energy <= rep.bound;
    return rep;
}

}  // namespace elab
