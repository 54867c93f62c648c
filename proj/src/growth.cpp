#include "elab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "elab/prng.hpp"

namespace elab {

CubeSet random_cube_subset(int n, double density, uint64_t seed) {
    SplitMix64 rng(seed);
    CubeSet s;
    s.n = n;
    for (uint32_t x = 0; x < (uint32_t{1} << n); ++x)
        if (rng.unit() < density) s.members.push_back(x);
    if (s.members.empty()) s.members.push_back(static_cast<uint32_t>(rng.below(uint64_t{1} << n)));
    return s;
}

CubeDensityReport cube_density_check(const std::vector<CubeSet>& sets, const Budgets& budget) {
    const int r = static_cast<int>(sets.size());
    if (r < 1) throw hypothesis_error("cube_density_check: at least one set");
    const int n = sets[0].n;
    for (const auto& s : sets) {
        if (s.n != n) throw hypothesis_error("cube_density_check: dimension mismatch");
        if (s.members.empty()) throw hypothesis_error("cube_density_check: empty set");
    }
    // Elements of {0,..,r}^n packed as 3-bit lanes (digits stay <= r <= 7, so
    // adding a 0/1 spread never carries across lanes). The running sumset is
    // a dense bitmap over the key space.
    if (n > 8) throw budget_error("cube_density_check: n <= 8 supported");
    if (r > 7) throw budget_error("cube_density_check: r <= 7 supported");
    auto spread = [](uint32_t mask) {
        uint32_t v = 0;
        for (int i = 0; i < 8; ++i)
            if ((mask >> i) & 1) v |= uint32_t{1} << (3 * i);
        return v;
    };
    const size_t key_space = size_t{1} << (3 * n);
    budget.need_bits(2 * key_space, "cube_density_check");
    const size_t words = (key_space + 63) / 64;
    std::vector<uint64_t> cur(words, 0), nxt(words, 0);
    cur[0] = 1;  // the empty sum
    for (const auto& s : sets) {
        std::vector<uint32_t> spreads;
        spreads.reserve(s.members.size());
        for (uint32_t m : s.members) spreads.push_back(spread(m));
        std::fill(nxt.begin(), nxt.end(), 0);
        for (size_t w = 0; w < words; ++w) {
            uint64_t bits = cur[w];
            while (bits) {
                uint32_t key = static_cast<uint32_t>(64 * w + static_cast<uint32_t>(__builtin_ctzll(bits)));
                bits &= bits - 1;
                for (uint32_t sp : spreads) {
                    uint32_t k = key + sp;
                    nxt[k >> 6] |= uint64_t{1} << (k & 63);
                }
            }
        }
        std::swap(cur, nxt);
    }

    CubeDensityReport rep;
    long long count = 0;
    for (uint64_t w : cur) count += __builtin_popcountll(w);
    rep.sum_size = count;
    const double gamma = std::log2(static_cast<double>(r + 1)) / r;
    rep.lhs_log = std::log(static_cast<double>(rep.sum_size)) - n * std::log(r + 1.0);
    rep.rhs_log = 0;
    for (const auto& s : sets)
        rep.rhs_log += std::log(static_cast<double>(s.members.size())) - n * std::log(2.0);
    rep.rhs_log *= gamma;
    rep.ok = rep.lhs_log >= rep.rhs_log - 1e-9;
    return rep;
}

double simplex_objective(const std::vector<double>& x) {
    const int r = static_cast<int>(x.size());
    const double gamma = std::log2(static_cast<double>(r + 1)) / r;
    double sum = 0;
    for (int j = 0; j <= r; ++j) {
        double prod = 1;
        for (int i = 0; i < j; ++i) prod *= x[static_cast<size_t>(i)];
        for (int i = j; i < r; ++i) prod *= 1 - x[static_cast<size_t>(i)];
        sum += prod > 0 ? std::pow(prod, gamma) : 0;
    }
    return sum;
}

SimplexScan simplex_min_scan(int r, double step, int refine_iters) {
    if (r < 1 || r > 5) throw hypothesis_error("simplex_min_scan: 1 <= r <= 5");
    if (step <= 0 || step > 0.5) throw hypothesis_error("simplex_min_scan: bad step");

    SimplexScan best{2.0, std::vector<double>(static_cast<size_t>(r), 1.0)};
    const int ticks = static_cast<int>(std::lround(1.0 / step));
    std::vector<int> idx(static_cast<size_t>(r), 0);
    std::vector<double> x(static_cast<size_t>(r));
    // Grid over the ordered simplex 1 >= x_1 >= ... >= x_r >= 0.
    auto rec = [&](auto&& self, int i, int hi) -> void {
        if (i == r) {
            for (int j = 0; j < r; ++j) x[static_cast<size_t>(j)] = idx[static_cast<size_t>(j)] * step;
            double v = simplex_objective(x);
            if (v < best.minimum) { best.minimum = v; best.argmin = x; }
            return;
        }
        for (int t = hi; t >= 0; --t) {
            idx[static_cast<size_t>(i)] = t;
            self(self, i + 1, t);
        }
    };
    rec(rec, 0, ticks);

    // Coordinate descent from the grid argmin with shrinking moves.
    std::vector<double> cur = best.argmin;
    double fcur = best.minimum;
    double h = step;
    for (int it = 0; it < refine_iters; ++it) {
        bool improved = false;
        for (int i = 0; i < r; ++i) {
            for (double dir : {-1.0, 1.0}) {
                std::vector<double> cand = cur;
                double& xi = cand[static_cast<size_t>(i)];
                xi += dir * h;
                double lo = (i + 1 < r) ? cand[static_cast<size_t>(i + 1)] : 0.0;
                double hi2 = (i > 0) ? cand[static_cast<size_t>(i - 1)] : 1.0;
                if (xi < lo) xi = lo;
                if (xi > hi2) xi = hi2;
                double v = simplex_objective(cand);
                if (v < fcur) { fcur = v; cur = cand; improved = true; }
            }
        }
        if (!improved) h /= 2;
        if (h < 1e-14) break;
    }
    if (fcur < best.minimum) { best.minimum = fcur; best.argmin = cur; }
    return best;
}

namespace {

long long radix_word_value(uint32_t word, int m, long long d) {
    long long acc = 0, pw = 1;
    for (int i = 0; i < m; ++i) {
        if ((word >> i) & 1) acc += pw;
        pw *= d;
    }
    return acc;
}

// Deterministic (d-1)-fold sumset with one recorded representation per
// value: iterating base values in ascending order and keeping the first
// representation found yields the lexicographically least one.
struct SumRep {
    long long value;
    std::vector<uint32_t> words;
};

std::vector<SumRep> folded_sums(const std::vector<std::pair<long long, uint32_t>>& base,
                                int folds, const Budgets& budget) {
    std::map<long long, std::vector<uint32_t>> cur;
    cur[0] = {};
    for (int f = 0; f < folds; ++f) {
        std::map<long long, std::vector<uint32_t>> next;
        budget.need_enum(cur.size() * base.size(), "folded_sums");
        for (const auto& [v, words] : cur)
            for (const auto& [bv, bw] : base) {
                long long nv = v + bv;
                auto it = next.find(nv);
                if (it == next.end()) {
                    auto w = words;
                    w.push_back(bw);
                    next.emplace(nv, std::move(w));
                }
            }
        cur = std::move(next);
    }
    std::vector<SumRep> out;
    out.reserve(cur.size());
    for (auto& [v, w] : cur) out.push_back({v, std::move(w)});
    return out;
}

}  // namespace

ExpansionResult product_expansion(long long d, int r, int m,
                                  const std::vector<std::vector<uint32_t>>& tuples,
                                  const std::vector<long long>& shifts, double fiber_cutoff,
                                  const Budgets& budget) {
    if (d < 2) throw hypothesis_error("product_expansion: d >= 2 required");
    if (r < 1) throw hypothesis_error("product_expansion: r >= 1 required");
    if (m < 1 || m * std::log2(static_cast<double>(d)) > 20)
        throw budget_error("product_expansion: d^m exceeds budget");
    if (static_cast<int>(shifts.size()) != r)
        throw hypothesis_error("product_expansion: r shifts required");
    const long long N = static_cast<long long>(std::llround(std::pow(static_cast<double>(d), m)));
    for (long long t : shifts)
        if (std::llabs(t) > N) throw hypothesis_error("product_expansion: |t_j| <= d^m required");
    if (tuples.empty()) throw hypothesis_error("product_expansion: empty input set");
    for (const auto& t : tuples)
        if (static_cast<int>(t.size()) != r)
            throw hypothesis_error("product_expansion: tuple arity mismatch");
    if (r * (std::log2(16.0 * static_cast<double>(d) * static_cast<double>(N))) > 62)
        throw budget_error("product_expansion: values exceed 64-bit range");

    ExpansionResult res;
    res.depth_bound = 1;
    for (int i = 0; i < r; ++i) res.depth_bound *= 4 * d;

    if (r == 1) {
        // Base case: (d-1)-fold sums of phi_1 over the distinct words.
        std::vector<std::pair<long long, uint32_t>> base;
        {
            std::vector<uint32_t> ws;
            ws.reserve(tuples.size());
            for (const auto& t : tuples) ws.push_back(t[0]);
            std::sort(ws.begin(), ws.end());
            ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
            for (uint32_t w : ws) base.emplace_back(radix_word_value(w, m, d) + shifts[0], w);
            std::sort(base.begin(), base.end());
        }
        for (const auto& rep : folded_sums(base, static_cast<int>(d) - 1, budget)) {
            TracedValue tv;
            tv.value = rep.value;
            for (uint32_t w : rep.words) tv.combo.push_back({+1, {w}});
            res.values.push_back(std::move(tv));
        }
        return res;
    }

    // Fibers over the last coordinate.
    std::map<uint32_t, std::vector<std::vector<uint32_t>>> fibers;
    for (const auto& t : tuples) {
        std::vector<uint32_t> prefix(t.begin(), t.end() - 1);
        fibers[t.back()].push_back(std::move(prefix));
    }
    const double alpha =
        static_cast<double>(tuples.size()) / std::pow(2.0, static_cast<double>(m) * r);
    const double cutoff = fiber_cutoff >= 0 ? fiber_cutoff : alpha / 2;
    const double need = cutoff * std::pow(2.0, static_cast<double>(m) * (r - 1));

    std::vector<std::pair<long long, uint32_t>> phi_y;  // phi_r over dense fibers
    std::map<uint32_t, std::vector<TracedValue>> fiber_values;
    std::map<uint32_t, std::unordered_map<long long, std::pair<long long, long long>>>
        fiber_diff_rep;  // s -> (b, b') with b - b' = s, per fiber
    for (auto& [y, fib] : fibers) {
        if (static_cast<double>(fib.size()) < need) continue;
        ExpansionResult sub =
            product_expansion(d, r - 1, m, fib,
                              std::vector<long long>(shifts.begin(), shifts.end() - 1),
                              fiber_cutoff, budget);
        if (sub.outcome != ExpansionResult::Outcome::Ok) {
            res.outcome = sub.outcome;
            res.stalled_level = sub.stalled_level;
            return res;
        }
        phi_y.emplace_back(radix_word_value(y, m, d) + shifts[static_cast<size_t>(r - 1)], y);
        auto& diffs = fiber_diff_rep[y];
        budget.need_enum(sub.values.size() * sub.values.size(), "product_expansion diffs");
        for (const auto& v1 : sub.values)
            for (const auto& v2 : sub.values)
                diffs.emplace(v1.value - v2.value, std::make_pair(v1.value, v2.value));
        fiber_values.emplace(y, std::move(sub.values));
    }
    if (phi_y.empty()) {
        res.outcome = ExpansionResult::Outcome::EmptyFiber;
        res.stalled_level = r;
        return res;
    }
    std::sort(phi_y.begin(), phi_y.end());

    // z in the (d-1)-fold sumset of phi_r over dense fibers, with its chosen
    // representation; S(z) = intersection of the fiber difference sets.
    auto zreps = folded_sums(phi_y, static_cast<int>(d) - 1, budget);

    struct OmegaEntry {
        long long s, z;
        std::vector<uint32_t> zwords;
    };
    std::vector<OmegaEntry> omega;
    for (const auto& zr : zreps) {
        // Intersect difference sets across the representation's fibers.
        std::vector<uint32_t> ws = zr.words;
        std::unordered_set<long long> inter;
        bool first = true;
        for (uint32_t y : ws) {
            auto& diffs = fiber_diff_rep[y];
            if (first) {
                for (auto& [s, bb] : diffs) inter.insert(s);
                first = false;
            } else {
                std::unordered_set<long long> keep;
                for (long long s : inter)
                    if (diffs.count(s)) keep.insert(s);
                inter = std::move(keep);
            }
        }
        for (long long s : inter) omega.push_back({s, zr.value, ws});
        budget.need_enum(omega.size(), "product_expansion omega");
    }
    std::sort(omega.begin(), omega.end(), [](const OmegaEntry& a, const OmegaEntry& b) {
        return std::tie(a.s, a.z) < std::tie(b.s, b.z);
    });

    // Output: all u1 v1 + u2 v2 with (u_i, v_i) = (s_i, z_i) in omega.
    budget.need_enum(omega.size() * omega.size(), "product_expansion pairs");
    auto combo_for = [&](const OmegaEntry& e) {
        // s*z = sum_i (b_i - b'_i) * phi_r(y_i): expand each side through the
        // recorded fiber traces, appending the fiber word to each tuple.
        std::vector<SignedProduct> combo;
        for (uint32_t y : e.zwords) {
            auto [b_pos, b_neg] = fiber_diff_rep[y].at(e.s);
            for (int pass = 0; pass < 2; ++pass) {
                long long want = pass == 0 ? b_pos : b_neg;
                const auto& vals = fiber_values[y];
                auto it = std::lower_bound(
                    vals.begin(), vals.end(), want,
                    [](const TracedValue& tv, long long v) { return tv.value < v; });
                for (const auto& sp : it->combo) {
                    SignedProduct q = sp;
                    q.sign = pass == 0 ? sp.sign : -sp.sign;
                    q.words.push_back(y);
                    combo.push_back(std::move(q));
                }
            }
        }
        return combo;
    };

    std::map<long long, std::vector<SignedProduct>> out;
    for (const auto& e1 : omega)
        for (const auto& e2 : omega) {
            long long v = e1.s * e1.z + e2.s * e2.z;
            if (out.count(v)) continue;
            auto c1 = combo_for(e1);
            auto c2 = combo_for(e2);
            for (auto& sp : c2) c1.push_back(std::move(sp));
            out.emplace(v, std::move(c1));
        }
    for (auto& [v, combo] : out) res.values.push_back({v, std::move(combo)});
    return res;
}

bool audit_expansion(const ExpansionResult& result, long long d, int r, int m,
                     const std::vector<std::vector<uint32_t>>& tuples,
                     const std::vector<long long>& shifts) {
    if (result.outcome != ExpansionResult::Outcome::Ok) return false;
    std::set<std::vector<uint32_t>> allowed(tuples.begin(), tuples.end());
    for (const auto& tv : result.values) {
        if (static_cast<long long>(tv.combo.size()) > result.depth_bound) return false;
        Int acc = 0;
        for (const auto& sp : tv.combo) {
            if (static_cast<int>(sp.words.size()) != r) return false;
            if (!allowed.count(sp.words)) return false;
            Int prod = sp.sign;
            for (int j = 0; j < r; ++j)
                prod *= make_int(radix_word_value(sp.words[static_cast<size_t>(j)], m, d) +
                                 shifts[static_cast<size_t>(j)]);
            acc += prod;
        }
        if (acc != make_int(tv.value)) return false;
    }
    return true;
}

long long bilinear_value_count(const std::vector<std::pair<long long, long long>>& omega,
                               const Budgets& budget) {
    budget.need_enum(static_cast<uint64_t>(omega.size()) * omega.size(),
                     "bilinear_value_count");
    std::unordered_set<long long> seen;
    for (const auto& [u1, v1] : omega)
        for (const auto& [u2, v2] : omega) seen.insert(u1 * v1 + u2 * v2);
    return static_cast<long long>(seen.size());
}

CommonDifferences common_differences(const std::vector<IntSet>& sets, long long X,
                                     const Budgets& budget) {
    if (sets.empty()) throw hypothesis_error("common_differences: at least one set");
    for (const auto& s : sets) {
        if (s.empty()) throw hypothesis_error("common_differences: empty set");
        for (long long v : s)
            if (v < -X || v > X)
                throw hypothesis_error("common_differences: sets must lie in [-X, X]");
    }
    Window dw{-2 * X, 2 * X + 1};

    CommonDifferences out;
    // Exact intersection of the difference sets.
    RangeBitset inter(dw, budget);
    bool first = true;
    for (const auto& s : sets) {
        RangeBitset diffs(dw, budget);
        for (long long a : s)
            for (long long b : s) diffs.set_if_inside(a - b);
        if (first) {
            inter = diffs;
            first = false;
        } else {
            RangeBitset keep(dw, budget);
            long long v = dw.lo;
            while (inter.next_set(v, v)) {
                if (diffs.test(v)) keep.set_if_inside(v);
                ++v;
            }
            inter = keep;
        }
    }
    out.diffs = inter.values();

    // Greedy shift witness: h_i maximising the running intersection realises
    // the averaged bound.
    IntSet core = sets[0];
    for (size_t i = 1; i < sets.size(); ++i) {
        RangeBitset cur(Window{-X, X + 1}, budget);
        for (long long v : core) cur.set_if_inside(v);
        long long best_h = 0, best_count = -1;
        for (long long h = -2 * X; h <= 2 * X; ++h) {
            long long cnt = 0;
            for (long long v : sets[i])
                if (cur.test(v - h)) ++cnt;
            if (cnt > best_count) { best_count = cnt; best_h = h; }
        }
        out.shifts.push_back(best_h);
        IntSet next;
        for (long long v : sets[i])
            if (cur.test(v - best_h)) next.push_back(v - best_h);
        core = make_set(std::move(next));
    }
    out.core = core;
    return out;
}

}  // namespace elab
