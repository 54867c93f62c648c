#include "elab/ellipsephic.hpp"

#include <algorithm>
#include <numeric>

namespace elab {

void RangeBitset::or_shifted(const RangeBitset& src, long long delta) {
    long long x = src.offset_;
    // Word-level would be faster; value-level keeps clipping obviously right
    // and is nowhere near the bottleneck at desk scale.
    while (src.next_set(x, x)) {
        set_if_inside(x + delta);
        ++x;
    }
}

bool RangeBitset::next_set(long long from, long long& out) const {
    if (size_ == 0) return false;
    if (from < offset_) from = offset_;
    long long idx = from - offset_;
    while (idx < size_) {
        uint64_t w = words_[static_cast<uint64_t>(idx) >> 6] >> (idx & 63);
        if (w) {
            long long pos = idx + __builtin_ctzll(w);
            if (pos >= size_) return false;
            out = offset_ + pos;
            return true;
        }
        idx = (idx | 63) + 1;
    }
    return false;
}

RangeBitset sumset(const RangeBitset& a, const RangeBitset& b, Window clip,
                   const Budgets& budget) {
    if (clip.hi < clip.lo) throw hypothesis_error("sumset: inverted clip window");
    RangeBitset out(clip, budget);
    if (a.popcount() == 0 || b.popcount() == 0) return out;
    // Iterate the smaller set for the shift loop.
    const RangeBitset& big = a.popcount() >= b.popcount() ? a : b;
    const RangeBitset& small = a.popcount() >= b.popcount() ? b : a;
    long long v = small.lo();
    while (small.next_set(v, v)) {
        out.or_shifted(big, v);
        ++v;
    }
    return out;
}

EllipsephicParams::EllipsephicParams(Base b, int k_, int n_, int d1_, int d2_)
    : base(b), k(k_), n(n_), d1(d1_), d2(d2_) {
    if (k < 2) throw hypothesis_error("EllipsephicParams: k >= 2 required");
    if (n < 1) throw hypothesis_error("EllipsephicParams: n >= 1 required");
    if (d1 < 0 || d1 >= b.value || d2 < 0 || d2 >= b.value)
        throw hypothesis_error("EllipsephicParams: digits must lie in [0, b)");
    if (d1 == d2) throw hypothesis_error("EllipsephicParams: d1 != d2 required");
}

Int EllipsephicParams::all_d1_value() const {
    return Int(d1) * (modulus() - 1) / (base.value - 1);
}

bool EllipsephicParams::coprime_powers() const {
    Int g;
    Int a = pow_int(d1, static_cast<unsigned long>(k));
    Int b2 = pow_int(d2, static_cast<unsigned long>(k));
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b2.get_mpz_t());
    return g == 1;
}

Int word_value(const std::vector<int>& bits, const Int& radix) {
    Int acc = 0;
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        if (*it != 0 && *it != 1) throw hypothesis_error("word_value: entries must be 0/1");
        acc = acc * radix + *it;
    }
    return acc;
}

std::vector<Int> fixed_length_members(const EllipsephicParams& p, const Budgets& budget) {
    if (p.n >= 63) throw budget_error("fixed_length_members: n too large");
    const uint64_t count = uint64_t{1} << p.n;
    budget.need_enum(count, "fixed_length_members");
    const Int u = p.all_d1_value();
    const Int step = p.d2 - p.d1;
    std::vector<Int> powers(p.n);
    Int pw = 1;
    for (int i = 0; i < p.n; ++i) { powers[i] = pw; pw *= p.base.value; }

    std::vector<Int> out;
    out.reserve(count);
    Int l = 0;  // L_b(x), updated along a Gray-code walk (one add per word)
    out.push_back(u);
    uint64_t gray = 0;
    for (uint64_t x = 1; x < count; ++x) {
        uint64_t g = x ^ (x >> 1);
        uint64_t flip = g ^ gray;
        int bit = __builtin_ctzll(flip);
        if (g & flip) l += powers[bit]; else l -= powers[bit];
        gray = g;
        out.push_back(u + step * l);
    }
    std::sort(out.begin(), out.end());
    // Distinct by construction (x -> L_b(x) is injective); keep the guard.
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Int> power_support(const EllipsephicParams& p, const Budgets& budget) {
    std::vector<Int> members = fixed_length_members(p, budget);
    std::vector<Int> out;
    out.reserve(members.size());
    for (const Int& m : members) out.push_back(pow_int(m, static_cast<unsigned long>(p.k)));
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Support converted to window offsets; throws if any point of interest
// cannot be indexed in 64 bits.
std::vector<long long> support_ll(const EllipsephicParams& p, const Budgets& budget) {
    std::vector<Int> s = power_support(p, budget);
    std::vector<long long> v;
    v.reserve(s.size());
    for (const Int& x : s) v.push_back(to_ll(x));
    return v;
}

}  // namespace

RepCounts representation_counts(int t, const EllipsephicParams& p, Window window,
                                const Budgets& budget) {
    if (t < 1) throw hypothesis_error("representation_counts: t >= 1 required");
    if (2.0 * t * p.n > 62)
        throw budget_error("representation_counts: counts may overflow 64 bits");
    std::vector<long long> support = support_ll(p, budget);
    const long long lo = support.front(), hi = support.back();

    // Full-range iterated convolution, clipped to the caller window at the
    // end; intermediate layers are never truncated.
    Window full{lo, hi + 1};
    budget.need_bits(static_cast<uint64_t>(full.size()) * t * 64, "representation_counts");
    std::vector<long long> cur(static_cast<size_t>(full.size()), 0);
    for (long long s : support) cur[static_cast<size_t>(s - lo)] += 1;
    Window cur_w = full;
    for (int j = 2; j <= t; ++j) {
        Window next_w{cur_w.lo + lo, cur_w.hi - 1 + hi + 1};
        std::vector<long long> next(static_cast<size_t>(next_w.size()), 0);
        for (long long i = 0; i < cur_w.size(); ++i) {
            long long c = cur[static_cast<size_t>(i)];
            if (c == 0) continue;
            long long base_v = cur_w.lo + i;
            for (long long s : support)
                next[static_cast<size_t>(base_v + s - next_w.lo)] += c;
        }
        cur = std::move(next);
        cur_w = next_w;
    }

    RepCounts out{window, std::vector<long long>(static_cast<size_t>(window.size()), 0)};
    for (long long x = std::max(window.lo, cur_w.lo); x < std::min(window.hi, cur_w.hi); ++x)
        out.counts[static_cast<size_t>(x - window.lo)] = cur[static_cast<size_t>(x - cur_w.lo)];
    return out;
}

RepCounts convolve_counts(const RepCounts& a, const RepCounts& b, Window window,
                          const Budgets& budget) {
    budget.need_bits(static_cast<uint64_t>(window.size()) * 64, "convolve_counts");
    RepCounts out{window, std::vector<long long>(static_cast<size_t>(window.size()), 0)};
    for (long long i = 0; i < a.window.size(); ++i) {
        long long ca = a.counts[static_cast<size_t>(i)];
        if (ca == 0) continue;
        long long va = a.window.lo + i;
        for (long long j = 0; j < b.window.size(); ++j) {
            long long cb = b.counts[static_cast<size_t>(j)];
            if (cb == 0) continue;
            long long v = va + b.window.lo + j;
            if (window.contains(v)) out.counts[static_cast<size_t>(v - window.lo)] += ca * cb;
        }
    }
    return out;
}

std::vector<long long> variable_length_members(const EllipsephicParams& p, long long limit,
                                               const Budgets& budget) {
    // Breadth-first generation: every member > 0 of length l is a member of
    // length l-1 (with nonzero leading digit) times b, plus d1 or d2.
    std::vector<long long> out{0};
    std::vector<long long> frontier;
    for (int d : {p.d1, p.d2})
        if (d != 0 && d < limit) frontier.push_back(d);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
    while (!frontier.empty()) {
        out.insert(out.end(), frontier.begin(), frontier.end());
        budget.need_enum(out.size(), "variable_length_members");
        std::vector<long long> next;
        for (long long v : frontier)
            for (int d : {p.d1, p.d2}) {
                if (v > (limit - d) / p.base.value) continue;
                long long w = v * p.base.value + d;
                if (w < limit) next.push_back(w);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Independent witness check: can v be written as a sum of at most s of the
// given positive values? Plain DFS with memoised failures.
bool can_represent(long long v, int s, const std::vector<long long>& vals,
                   std::vector<std::vector<char>>& memo) {
    if (v == 0) return true;
    if (s == 0) return false;
    char& m = memo[static_cast<size_t>(s)][static_cast<size_t>(v)];
    if (m) return m == 1;
    bool ok = false;
    for (auto it = vals.rbegin(); it != vals.rend() && !ok; ++it)
        if (*it <= v) ok = can_represent(v - *it, s - 1, vals, memo);
    m = ok ? 1 : 2;
    return ok;
}

}  // namespace

BasisCertificate min_basis_order(const EllipsephicParams& p, Window window, int s_max,
                                 const Budgets& budget) {
    if (!p.coprime_powers())
        throw hypothesis_error("min_basis_order: gcd(d1^k, d2^k) = 1 required");
    BasisCertificate cert;
    cert.window = window;
    if (window.empty() || (window.lo == 0 && window.hi == 1)) {
        cert.found = true;
        cert.order = 0;  // the empty sum covers {0} and vacuously covers nothing
        return cert;
    }
    if (window.lo < 0) throw hypothesis_error("min_basis_order: window must be non-negative");

    std::vector<long long> members = variable_length_members(p, window.hi, budget);
    std::vector<long long> powers;
    for (long long m : members) {
        Int pk = pow_int(make_int(m), static_cast<unsigned long>(p.k));
        if (pk < make_int(window.hi)) powers.push_back(to_ll(pk));
    }
    std::sort(powers.begin(), powers.end());

    Window reach_w{0, window.hi};
    RangeBitset gen = RangeBitset::from_values(powers, reach_w, budget);
    RangeBitset reach = gen;  // s = 1 (0 is a power, so layers are nested)
    long long prev_witness = -1;
    for (int s = 1; s <= s_max; ++s) {
        if (s > 1) reach = sumset(reach, gen, reach_w, budget);
        long long w = -1;
        bool all = true;
        for (long long v = window.lo; v < window.hi; ++v)
            if (!reach.test(v)) { all = false; w = v; break; }
        if (all) {
            cert.found = true;
            cert.order = s;
            if (s == 1) {
                // the 0-fold sumset is {0}: least window point other than 0
                long long w0 = window.lo == 0 ? 1 : window.lo;
                cert.witness_prev =
                    window.contains(w0) ? std::optional<long long>(w0) : std::nullopt;
            } else {
                cert.witness_prev = prev_witness;
            }
            // Independent recomputation of both certificate halves.
            std::vector<long long> pos_powers;
            for (long long q : powers)
                if (q > 0) pos_powers.push_back(q);
            std::vector<std::vector<char>> memo(
                static_cast<size_t>(cert.order) + 1,
                std::vector<char>(static_cast<size_t>(window.hi), 0));
            if (cert.witness_prev &&
                can_represent(*cert.witness_prev, cert.order - 1, pos_powers, memo))
                throw std::logic_error("min_basis_order: witness check failed");
            for (long long v = window.lo; v < window.hi; ++v)
                if (!can_represent(v, cert.order, pos_powers, memo))
                    throw std::logic_error("min_basis_order: coverage check failed");
            return cert;
        }
        prev_witness = w;
    }
    cert.found = false;
    cert.order = s_max;
    cert.witness_prev = prev_witness;
    return cert;
}

Progression find_progression(const std::vector<long long>& a_set, long long X, long long r,
                             const Budgets& budget) {
    if (a_set.empty()) throw hypothesis_error("find_progression: empty set");
    for (long long v : a_set)
        if (v < 1 || v > X) throw hypothesis_error("find_progression: A must lie in [1, X]");
    if (static_cast<long long>(a_set.size()) * r < r + X)
        throw hypothesis_error("find_progression: |A| >= 1 + X/r required");
    if (r < 2) throw hypothesis_error("find_progression: r >= 2 required");

    const long long folds = 4 * r;
    Window w{folds, folds * X + 1};
    RangeBitset acc = RangeBitset::from_values(a_set, w, budget);
    RangeBitset gen = acc;
    for (long long j = 1; j < folds; ++j) acc = sumset(acc, gen, w, budget);

    const long long want = X / (2 * r * r);
    for (long long d = 1; d <= r - 1; ++d) {
        long long run = 0, start = 0;
        for (long long v = w.lo; v < w.hi; ++v) {
            if (acc.test(v)) {
                long long len = 1;
                long long x = v;
                while (acc.test(x + d)) { x += d; ++len; }
                if (len >= want && len > run) { run = len; start = v; }
                // skip ahead only by one: runs at other phases may differ
            }
            if (run >= want) break;
        }
        if (run >= want) return {d, start, run};
    }
    throw std::logic_error("find_progression: no qualifying progression found");
}

IntervalCover interval_sum_cover(long long x0, long long x1, long long X, long long K) {
    if (x0 < 0 || x1 < x0 || x1 >= X) throw hypothesis_error("interval_sum_cover: I within [0, X) required");
    const long long L = x1 - x0 + 1;
    if (L < 2) throw hypothesis_error("interval_sum_cover: |I| >= 2 required");
    if (K < 4) throw hypothesis_error("interval_sum_cover: K >= 4 required");

    // eta = L/X; j_limit = ceil(2K/eta^2) = ceil(2K X^2 / L^2)
    const Int X_i = make_int(X), L_i = make_int(L), K_i = make_int(K);
    Int j_limit_i = (2 * K_i * X_i * X_i + L_i * L_i - 1) / (L_i * L_i);
    IntervalCover out;
    if (j_limit_i > 50'000'000) throw budget_error("interval_sum_cover: j limit too large");
    out.j_limit = to_ll(j_limit_i);
    out.target_lo = to_ll((4 * X_i * X_i + L_i - 1) / L_i);  // ceil(4X/eta)
    out.target_hi = to_ll(K_i * X_i * X_i / L_i);         // floor(KX/eta)

    // Exact union of the intervals jI = [j x0, j x1]; collect and merge.
    std::vector<std::pair<long long, long long>> ivs;
    ivs.reserve(static_cast<size_t>(out.j_limit));
    for (long long j = 1; j <= out.j_limit; ++j) {
        Int jlo = make_int(j) * make_int(x0), jhi = make_int(j) * make_int(x1);
        ivs.emplace_back(to_ll(jlo), to_ll(jhi));
    }
    std::sort(ivs.begin(), ivs.end());
    long long cover_from = out.target_lo;
    bool ok = out.target_lo > out.target_hi;  // empty target is trivially covered
    for (auto [lo, hi] : ivs) {
        if (lo > cover_from) break;  // gap before the target is reached
        if (hi >= cover_from) {
            cover_from = hi + 1;
            if (cover_from > out.target_hi) { ok = true; break; }
        }
    }
    out.covered = ok;
    return out;
}

}  // namespace elab
