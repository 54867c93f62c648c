#include <doctest.h>

#include <cmath>
#include <set>

#include "elab/growth.hpp"
#include "helpers.hpp"

using namespace elab;
using elab::testing::budget;

TEST_CASE("cube density: base cases") {
    CubeSet full{1, {0, 1}};
    auto rep = cube_density_check({full, full}, budget);
    CHECK(rep.ok);
    CHECK(rep.sum_size == 3);  // {0,1,2}

    CubeSet zero{1, {0}};
    auto rep2 = cube_density_check({zero, zero}, budget);
    CHECK(rep2.ok);
    CHECK(rep2.sum_size == 1);
    // equality instance: (1/4)^gamma * 3 = 1
    CHECK(rep2.lhs_log == doctest::Approx(rep2.rhs_log).epsilon(1e-12));
}

TEST_CASE("cube density: exhaustive pairs at n = 2") {
    const uint32_t full = 4;
    for (uint32_t m1 = 1; m1 < (uint32_t{1} << full); ++m1)
        for (uint32_t m2 = 1; m2 < (uint32_t{1} << full); ++m2) {
            CubeSet a{2, {}}, b{2, {}};
            for (uint32_t i = 0; i < full; ++i) {
                if ((m1 >> i) & 1) a.members.push_back(i);
                if ((m2 >> i) & 1) b.members.push_back(i);
            }
            CHECK(cube_density_check({a, b}, budget).ok);
        }
}

TEST_CASE("cube density: 10^4 random instances up to n = 8, r = 4") {
    SplitMix64 rng(2);
    long violations = 0;
    for (int t = 0; t < 10'000; ++t) {
        int n = static_cast<int>(rng.range(1, 8));
        int r = static_cast<int>(rng.range(2, 4));
        std::vector<CubeSet> sets;
        for (int i = 0; i < r; ++i)
            sets.push_back(random_cube_subset(n, 0.05 + 0.95 * rng.unit(), rng.next()));
        if (!cube_density_check(sets, budget).ok) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("cube density: product sets tensorise") {
    // For A = B x C (coordinates split), |A1 + A2| factorises; the bound must
    // then hold with equality of logs of the factors' products.
    SplitMix64 rng(6);
    for (int t = 0; t < 50; ++t) {
        CubeSet b1 = random_cube_subset(3, 0.6, rng.next());
        CubeSet b2 = random_cube_subset(3, 0.6, rng.next());
        CubeSet c1 = random_cube_subset(2, 0.7, rng.next());
        CubeSet c2 = random_cube_subset(2, 0.7, rng.next());
        auto prod = [](const CubeSet& x, const CubeSet& y) {
            CubeSet p{x.n + y.n, {}};
            for (uint32_t mx : x.members)
                for (uint32_t my : y.members)
                    p.members.push_back(mx | (my << x.n));
            std::sort(p.members.begin(), p.members.end());
            return p;
        };
        auto rb = cube_density_check({b1, b2}, budget);
        auto rc = cube_density_check({c1, c2}, budget);
        auto rp = cube_density_check({prod(b1, c1), prod(b2, c2)}, budget);
        CHECK(rp.sum_size == rb.sum_size * rc.sum_size);
    }
}

TEST_CASE("simplex objective and scan") {
    CHECK(simplex_objective({0.3}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(simplex_objective({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-13));
    // known value: r=2 at (1/2,1/2): 3 * (1/4)^gamma = 1, gamma = log2(3)/2

    auto s2 = simplex_min_scan(2, 0.01, 100);
    CHECK(s2.minimum >= 1 - 1e-9);
    auto s3 = simplex_min_scan(3, 0.01, 100);
    CHECK(s3.minimum >= 1 - 1e-9);
    CHECK_THROWS_AS(simplex_min_scan(0, 0.1, 10), hypothesis_error);
}

TEST_CASE("bilinear value counts") {
    CHECK(bilinear_value_count({{1, 1}}, budget) == 1);                  // {2}
    CHECK(bilinear_value_count({{1, 1}, {1, 2}}, budget) == 3);          // {2,3,4}
    // full grid equals the double-loop oracle
    std::vector<std::pair<long long, long long>> omega;
    for (long long u = 1; u <= 5; ++u)
        for (long long v = 1; v <= 5; ++v) omega.emplace_back(u, v);
    std::set<long long> oracle;
    for (auto [u1, v1] : omega)
        for (auto [u2, v2] : omega) oracle.insert(u1 * v1 + u2 * v2);
    CHECK(bilinear_value_count(omega, budget) == static_cast<long long>(oracle.size()));
}

TEST_CASE("common differences") {
    SUBCASE("single set") {
        auto cd = common_differences({IntSet{0, 1}}, 1, budget);
        CHECK(cd.diffs == IntSet{-1, 0, 1});
    }
    SUBCASE("two copies of an arithmetic set") {
        IntSet s{0, 2, 4};
        auto cd = common_differences({s, s}, 4, budget);
        CHECK(cd.diffs == IntSet{-4, -2, 0, 2, 4});
        CHECK(cd.shifts.size() == 1);
    }
    SUBCASE("density lower bound on random sets") {
        SplitMix64 rng(31);
        for (int t = 0; t < 50; ++t) {
            long long X = rng.range(10, 80);
            int count = static_cast<int>(rng.range(1, 3));
            std::vector<IntSet> sets;
            long long min_size = 4 * X;
            for (int i = 0; i < count; ++i) {
                std::vector<long long> v;
                for (long long x = -X; x <= X; ++x)
                    if (rng.unit() < 0.5) v.push_back(x);
                if (v.empty()) v.push_back(0);
                sets.push_back(make_set(std::move(v)));
                min_size = std::min(min_size, static_cast<long long>(sets.back().size()));
            }
            auto cd = common_differences(sets, X, budget);
            Int lhs = Int(static_cast<long>(cd.diffs.size())) *
                      pow_int(5, static_cast<unsigned long>(count)) *
                      pow_int(X, static_cast<unsigned long>(count - 1));
            CHECK(lhs >= pow_int(min_size, static_cast<unsigned long>(count)));
            // witness core is genuine
            std::set<long long> diffset(cd.diffs.begin(), cd.diffs.end());
            for (long long a : cd.core)
                for (long long b : cd.core) CHECK(diffset.count(a - b) == 1);
        }
    }
}

namespace {

std::vector<std::vector<uint32_t>> all_tuples(int r, int m) {
    std::vector<std::vector<uint32_t>> out;
    uint64_t total = 1;
    for (int j = 0; j < r; ++j) total *= uint64_t{1} << m;
    for (uint64_t t = 0; t < total; ++t) {
        std::vector<uint32_t> tup;
        uint64_t rest = t;
        for (int j = 0; j < r; ++j) {
            tup.push_back(static_cast<uint32_t>(rest & ((uint32_t{1} << m) - 1)));
            rest >>= m;
        }
        out.push_back(std::move(tup));
    }
    return out;
}

}  // namespace

TEST_CASE("product expansion: base cases") {
    SUBCASE("r=1, d=2, full set, zero shift covers [0, 2^m)") {
        auto res = product_expansion(2, 1, 3, all_tuples(1, 3), {0}, -1, budget);
        REQUIRE(res.outcome == ExpansionResult::Outcome::Ok);
        std::vector<long long> vals;
        for (auto& tv : res.values) vals.push_back(tv.value);
        for (long long v = 0; v < 8; ++v) CHECK(std::find(vals.begin(), vals.end(), v) != vals.end());
        CHECK(audit_expansion(res, 2, 1, 3, all_tuples(1, 3), {0}));
    }
    SUBCASE("r=1, d=3, m=2: 2-fold sums of {0,1,3,4}") {
        auto res = product_expansion(3, 1, 2, all_tuples(1, 2), {0}, -1, budget);
        REQUIRE(res.outcome == ExpansionResult::Outcome::Ok);
        std::vector<long long> vals;
        for (auto& tv : res.values) vals.push_back(tv.value);
        CHECK(vals == std::vector<long long>{0, 1, 2, 3, 4, 5, 6, 7, 8});
        CHECK(audit_expansion(res, 3, 1, 2, all_tuples(1, 2), {0}));
    }
}

TEST_CASE("product expansion: recursive case with audit") {
    SplitMix64 rng(9);
    for (int t = 0; t < 10; ++t) {
        auto full = all_tuples(2, 3);
        std::vector<std::vector<uint32_t>> tuples;
        for (auto& tup : full)
            if (rng.unit() < 0.5) tuples.push_back(tup);
        if (tuples.empty()) continue;
        std::vector<long long> shifts{rng.range(-4, 4), rng.range(-4, 4)};
        auto res = product_expansion(2, 2, 3, tuples, shifts, 0.0, budget);
        if (res.outcome != ExpansionResult::Outcome::Ok) continue;
        CHECK(res.depth_bound == 64);
        CHECK(audit_expansion(res, 2, 2, 3, tuples, shifts));
        CHECK(!res.values.empty());
        // at d = 2 the recorded combinations stay well inside the bound
        for (const auto& tv : res.values) CHECK(tv.combo.size() <= 16);
    }
}

TEST_CASE("product expansion: empty fiber is a structured outcome") {
    // one tuple in a large cube with an impossible cutoff
    std::vector<std::vector<uint32_t>> tuples{{0, 0}};
    auto res = product_expansion(2, 2, 3, tuples, {0, 0}, 0.9, budget);
    CHECK(res.outcome == ExpansionResult::Outcome::EmptyFiber);
    CHECK(res.stalled_level >= 1);
}

TEST_CASE("product expansion: input validation") {
    CHECK_THROWS_AS(product_expansion(1, 1, 3, all_tuples(1, 3), {0}, -1, budget),
                    hypothesis_error);
    CHECK_THROWS_AS(product_expansion(2, 1, 3, all_tuples(1, 3), {100}, -1, budget),
                    hypothesis_error);
    CHECK_THROWS_AS(product_expansion(2, 2, 3, all_tuples(1, 3), {0, 0}, -1, budget),
                    hypothesis_error);
}
