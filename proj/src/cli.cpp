#include "elab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "elab/additive.hpp"
#include "elab/diophantine.hpp"
#include "elab/ellipsephic.hpp"
#include "elab/expsums.hpp"
#include "elab/growth.hpp"
#include "elab/io.hpp"
#include "elab/prng.hpp"
#include "elab/verify.hpp"

namespace elab {

namespace {

using nlohmann::json;

struct Ctx {
    json config;          // defaults loaded via --config
    uint64_t seed = 1;
    unsigned threads = 1;
    std::string out;      // data output path ("" = stdout)
    std::string manifest; // manifest path ("" = none)
    Budgets budget = Budgets::from_env();
};

// Writes either to the --out file or stdout.
struct DataSink {
    std::ofstream file;
    std::ostream* os;

    explicit DataSink(const std::string& path) {
        if (path.empty()) {
            os = &std::cout;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open " + path);
            os = &file;
        }
    }
    std::ostream& stream() { return *os; }
};

std::string fmt_ld(long double v) {
    char buf[48];
    snprintf(buf, sizeof buf, "%.18Le", v);
    return buf;
}

void write_manifest(const Ctx& ctx, const std::string& command, const json& params,
                    double runtime_s) {
    if (ctx.manifest.empty()) return;
    json m;
    m["command"] = command;
    m["config"] = params;
    m["config"]["seed"] = ctx.seed;
    m["config"]["threads"] = ctx.threads;
    m["budgets"] = {{"enumeration", ctx.budget.enumeration},
                    {"bitset_bits", ctx.budget.bitset_bits}};
    m["precision"] = "long double phases, guard eps_num = terms * 2^-58";
    m["prng"] = "splitmix64";
    m["runtime_seconds"] = runtime_s;
    std::ofstream f(ctx.manifest);
    f << m.dump(2) << "\n";
}

EllipsephicParams params_from(int b, int k, int n, int d1, int d2) {
    return EllipsephicParams(Base(b), k, n, d1, d2);
}

json params_json(int b, int k, int n, int d1, int d2) {
    return json{{"b", b}, {"k", k}, {"n", n}, {"d1", d1}, {"d2", d2}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BoxFunction box_from_json(const json& j) {
    BoxFunction f;
    for (auto& s : j.at("axes")) f.axis_sizes.push_back(s.get<int>());
    for (auto& v : j.at("values"))
        f.values.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    if (f.values.size() != f.table_size())
        throw hypothesis_error("box function: table size mismatch");
    return f;
}

int run(std::vector<std::string> args) {
    Ctx ctx;

    CLI::App app{"elab - two-digit power sums: exact digit machinery, exponential-sum "
                 "scans, additive-energy and sumset-growth experiments"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file with option defaults");

    // Shared knobs are registered per subcommand so that --help stays local.
    struct P {
        int b = 3, k = 2, n = 4, d1 = 1, d2 = 2;
    };
    auto add_common = [&](CLI::App* c, bool with_params, P* p) {
        c->add_option("--seed", ctx.seed, "PRNG seed (splitmix64)");
        c->add_option("--threads", ctx.threads, "worker threads (output is identical for any value)");
        c->add_option("--out", ctx.out, "data output path (default stdout)");
        c->add_option("--manifest", ctx.manifest, "write a JSON run manifest here");
        c->add_option("--budget-bits", ctx.budget.bitset_bits,
                      "dense bitmap budget in bits (also: ELAB_BUDGET_BITS)");
        c->add_option("--budget-enum", ctx.budget.enumeration, "enumeration budget");
        if (with_params) {
            c->add_option("--b", p->b, "base (>= 3)");
            c->add_option("--k", p->k, "exponent (>= 2)");
            c->add_option("--n", p->n, "digit length");
            c->add_option("--d1", p->d1, "first digit");
            c->add_option("--d2", p->d2, "second digit");
        }
    };

    int exit_code = 0;

    // ---- enumerate ----
    P ep;
    bool enum_powers = false;
    std::string bitmap_path;
    auto* c_enum = app.add_subcommand("enumerate", "fixed-length members or their k-th powers");
    add_common(c_enum, true, &ep);
    c_enum->add_flag("--powers", enum_powers, "emit k-th powers instead of members");
    c_enum->add_option("--bitmap", bitmap_path,
                       "also dump a little-endian presence bitmap with JSON sidecar");
    c_enum->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        auto p = params_from(ep.b, ep.k, ep.n, ep.d1, ep.d2);
        if (!p.coprime_powers())
            std::cerr << "warning: gcd(d1^k, d2^k) != 1; basis-order runs would reject this\n";
        auto vals = enum_powers ? power_support(p, ctx.budget) : fixed_length_members(p, ctx.budget);
        DataSink sink(ctx.out);
        sink.stream() << "value,count\n";
        for (const Int& v : vals) sink.stream() << v.get_str() << ",1\n";
        json pj = params_json(ep.b, ep.k, ep.n, ep.d1, ep.d2);
        pj["powers"] = enum_powers;
        if (!bitmap_path.empty()) {
            std::vector<long long> ll;
            for (const Int& v : vals) ll.push_back(to_ll(v));
            Window w{std::min<long long>(0, ll.front()), ll.back() + 1};
            RangeBitset bits = RangeBitset::from_values(ll, w, ctx.budget);
            write_bitmap_dump(bitmap_path, bits, "\"params\":" + pj.dump());
        }
        write_manifest(ctx, "enumerate", pj, seconds_since(t0));
    });

    // ---- expsum ----
    P xp;
    std::string theta_str = "0";
    auto* c_exp = app.add_subcommand("expsum", "evaluate the normalised exponential sum at one angle");
    add_common(c_exp, true, &xp);
    c_exp->add_option("--theta", theta_str, "angle as num/den");
    c_exp->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        auto p = params_from(xp.b, xp.k, xp.n, xp.d1, xp.d2);
        UnitAngle theta(parse_rat(theta_str));
        auto z = weyl_sum(p, theta, ctx.budget);
        DataSink sink(ctx.out);
        sink.stream() << "theta_num,theta_den,re,im,magnitude\n";
        sink.stream() << theta.num().get_str() << "," << theta.den().get_str() << ","
                      << fmt_ld(z.real()) << "," << fmt_ld(z.imag()) << ","
                      << fmt_ld(sqrtl(z.real() * z.real() + z.imag() * z.imag())) << "\n";
        json pj = params_json(xp.b, xp.k, xp.n, xp.d1, xp.d2);
        pj["theta"] = theta_str;
        write_manifest(ctx, "expsum", pj, seconds_since(t0));
    });

    // ---- scan ----
    P sp;
    long long grid = 1 << 16;
    double delta = 0.5;
    auto* c_scan = app.add_subcommand("scan", "grid scan for large exponential-sum values");
    add_common(c_scan, true, &sp);
    c_scan->add_option("--grid", grid, "grid resolution (angles a/grid)");
    c_scan->add_option("--delta", delta, "magnitude threshold");
    c_scan->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        auto p = params_from(sp.b, sp.k, sp.n, sp.d1, sp.d2);
        MethodConstants mc = MethodConstants::from(p);
        auto recs = scan_large_values(p, grid, static_cast<long double>(delta),
                                      mc.major_q_bound, ctx.budget, ctx.threads);
        DataSink sink(ctx.out);
        sink.stream() << "theta_num,theta_den,magnitude,a,q,dist_num,dist_den\n";
        for (const auto& r : recs)
            sink.stream() << r.theta.num().get_str() << "," << r.theta.den().get_str() << ","
                          << fmt_ld(r.magnitude) << "," << r.a.get_str() << ","
                          << r.q.get_str() << "," << r.qdist.get_num().get_str() << ","
                          << r.qdist.get_den().get_str() << "\n";
        json pj = params_json(sp.b, sp.k, sp.n, sp.d1, sp.d2);
        pj["grid"] = grid;
        pj["delta"] = delta;
        pj["q_bound"] = mc.major_q_bound.get_str();
        pj["records"] = recs.size();
        pj["annotation"] =
            "a,q columns are structural best approximations with q <= q_bound; "
            "no asymptotic bound is claimed at this scale";
        write_manifest(ctx, "scan", pj, seconds_since(t0));
    });

    // ---- moment ----
    P mp;
    int mom_t = 1;
    long long panels = 1 << 14;
    std::string counts_path;
    auto* c_mom = app.add_subcommand("moment", "exact 2t-th moment plus quadrature cross-check");
    add_common(c_mom, true, &mp);
    c_mom->add_option("--t", mom_t, "fold count t");
    c_mom->add_option("--panels", panels, "quadrature panels");
    c_mom->add_option("--counts-out", counts_path, "write the t-fold counts as (value,count) CSV");
    c_mom->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        auto p = params_from(mp.b, mp.k, mp.n, mp.d1, mp.d2);
        Rat exact = moment_exact(p, mom_t, ctx.budget);
        Quadrature q = moment_quadrature(p, mom_t, panels, ctx.budget, ctx.threads);
        if (!counts_path.empty()) {
            auto support = power_support(p, ctx.budget);
            Window full{to_ll(support.front()) * mom_t, to_ll(support.back()) * mom_t + 1};
            RepCounts rc = representation_counts(mom_t, p, full, ctx.budget);
            std::vector<long long> values, counts;
            for (long long x = rc.window.lo; x < rc.window.hi; ++x)
                if (rc.at(x) > 0) {
                    values.push_back(x);
                    counts.push_back(rc.at(x));
                }
            write_counts_csv(counts_path, values, counts);
        }
        DataSink sink(ctx.out);
        sink.stream() << "exact,quadrature,quadrature_error\n";
        sink.stream() << rat_str(exact) << "," << fmt_ld(q.value) << ","
                      << fmt_ld(q.error_estimate) << "\n";
        json pj = params_json(mp.b, mp.k, mp.n, mp.d1, mp.d2);
        pj["t"] = mom_t;
        pj["panels"] = panels;
        pj["exact"] = rat_str(exact);
        write_manifest(ctx, "moment", pj, seconds_since(t0));
    });

    // ---- basis-order ----
    P bp;
    long long blo = 50, bhi = 2000;
    int smax = 64;
    auto* c_basis = app.add_subcommand("basis-order",
                                       "least s covering a window by sums of at most s powers");
    add_common(c_basis, true, &bp);
    c_basis->add_option("--lo", blo, "window lower end (inclusive)");
    c_basis->add_option("--hi", bhi, "window upper end (inclusive)");
    c_basis->add_option("--smax", smax, "give up beyond this order");
    c_basis->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        auto p = params_from(bp.b, bp.k, bp.n, bp.d1, bp.d2);
        auto cert = min_basis_order(p, Window{blo, bhi + 1}, smax, ctx.budget);
        DataSink sink(ctx.out);
        sink.stream() << "found,order,window_lo,window_hi,witness_prev\n";
        sink.stream() << (cert.found ? 1 : 0) << "," << cert.order << "," << blo << "," << bhi
                      << "," << (cert.witness_prev ? std::to_string(*cert.witness_prev) : "")
                      << "\n";
        json pj = params_json(bp.b, bp.k, bp.n, bp.d1, bp.d2);
        pj["lo"] = blo;
        pj["hi"] = bhi;
        pj["smax"] = smax;
        pj["found"] = cert.found;
        pj["order"] = cert.order;
        write_manifest(ctx, "basis-order", pj, seconds_since(t0));
        if (!cert.found) exit_code = 4;
    });

    // ---- energy ----
    std::string set_path;
    int eb = 3, er = 1, em = 3;
    bool use_ball = false, check_bound = false;
    auto* c_energy = app.add_subcommand("energy", "additive energy of a set");
    add_common(c_energy, false, nullptr);
    c_energy->add_option("--set", set_path, "newline-delimited integer set file");
    c_energy->add_flag("--ball", use_ball, "use the digital Hamming ball instead of --set");
    c_energy->add_option("--b", eb, "base");
    c_energy->add_option("--r", er, "ball radius");
    c_energy->add_option("--m", em, "ball positions");
    c_energy->add_flag("--check-bound", check_bound,
                       "emit the (2b)^4r |A|^2 bound report as JSON");
    c_energy->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        IntSet a = use_ball ? hamming_ball(Base(eb), er, em, std::nullopt, ctx.budget)
                            : make_set(read_int_set(set_path));
        DataSink sink(ctx.out);
        if (check_bound) {
            auto rep = ball_energy_check(a, Base(eb), er, ctx.budget);
            Int margin = rep.bound - rep.energy;
            json j{{"size", a.size()},
                   {"value", rep.energy.get_str()},
                   {"bound", rep.bound.get_str()},
                   {"margin", margin.get_str()},
                   {"ok", rep.ok}};
            sink.stream() << j.dump(2) << "\n";
            if (!rep.ok) exit_code = 4;
        } else {
            Int e = additive_energy(a, ctx.budget);
            sink.stream() << "size,energy\n" << a.size() << "," << e.get_str() << "\n";
        }
        write_manifest(ctx, "energy",
                       json{{"set", set_path}, {"ball", use_ball}, {"b", eb}, {"r", er}, {"m", em}},
                       seconds_since(t0));
    });

    // ---- ball ----
    int lb = 3, lr = 1, lm = 3;
    long long wlo = 0, whi = 0;
    auto* c_ball = app.add_subcommand("ball", "digital Hamming ball members");
    add_common(c_ball, false, nullptr);
    c_ball->add_option("--b", lb, "base");
    c_ball->add_option("--r", lr, "radius (max nonzero digits)");
    c_ball->add_option("--m", lm, "digit positions");
    c_ball->add_option("--lo", wlo, "window lower end (inclusive)");
    c_ball->add_option("--hi", whi, "window upper end (inclusive; 0,0 = no window)");
    c_ball->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        std::optional<Window> w;
        if (!(wlo == 0 && whi == 0)) w = Window{wlo, whi + 1};
        IntSet ball = hamming_ball(Base(lb), lr, lm, w, ctx.budget);
        DataSink sink(ctx.out);
        for (long long v : ball) sink.stream() << v << "\n";
        write_manifest(ctx, "ball", json{{"b", lb}, {"r", lr}, {"m", lm}}, seconds_since(t0));
    });

    // ---- boxnorm ----
    std::string box_path;
    auto* c_box = app.add_subcommand("boxnorm", "box norm of a function given as JSON");
    add_common(c_box, false, nullptr);
    c_box->add_option("--input", box_path, "JSON: {axes:[..], values:[[re,im],..]}")->required();
    c_box->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        std::ifstream f(box_path);
        if (!f) throw std::runtime_error("cannot open " + box_path);
        json j;
        f >> j;
        auto bn = box_norm(box_from_json(j), ctx.budget);
        DataSink sink(ctx.out);
        sink.stream() << "value,avg,err_radius\n";
        sink.stream() << fmt_ld(bn.value) << "," << fmt_ld(bn.avg) << ","
                      << fmt_ld(bn.err_radius) << "\n";
        write_manifest(ctx, "boxnorm", json{{"input", box_path}}, seconds_since(t0));
    });

    // ---- density ----
    int dn = 4, dr = 2;
    uint64_t dtrials = 1000;
    bool exhaustive = false;
    std::string dump_path;
    auto* c_den = app.add_subcommand("density", "cube sumset density bound experiments");
    add_common(c_den, false, nullptr);
    c_den->add_option("--n", dn, "cube dimension");
    c_den->add_option("--r", dr, "summand count");
    c_den->add_option("--trials", dtrials, "random instances");
    c_den->add_flag("--exhaustive", exhaustive, "all pairs of nonempty subsets (r = 2, n <= 3)");
    c_den->add_option("--dump", dump_path, "write the first violating instance as JSON here");
    c_den->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        DataSink sink(ctx.out);
        sink.stream() << "instance,sum_size,lhs_log,rhs_log,ok\n";
        uint64_t bad = 0, count = 0;
        auto dump_counterexample = [&](const std::vector<CubeSet>& sets,
                                       const CubeDensityReport& rep) {
            if (dump_path.empty() || bad != 1) return;
            json j{{"sum_size", rep.sum_size}, {"lhs_log", rep.lhs_log},
                   {"rhs_log", rep.rhs_log}};
            json js = json::array();
            for (const auto& s : sets) js.push_back(json{{"n", s.n}, {"members", s.members}});
            j["sets"] = js;
            std::ofstream f(dump_path);
            f << j.dump(2) << "\n";
        };
        if (exhaustive) {
            if (dn > 3) throw budget_error("density --exhaustive: n <= 3");
            const uint32_t full = uint32_t{1} << dn;
            for (uint32_t m1 = 1; m1 < (uint32_t{1} << full); ++m1)
                for (uint32_t m2 = 1; m2 < (uint32_t{1} << full); ++m2) {
                    CubeSet a{dn, {}}, b{dn, {}};
                    for (uint32_t i = 0; i < full; ++i) {
                        if ((m1 >> i) & 1) a.members.push_back(i);
                        if ((m2 >> i) & 1) b.members.push_back(i);
                    }
                    auto rep = cube_density_check({a, b}, ctx.budget);
                    ++count;
                    if (!rep.ok) {
                        ++bad;
                        sink.stream() << count << "," << rep.sum_size << "," << rep.lhs_log
                                      << "," << rep.rhs_log << ",0\n";
                        dump_counterexample({a, b}, rep);
                    }
                }
        } else {
            SplitMix64 rng(ctx.seed);
            for (uint64_t t = 0; t < dtrials; ++t) {
                std::vector<CubeSet> sets;
                for (int i = 0; i < dr; ++i)
                    sets.push_back(random_cube_subset(dn, 0.1 + 0.9 * rng.unit(), rng.next()));
                auto rep = cube_density_check(sets, ctx.budget);
                ++count;
                if (!rep.ok) {
                    ++bad;
                    dump_counterexample(sets, rep);
                }
                sink.stream() << count << "," << rep.sum_size << "," << rep.lhs_log << ","
                              << rep.rhs_log << "," << (rep.ok ? 1 : 0) << "\n";
            }
        }
        sink.stream() << "# total " << count << ", violations " << bad << "\n";
        write_manifest(ctx, "density",
                       json{{"n", dn}, {"r", dr}, {"trials", dtrials}, {"exhaustive", exhaustive},
                            {"violations", bad}},
                       seconds_since(t0));
        if (bad) exit_code = 4;
    });

    // ---- realvar ----
    int rr = 2, riters = 200;
    double rstep = 0.01;
    auto* c_rv = app.add_subcommand("realvar", "ordered-simplex gamma-sum minimum scan");
    add_common(c_rv, false, nullptr);
    c_rv->add_option("--r", rr, "variable count");
    c_rv->add_option("--step", rstep, "grid step");
    c_rv->add_option("--iters", riters, "refinement iterations");
    c_rv->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        auto scan = simplex_min_scan(rr, rstep, riters);
        DataSink sink(ctx.out);
        sink.stream() << "minimum";
        for (int i = 0; i < rr; ++i) sink.stream() << ",x" << (i + 1);
        sink.stream() << "\n" << fmt_ld(scan.minimum);
        for (double x : scan.argmin) sink.stream() << "," << x;
        sink.stream() << "\n";
        write_manifest(ctx, "realvar",
                       json{{"r", rr}, {"step", rstep}, {"iters", riters},
                            {"minimum", static_cast<double>(scan.minimum)}},
                       seconds_since(t0));
    });

    // ---- expand ----
    long long xd = 2;
    int xr = 2, xm = 3;
    double xalpha = 0.5, xcut = -1;
    auto* c_xp = app.add_subcommand("expand", "product expansion of a random dense tuple set");
    add_common(c_xp, false, nullptr);
    c_xp->add_option("--d", xd, "radix d >= 2");
    c_xp->add_option("--r", xr, "tuple arity");
    c_xp->add_option("--m", xm, "word length");
    c_xp->add_option("--alpha", xalpha, "tuple set density");
    c_xp->add_option("--cutoff", xcut, "fiber density cutoff (< 0: alpha/2 per level)");
    c_xp->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        SplitMix64 rng(ctx.seed);
        std::vector<std::vector<uint32_t>> tuples;
        const uint32_t words = uint32_t{1} << xm;
        uint64_t total = 1;
        for (int j = 0; j < xr; ++j) total *= words;
        for (uint64_t t = 0; t < total; ++t)
            if (rng.unit() < xalpha) {
                std::vector<uint32_t> tup;
                uint64_t rest = t;
                for (int j = 0; j < xr; ++j) { tup.push_back(rest % words); rest /= words; }
                tuples.push_back(std::move(tup));
            }
        if (tuples.empty()) throw hypothesis_error("expand: empty random set, raise --alpha");
        std::vector<long long> shifts(static_cast<size_t>(xr), 0);
        auto res = product_expansion(xd, xr, xm, tuples, shifts, xcut, ctx.budget);
        bool audited = res.outcome == ExpansionResult::Outcome::Ok &&
                       audit_expansion(res, xd, xr, xm, tuples, shifts);
        DataSink sink(ctx.out);
        sink.stream() << "outcome,values,depth_bound,audited\n";
        sink.stream() << (res.outcome == ExpansionResult::Outcome::Ok ? "ok" : "empty-fiber")
                      << "," << res.values.size() << "," << res.depth_bound << ","
                      << (audited ? 1 : 0) << "\n";
        write_manifest(ctx, "expand",
                       json{{"d", xd}, {"r", xr}, {"m", xm}, {"alpha", xalpha},
                            {"tuples", tuples.size()}, {"audited", audited}},
                       seconds_since(t0));
        if (res.outcome == ExpansionResult::Outcome::Ok && !audited) exit_code = 4;
    });

    // ---- dioph ----
    std::string dtheta = "0";
    int db = 3, dnn = 6, drr = 1;
    long long dM = 243;
    std::string deta = "0", dd1, dd2;
    auto* c_dio = app.add_subcommand("dioph", "digital-to-diophantine pipeline with trace");
    add_common(c_dio, false, nullptr);
    c_dio->add_option("--theta", dtheta, "angle as num/den");
    c_dio->add_option("--b", db, "base");
    c_dio->add_option("--n", dnn, "digit count");
    c_dio->add_option("--M", dM, "census range [-M, M]");
    c_dio->add_option("--r", drr, "digit-weight bound");
    c_dio->add_option("--eta", deta, "claimed density num/den (0 = take census density)");
    c_dio->add_option("--delta1", dd1, "override delta1 (num/den)");
    c_dio->add_option("--delta2", dd2, "override delta2 (num/den)");
    c_dio->callback([&] {
        auto t0 = std::chrono::steady_clock::now();
        DigitalHypothesis hyp{UnitAngle(parse_rat(dtheta)), Base(db), dnn, dM, drr,
                              parse_rat(deta)};
        DiophOverrides ov;
        if (!dd1.empty()) ov.delta1 = parse_rat(dd1);
        if (!dd2.empty()) ov.delta2 = parse_rat(dd2);
        auto tr = digital_to_diophantine(hyp, ov, ctx.budget, ctx.threads);
        json out;
        DigitalHypothesis echo{UnitAngle(parse_rat(dtheta)), Base(db), dnn, dM, drr,
                               tr.census_eta};
        out["hypothesis"] = {{"theta", dtheta}, {"b", db}, {"n", dnn}, {"M", dM},
                             {"r", drr}, {"eta", rat_str(tr.census_eta)},
                             {"default_scale_feasible", echo.default_scale_feasible()}};
        out["outcome"] = tr.outcome == DiophTrace::Outcome::Refined ? "refined"
                         : tr.outcome == DiophTrace::Outcome::Trivial ? "trivial"
                                                                      : "dirichlet-fallback";
        out["census_size"] = tr.census_size;
        json fibers = json::array();
        for (const auto& f : tr.fibers)
            fibers.push_back({{"a", f.label.get_str()}, {"size", f.size}, {"j", f.dyadic_j}});
        out["fibers"] = fibers;
        if (tr.outcome == DiophTrace::Outcome::Refined) {
            out["chosen"] = {{"a", tr.chosen_label.get_str()}, {"j", tr.chosen_j},
                             {"fiber_size", tr.fiber_size}, {"m0", tr.base_point},
                             {"flipped", tr.flipped_sign}, {"refine_census", tr.refine_census}};
            out["delta1"] = rat_str(tr.delta1);
            out["delta2"] = rat_str(tr.delta2);
        }
        out["q"] = tr.q.get_str();
        out["qdist"] = rat_str(tr.qdist);
        DataSink sink(ctx.out);
        sink.stream() << out.dump(2) << "\n";
        write_manifest(ctx, "dioph", out["hypothesis"], seconds_since(t0));
    });

    // ---- verify-lemma ----
    std::string lemma_name;
    uint64_t vtrials = 10000;
    bool list_only = false;
    auto* c_ver = app.add_subcommand("verify-lemma", "run a named verification routine");
    add_common(c_ver, false, nullptr);
    c_ver->add_option("name", lemma_name, "check name (see --list)");
    c_ver->add_option("--trials", vtrials, "sample count where applicable");
    c_ver->add_flag("--list", list_only, "list available checks");
    c_ver->callback([&] {
        DataSink sink(ctx.out);
        if (list_only) {
            for (const auto& c : lemma_checks())
                sink.stream() << c.name << ": " << c.what << "\n";
            return;
        }
        bool any = false;
        for (const auto& c : lemma_checks()) {
            if (lemma_name != "all" && c.name != lemma_name) continue;
            any = true;
            std::ostringstream detail;
            auto t0 = std::chrono::steady_clock::now();
            bool ok = c.run(vtrials, ctx.seed, detail);
            sink.stream() << (ok ? "[PASS] " : "[FAIL] ") << c.name << " (" << seconds_since(t0)
                          << "s)";
            if (!detail.str().empty()) sink.stream() << " " << detail.str();
            sink.stream() << "\n";
            if (!ok) exit_code = 4;
        }
        if (!any) {
            std::cerr << "unknown check '" << lemma_name << "'; try verify-lemma --list\n";
            exit_code = 1;
        }
    });

    // Config handling: read --config wherever it appears, then inject its
    // values as tokens right after the subcommand, skipping any option the
    // user passed explicitly. Explicit flags therefore always win.
    for (size_t i = 0; i + 1 < args.size(); ++i)
        if (args[i] == "--config") {
            std::ifstream f(args[i + 1]);
            if (!f) throw std::runtime_error("cannot open config " + args[i + 1]);
            f >> ctx.config;
        }
    const std::vector<CLI::App*> subs = {c_enum, c_exp,  c_scan, c_mom, c_basis, c_energy,
                                         c_ball, c_box,  c_den,  c_rv,  c_xp,    c_dio,
                                         c_ver};
    if (ctx.config.is_object()) {
        CLI::App* sub = nullptr;
        size_t sub_idx = 0;
        for (size_t i = 0; i < args.size() && !sub; ++i)
            for (auto* s : subs)
                if (args[i] == s->get_name()) {
                    sub = s;
                    sub_idx = i;
                    break;
                }
        if (sub) {
            std::vector<std::string> inject;
            for (auto& [key, val] : ctx.config.items()) {
                std::string flag = "--" + key;
                if (!sub->get_option_no_throw(flag)) continue;
                bool user_has = false;
                for (size_t j = sub_idx + 1; j < args.size() && !user_has; ++j)
                    user_has = args[j] == flag || args[j].rfind(flag + "=", 0) == 0;
                if (user_has) continue;
                if (val.is_boolean()) {
                    if (val.get<bool>()) inject.push_back(flag);
                } else {
                    inject.push_back(flag);
                    inject.push_back(val.is_string() ? val.get<std::string>() : val.dump());
                }
            }
            args.insert(args.begin() + static_cast<long>(sub_idx) + 1, inject.begin(),
                        inject.end());
        }
    }

    std::vector<const char*> argv;
    argv.push_back("elab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    return exit_code;
}

}  // namespace

int cli_main(std::vector<std::string> args) {
    try {
        return run(std::move(args));
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis violated: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return cli_main(std::move(args));
}

}  // namespace elab
