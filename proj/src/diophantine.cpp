#include "elab/diophantine.hpp"

#include <algorithm>
#include <map>

#include "elab/parallel.hpp"

namespace elab {

RationalApprox dirichlet_approx(const UnitAngle& theta, const Int& Q) {
    if (Q < 1) throw hypothesis_error("dirichlet_approx: Q >= 1 required");
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    Int x = theta.num(), y = theta.den();
    Int best_a = 0, best_q = 1;
    while (y != 0) {
        Int t = x / y;
        Int h2 = t * h1 + h0, k2 = t * k1 + k0;
        if (k2 > Q) break;
        best_a = h2;
        best_q = k2;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        Int r = x - t * y;
        x = y;
        y = r;
    }
    RationalApprox out;
    out.a = best_a;
    out.q = best_q;
    out.err = abs(theta.to_rat() - make_rat(best_a, best_q));
    return out;
}

VinogradovResult vinogradov_refine(const UnitAngle& alpha, long long L, const Rat& delta1,
                                   const Rat& delta2, const std::vector<long long>& census) {
    if (L < 1) throw hypothesis_error("vinogradov_refine: L >= 1 required");
    if (delta1 <= 0 || delta2 <= 0)
        throw hypothesis_error("vinogradov_refine: positive delta1, delta2 required");
    if (delta2 < 32 * delta1)
        throw hypothesis_error("vinogradov_refine: delta2 >= 32*delta1 violated");
    if (Rat(make_int(L)) * delta2 < 16)
        throw hypothesis_error("vinogradov_refine: L >= 16/delta2 violated");
    if (Rat(static_cast<long>(census.size())) < delta2 * make_int(L))
        throw hypothesis_error("vinogradov_refine: |S| >= delta2*L violated");
    for (long long n : census) {
        if (n < 1 || n > L)
            throw hypothesis_error("vinogradov_refine: census element outside [1, L]");
        if (alpha.times(make_int(n)).dist_to_int() > delta1)
            throw hypothesis_error("vinogradov_refine: ||alpha n|| <= delta1 violated");
    }

    VinogradovResult out;
    out.dirichlet = dirichlet_approx(alpha, make_int(4 * L));
    out.q = out.dirichlet.q;
    out.qdist = alpha.times(out.q).dist_to_int();

    // The two bootstrapped conclusions are certificates: under the verified
    // hypotheses they cannot fail.
    if (Rat(out.q) * delta2 > 16)
        throw std::logic_error("vinogradov_refine: q <= 16/delta2 certificate failed");
    if (out.qdist * delta2 * make_int(L) > delta1)
        throw std::logic_error("vinogradov_refine: ||alpha q|| certificate failed");
    out.divisibility_ok = true;
    for (long long n : census)
        if (make_int(n) % out.q != 0) { out.divisibility_ok = false; break; }
    return out;
}

std::vector<Int> carry_set(Base base, int n) {
    if (n < 1) throw hypothesis_error("carry_set: n >= 1 required");
    Int scale = pow_int(base.value, static_cast<unsigned long>(n - 1));
    std::vector<Int> out;
    for (long lam = -3 * base.value; lam <= 3 * base.value; ++lam)
        for (long lp = -3; lp <= 3; ++lp) out.push_back(lam * scale + lp);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool in_carry_set(const Int& x, Base base, int n) {
    Int scale = pow_int(base.value, static_cast<unsigned long>(n - 1));
    // lambda must satisfy |x - lambda * scale| <= 3; scan the whole candidate
    // range (it collapses to one value once scale > 6)
    Int lo = fdiv(x - 3 + scale - 1, scale);  // ceil((x-3)/scale)
    Int hi = fdiv(x + 3, scale);
    for (Int cand = lo; cand <= hi; ++cand) {
        Int rem = x - cand * scale;
        if (abs(cand) <= 3 * base.value && abs(rem) <= 3) return true;
    }
    return false;
}

bool DigitalHypothesis::default_scale_feasible() const {
    if (eta <= 0) return false;
    Rat need = Rat(pow_int(base.value, static_cast<unsigned long>(20 * r))) / (eta * eta);
    return Rat(make_int(M)) >= need &&
           Rat(pow_int(base.value, static_cast<unsigned long>(n))) >= need;
}

AlmostHomReport almost_hom_check(const UnitAngle& theta, Base base, int n,
                                 const std::vector<std::array<long long, 4>>& quadruples) {
    AlmostHomReport rep;
    for (const auto& q : quadruples) {
        if (q[0] + q[1] != q[2] + q[3])
            throw hypothesis_error("almost_hom_check: not an additive quadruple");
        Int defect = encode_frac_prefix(theta.times(make_int(q[0])), base, n) +
                     encode_frac_prefix(theta.times(make_int(q[1])), base, n) -
                     encode_frac_prefix(theta.times(make_int(q[2])), base, n) -
                     encode_frac_prefix(theta.times(make_int(q[3])), base, n);
        ++rep.checked;
        if (!in_carry_set(defect, base, n)) ++rep.failures;
    }
    return rep;
}

DiophTrace digital_to_diophantine(const DigitalHypothesis& hyp, const DiophOverrides& ov,
                                  const Budgets& budget, unsigned threads) {
    if (hyp.M < 1) throw hypothesis_error("digital_to_diophantine: M >= 1 required");
    if (hyp.n < 1) throw hypothesis_error("digital_to_diophantine: n >= 1 required");
    if (hyp.r < 0) throw hypothesis_error("digital_to_diophantine: r >= 0 required");
    budget.need_enum(static_cast<uint64_t>(2 * hyp.M + 1), "digital_to_diophantine census");

    DiophTrace trace;
    if (hyp.theta.is_zero()) {
        trace.outcome = DiophTrace::Outcome::Trivial;
        trace.q = 1;
        trace.qdist = Rat(0);
        trace.census_size = 2 * hyp.M + 1;
        trace.census_eta = make_rat(make_int(trace.census_size), make_int(hyp.M));
        return trace;
    }

    // Census of m in [-M, M] with w_n(theta m) <= r, and psi labels for the
    // members; parallel over fixed blocks.
    const long long total = 2 * hyp.M + 1;
    const uint64_t block = 1 << 10;
    const uint64_t nblocks = (static_cast<uint64_t>(total) + block - 1) / block;
    std::vector<std::vector<std::pair<long long, Int>>> partial(nblocks);
    for_blocks(static_cast<uint64_t>(total), threads, block,
               [&](uint64_t blk, uint64_t lo, uint64_t hi) {
                   auto& out = partial[blk];
                   for (uint64_t i = lo; i < hi; ++i) {
                       long long m = -hyp.M + static_cast<long long>(i);
                       UnitAngle tm = hyp.theta.times(make_int(m));
                       if (frac_nonzero_count(tm, hyp.base, hyp.n) <= hyp.r)
                           out.emplace_back(m, encode_frac_prefix(tm, hyp.base, hyp.n));
                   }
               });

    std::map<Int, std::vector<long long>> fibers;  // label a -> X_a
    long long census = 0;
    for (auto& blk : partial)
        for (auto& [m, label] : blk) {
            fibers[label].push_back(m);
            ++census;
        }
    trace.census_size = census;
    trace.census_eta = make_rat(make_int(census), make_int(hyp.M));
    Rat eta = hyp.eta;
    if (eta == 0) eta = trace.census_eta;
    if (Rat(make_int(census)) < eta * make_int(hyp.M))
        throw hypothesis_error("digital_to_diophantine: census smaller than eta*M");

    // Dyadic classes by fiber size; selection: smallest nonempty j, largest
    // fiber, ties toward the smallest label.
    for (auto& [label, members] : fibers) {
        int j = 0;
        while (Rat(static_cast<long>(members.size())) * (Int(1) << (j + 1)) <= Rat(make_int(hyp.M)) &&
               j < 62)
            ++j;
        // now 2^-(j+1) M < |X_a| (smallest such j); record
        trace.fibers.push_back(
            {label, static_cast<long long>(members.size()), j});
    }
    std::sort(trace.fibers.begin(), trace.fibers.end(),
              [](const FiberRow& a, const FiberRow& b) {
                  if (a.dyadic_j != b.dyadic_j) return a.dyadic_j < b.dyadic_j;
                  if (a.size != b.size) return a.size > b.size;
                  return a.label < b.label;
              });
    if (trace.fibers.empty())
        throw hypothesis_error("digital_to_diophantine: pipeline stalled, no fiber");
    const FiberRow& pick = trace.fibers.front();
    trace.chosen_label = pick.label;
    trace.chosen_j = pick.dyadic_j;
    trace.fiber_size = pick.size;

    std::vector<long long> fiber = fibers[pick.label];
    std::sort(fiber.begin(), fiber.end());
    trace.base_point = fiber.front();
    std::vector<long long> shifted;
    for (long long m : fiber) shifted.push_back(m - trace.base_point);

    long long pos = 0, neg = 0;
    for (long long m : shifted) {
        if (m > 0) ++pos;
        if (m < 0) ++neg;
    }
    trace.flipped_sign = neg > pos;
    std::vector<long long> refine_set;
    for (long long m : shifted) {
        long long v = trace.flipped_sign ? -m : m;
        if (v >= 1 && v <= 2 * hyp.M) refine_set.push_back(v);
    }
    std::sort(refine_set.begin(), refine_set.end());
    trace.refine_census = static_cast<long long>(refine_set.size());

    const Int N = pow_int(hyp.base.value, static_cast<unsigned long>(hyp.n));
    trace.delta1 = ov.delta1 ? *ov.delta1 : make_rat(Int(2L * hyp.base.value), N);
    if (ov.delta2) {
        trace.delta2 = *ov.delta2;
    } else {
        // 2^(-4r-22) b^(-4r-1) eta^2
        Rat d2 = eta * eta;
        d2 /= Rat(Int(1) << (4 * hyp.r + 22));
        d2 /= Rat(pow_int(hyp.base.value, static_cast<unsigned long>(4 * hyp.r + 1)));
        trace.delta2 = d2;
    }

    if (refine_set.empty()) {
        // Singleton fiber: the translated set is {0}. Fall back to the
        // refinement's own first step at Q = 2M.
        trace.outcome = DiophTrace::Outcome::DirichletFallback;
        RationalApprox ap = dirichlet_approx(hyp.theta, make_int(2 * hyp.M));
        trace.q = ap.q;
        trace.qdist = hyp.theta.times(ap.q).dist_to_int();
        return trace;
    }

    VinogradovResult vr =
        vinogradov_refine(trace.flipped_sign ? hyp.theta.negated() : hyp.theta, 2 * hyp.M,
                          trace.delta1, trace.delta2, refine_set);
    trace.outcome = DiophTrace::Outcome::Refined;
    trace.q = vr.q;
    // ||theta q|| = ||(-theta) q||, so report against theta directly.
    trace.qdist = hyp.theta.times(vr.q).dist_to_int();
    return trace;
}

}  // namespace elab
