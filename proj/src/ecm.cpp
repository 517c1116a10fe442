#include "ecfuse/ecm.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "ecfuse/curve.hpp"
#include "ecfuse/scalarmul.hpp"

namespace ecfuse {

MontgomeryCurve::MontgomeryCurve(RingElement A, RingElement B)
    : A_(std::move(A)), B_(std::move(B)),
      a24_(div(add(A_, A_.ctx()(2)), A_.ctx()(4))) {}

XZPoint xz_dadd(const MontgomeryCurve&, const XZPoint& P, const XZPoint& Q,
                const XZPoint& diff) {
    RingElement u = mul(sub(P.X, P.Z), add(Q.X, Q.Z));
    RingElement v = mul(add(P.X, P.Z), sub(Q.X, Q.Z));
    return {mul(diff.Z, sqr(add(u, v))), mul(diff.X, sqr(sub(u, v)))};
}

XZPoint xz_double(const MontgomeryCurve& C, const XZPoint& P) {
    RingElement s = sqr(add(P.X, P.Z));
    RingElement d = sqr(sub(P.X, P.Z));
    RingElement t = sub(s, d);  // 4XZ
    return {mul(s, d), mul(t, add(d, mul(C.a24(), t)))};
}

XZPoint ladder(const MontgomeryCurve& C, const mpz_class& k, const XZPoint& P) {
    if (k < 1) throw std::invalid_argument("ladder requires k >= 1");
    if (k == 1) return P;
    if (k == 2) return xz_double(C, P);

    XZPoint r0 = P;
    XZPoint r1 = xz_double(C, P);
    const std::size_t nbits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (std::size_t i = nbits - 1; i-- > 0;) {
        if (mpz_tstbit(k.get_mpz_t(), i)) {
            r0 = xz_dadd(C, r0, r1, P);
            r1 = xz_double(C, r1);
        } else {
            r1 = xz_dadd(C, r0, r1, P);
            r0 = xz_double(C, r0);
        }
    }
    return r0;
}

mpz_class stage1_multiplier(unsigned long b1) {
    if (b1 < 2) throw std::invalid_argument("b1 must be >= 2");
    std::vector<bool> composite(b1 + 1, false);
    mpz_class k = 1;
    for (unsigned long p = 2; p <= b1; ++p) {
        if (composite[p]) continue;
        for (unsigned long q = p * p; q <= b1; q += p) composite[q] = true;
        unsigned long pe = p;
        while (pe <= b1 / p) pe *= p;
        k *= pe;
    }
    return k;
}

namespace {

mpz_class gcd_with(const mpz_class& a, const mpz_class& n) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return g;
}

bool proper_factor(const mpz_class& g, const mpz_class& n) {
    return g > 1 && g < n;
}

struct MontgomeryJob {
    mpz_class A;  // x0 = 2 throughout
};

/* One Montgomery curve: construct, ladder by k, gcd at the end.  All factor
 * detection funnels through the returned optional. */
std::optional<mpz_class> run_montgomery_curve(const mpz_class& n,
                                              const MontgomeryJob& job,
                                              const mpz_class& k,
                                              OpCount& counts_out) {
    RingContext ctx(n);
    std::optional<mpz_class> factor;
    mpz_class g = gcd_with((job.A * job.A - 4) % n, n);
    if (proper_factor(g, n)) {
        factor = g;
    } else if (g != n) {
        try {
            RingElement A = ctx(job.A);
            // y0 = 1, x0 = 2 fixes B = x0^3 + A x0^2 + x0 = 4A + 10.
            MontgomeryCurve C(A, ctx(4 * job.A + 10));
            XZPoint r = ladder(C, k, XZPoint{ctx(2), ctx(1)});
            mpz_class gz = gcd_with(r.Z.value(), n);
            if (proper_factor(gz, n)) factor = gz;
        } catch (const NonInvertible& e) {
            if (proper_factor(e.factor(), n)) factor = e.factor();
        }
    }
    counts_out = ctx.counts();
    return factor;
}

struct FusedLane {
    mpz_class a, b, x0, y0;
};

/* Short-form Weierstrass curve with a seeded point: b is solved from
 * (x0, y0), and a discriminant sharing a factor with N is itself a find. */
FusedLane make_fused_lane(const mpz_class& n, gmp_randclass& rng,
                          std::optional<mpz_class>& factor) {
    for (;;) {
        FusedLane lane;
        lane.a = rng.get_z_range(n);
        lane.x0 = rng.get_z_range(n);
        lane.y0 = rng.get_z_range(n);
        lane.b = (lane.y0 * lane.y0 - lane.x0 * lane.x0 * lane.x0 -
                  lane.a * lane.x0) % n;
        if (lane.b < 0) lane.b += n;
        mpz_class disc =
            (-16 * (4 * lane.a * lane.a * lane.a +
                    27 * lane.b * lane.b)) % n;
        mpz_class g = gcd_with(disc, n);
        if (proper_factor(g, n)) {
            factor = g;
            return lane;
        }
        if (g == n) continue;  // singular mod every factor; redraw
        return lane;
    }
}

EcmResult run_fused_single(const EcmParams& params, const mpz_class& k,
                           gmp_randclass& rng) {
    EcmResult out;
    out.curves_tried = 1;
    RingContext ctx(params.n);
    std::optional<mpz_class> factor;
    FusedLane lane = make_fused_lane(params.n, rng, factor);
    if (!factor) {
        try {
            CurveParams E(ctx(0), ctx(0), ctx(0), ctx(lane.a), ctx(lane.b));
            CurvePoint P(ctx(lane.x0), ctx(lane.y0));
            mul_naf(E, k, P, MulMode::kFused);
        } catch (const NonInvertible& e) {
            factor = e.factor();
        }
    }
    out.factor = std::move(factor);
    out.per_curve_counts.push_back(ctx.counts());
    return out;
}

/* Lockstep fused engine: all lanes share one context and the same NAF
 * schedule, so each division phase batches its denominators across lanes.
 * A NonInvertible thrown by batch_inv is the factor. */
EcmResult run_fused_batched(const EcmParams& params, const mpz_class& k,
                            gmp_randclass& rng) {
    EcmResult out;
    out.curves_tried = params.curves;
    RingContext ctx(params.n);

    struct LaneState {
        RingElement a, bx, by, x, y;
        bool live = true;
    };
    std::vector<LaneState> lanes;
    for (unsigned i = 0; i < params.curves; ++i) {
        std::optional<mpz_class> factor;
        FusedLane lane = make_fused_lane(params.n, rng, factor);
        if (factor) {
            out.factor = std::move(factor);
            out.batch_counts = ctx.counts();
            return out;
        }
        LaneState st{ctx(lane.a), ctx(lane.x0), ctx(lane.y0), ctx(lane.x0),
                     ctx(lane.y0)};
        lanes.push_back(std::move(st));
    }

    SignedDigits naf = recode_naf(k);
    std::vector<RingElement> dens, invs;
    std::vector<std::size_t> idx;

    auto batch = [&](auto&& den_of) -> bool {
        dens.clear();
        idx.clear();
        for (std::size_t i = 0; i < lanes.size(); ++i) {
            if (!lanes[i].live) continue;
            RingElement d = den_of(lanes[i], i);
            if (d.is_zero()) {
                lanes[i].live = false;  // chain hit torsion mod all factors
                continue;
            }
            dens.push_back(std::move(d));
            idx.push_back(i);
        }
        if (dens.empty()) return false;
        invs = batch_inv(dens);  // NonInvertible here is the factor
        return true;
    };

    try {
        for (std::size_t di = 1; di < naf.digits.size(); ++di) {
            const int digit = naf.digits[di];
            if (digit == 0) {
                if (!batch([](LaneState& L, std::size_t) { return dbl(L.y); }))
                    break;
                for (std::size_t j = 0; j < idx.size(); ++j) {
                    LaneState& L = lanes[idx[j]];
                    RingElement lam = mul(add(tpl(sqr(L.x)), L.a), invs[j]);
                    RingElement x2 = sub(sqr(lam), dbl(L.x));
                    L.y = sub(mul(lam, sub(L.x, x2)), L.y);
                    L.x = std::move(x2);
                }
                continue;
            }
            // Fused 2T +- P: chord phase, then the second-slope phase.
            if (!batch([](LaneState& L, std::size_t) { return sub(L.x, L.bx); }))
                break;
            std::vector<RingElement> l1(lanes.size()), x3(lanes.size());
            for (std::size_t j = 0; j < idx.size(); ++j) {
                LaneState& L = lanes[idx[j]];
                RingElement qy = digit == 1 ? L.by : neg(L.by);
                l1[idx[j]] = mul(sub(L.y, qy), invs[j]);
                x3[idx[j]] = sub(sub(sqr(l1[idx[j]]), L.x), L.bx);
            }
            if (!batch([&](LaneState& L, std::size_t i) {
                    return sub(L.x, x3[i]);
                }))
                break;
            for (std::size_t j = 0; j < idx.size(); ++j) {
                LaneState& L = lanes[idx[j]];
                const std::size_t i = idx[j];
                RingElement l2 = sub(mul(dbl(L.y), invs[j]), l1[i]);
                RingElement x4 = sub(sub(sqr(l2), L.x), x3[i]);
                L.y = sub(mul(l2, sub(L.x, x4)), L.y);
                L.x = std::move(x4);
            }
        }
    } catch (const NonInvertible& e) {
        out.factor = e.factor();
    }
    out.batch_counts = ctx.counts();
    return out;
}

EcmResult run_montgomery(const EcmParams& params, const mpz_class& k,
                         gmp_randclass& rng) {
    // Curve parameters are drawn up front so worker scheduling cannot
    // perturb the seeded stream.
    std::vector<MontgomeryJob> jobs(params.curves);
    mpz_class span = params.n > 9 ? mpz_class(params.n - 6) : mpz_class(2);
    for (auto& j : jobs) j.A = rng.get_z_range(span) + 3;

    std::vector<std::optional<mpz_class>> found(jobs.size());
    std::vector<OpCount> counts(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            found[i] = run_montgomery_curve(params.n, jobs[i], k, counts[i]);
            if (found[i]) stop.store(true, std::memory_order_relaxed);
        }
    };

    unsigned nthreads = std::min<unsigned>(
        params.curves, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    /* Indices are handed out in order, so every index below the lowest
     * success was fully processed: the winner is deterministic. */
    EcmResult out;
    std::size_t limit = jobs.size();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (found[i]) {
            out.factor = found[i];
            limit = i + 1;
            break;
        }
    }
    out.curves_tried = unsigned(limit);
    out.per_curve_counts.assign(counts.begin(), counts.begin() + limit);
    return out;
}

}  // namespace

EcmResult ecm_stage1(const EcmParams& params) {
    if (params.n < 4) throw std::invalid_argument("ecm requires n >= 4");
    if (params.curves < 1) throw std::invalid_argument("ecm requires curves >= 1");
    const mpz_class k = stage1_multiplier(params.b1);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(params.seed);

    if (params.engine == EcmEngine::kMontgomery)
        return run_montgomery(params, k, rng);
    if (params.curves == 1) return run_fused_single(params, k, rng);
    return run_fused_batched(params, k, rng);
}

EcmCostComparison ecm_cost_compare(double n_bits, double inv_cost,
                                   double sqr_cost, double mul_cost) {
    EcmCostComparison out;
    out.ladder_sqr = 4 * n_bits;
    out.ladder_mul = 7 * n_bits;
    out.fused_sqr = 2 * n_bits;
    out.fused_mul = n_bits;
    out.fused_div = 4 * n_bits / 3;
    const double divcost = inv_cost + mul_cost;
    out.ladder_total = out.ladder_sqr * sqr_cost + out.ladder_mul * mul_cost;
    out.fused_total = out.fused_sqr * sqr_cost + out.fused_mul * mul_cost +
                      out.fused_div * divcost;
    out.breakeven = costmodel::ecm_breakeven(inv_cost, sqr_cost, mul_cost);
    return out;
}

}  // namespace ecfuse
