#include "ecfuse/selftest.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include <gmpxx.h>

#include "ecfuse/costmodel.hpp"
#include "ecfuse/curve.hpp"
#include "ecfuse/ecm.hpp"
#include "ecfuse/pairing.hpp"
#include "ecfuse/scalarmul.hpp"
#include "ecfuse/serialize.hpp"

namespace ecfuse::selftest {

namespace {

/* Reference chord-and-tangent addition on raw integers, used to cross-check
 * the production group law from an independent code path. */
struct RefPoint {
    bool inf = true;
    mpz_class x, y;
    friend bool operator==(const RefPoint&, const RefPoint&) = default;
};

struct RefCurve {
    mpz_class a1, a2, a3, a4, a6, n;
};

mpz_class rmod(const mpz_class& a, const mpz_class& n) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    return r;
}

mpz_class rinv(const mpz_class& a, const mpz_class& n) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t()) == 0)
        throw std::domain_error("reference: non-invertible");
    return r;
}

RefPoint ref_neg(const RefCurve& E, const RefPoint& P) {
    if (P.inf) return P;
    return {false, P.x, rmod(-E.a1 * P.x - E.a3 - P.y, E.n)};
}

RefPoint ref_add(const RefCurve& E, const RefPoint& P, const RefPoint& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    mpz_class lam;
    if (P.x == Q.x) {
        if (rmod(P.y + Q.y + E.a1 * Q.x + E.a3, E.n) == 0) return {};
        lam = rmod((3 * P.x * P.x + 2 * E.a2 * P.x + E.a4 - E.a1 * P.y) *
                       rinv(rmod(2 * P.y + E.a1 * P.x + E.a3, E.n), E.n),
                   E.n);
    } else {
        lam = rmod((Q.y - P.y) * rinv(rmod(Q.x - P.x, E.n), E.n), E.n);
    }
    mpz_class x3 = rmod(lam * lam + E.a1 * lam - E.a2 - P.x - Q.x, E.n);
    mpz_class y3 = rmod(lam * (P.x - x3) - E.a1 * x3 - E.a3 - P.y, E.n);
    return {false, x3, y3};
}

std::vector<RefPoint> ref_points(const RefCurve& E) {
    std::vector<RefPoint> out;
    out.push_back({});
    for (mpz_class x = 0; x < E.n; ++x)
        for (mpz_class y = 0; y < E.n; ++y) {
            mpz_class lhs = y * y + E.a1 * x * y + E.a3 * y;
            mpz_class rhs = x * x * x + E.a2 * x * x + E.a4 * x + E.a6;
            if (rmod(lhs - rhs, E.n) == 0) out.push_back({false, x, y});
        }
    return out;
}

RefCurve ref_of(const CurveParams& E) {
    return {E.a1().value(), E.a2().value(), E.a3().value(),
            E.a4().value(), E.a6().value(), E.ctx().modulus()};
}

CurvePoint lift(RingContext& R, const RefPoint& P) {
    if (P.inf) return CurvePoint::infinity();
    return CurvePoint(R(P.x), R(P.y));
}

RefPoint drop(const CurvePoint& P) {
    if (P.is_infinity()) return {};
    return {false, P.x().value(), P.y().value()};
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& p) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

struct Runner {
    std::string dir;
    std::vector<CriterionResult> results;

    json fixture(const std::string& name) { return load_json_file(dir + "/" + name); }

    void run(int id, const std::string& name, auto&& body,
             double time_limit_s = 0) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            r.detail = body();
            r.passed = true;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (r.passed && time_limit_s > 0 && secs > time_limit_s) {
            r.passed = false;
            r.detail = "exceeded time limit: " + fmt(secs) + " s > " +
                       fmt(time_limit_s) + " s";
        }
        results.push_back(std::move(r));
    }
};

// ---------------------------------------------------------------- criteria

std::string c1_table_exactness(Runner& rn) {
    json j = rn.fixture("curve_p160.json");
    LoadedCurve lc = curve_from_json(j.at("curve"));
    const CurveParams& E = *lc.curve;
    RingContext& R = *lc.ctx;
    CurvePoint P = point_from_json(j.at("base_point"), R);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(1001);
    CurvePoint Q = random_point(E, rng);

    auto delta = [&](auto&& fn) {
        const OpCount before = R.counts();
        fn();
        return R.counts() - before;
    };
    auto expect = [&](const char* what, OpCount got, OpCount want) {
        require(got == want, std::string(what) + " counter delta mismatch");
    };
    expect("double", delta([&] { dbl(E, P); }), {.mul = 1, .sqr = 2, .div = 1});
    expect("add", delta([&] { add(E, P, Q); }), {.mul = 1, .sqr = 1, .div = 1});
    expect("double_add", delta([&] {
               require(double_add(E, P, Q).branch == DoubleAddBranch::kGeneric,
                       "double_add branch not generic");
           }),
           {.mul = 1, .sqr = 2, .div = 2});
    expect("triple", delta([&] { triple(E, P); }), {.mul = 1, .sqr = 3, .div = 2});
    expect("triple_add", delta([&] { triple_add(E, P, Q); }),
           {.mul = 1, .sqr = 3, .div = 3});
    return "double 2s1m1d, add 1s1m1d, double-add 2s1m2d, triple 3s1m2d, "
           "triple-add 3s1m3d";
}

std::string c2_chain_replay(Runner& rn) {
    json cj = rn.fixture("chain_1133044.json");
    json pj = rn.fixture("curve_p160.json");
    LoadedCurve lc = curve_from_json(pj.at("curve"));
    const CurveParams& E = *lc.curve;
    CurvePoint P = point_from_json(pj.at("base_point"), *lc.ctx);

    require(parse_int(cj.at("k")) == 1133044, "chain fixture k mismatch");
    std::vector<ChainStep> steps = chain_from_json(cj.at("steps"));
    std::vector<CurvePoint> table{triple(E, P)};

    MulReport st = exec_chain(E, steps, P, table, MulMode::kStandard);
    MulReport fu = exec_chain(E, steps, P, table, MulMode::kFused);
    require(st.ops == OpCount{.mul = 23, .sqr = 41, .div = 23},
            "standard counts are not 23 div + 41 s + 23 m");
    require(fu.ops == OpCount{.mul = 19, .sqr = 37, .div = 23},
            "fused counts are not 23 div + 37 s + 19 m");
    require(st.result == fu.result, "modes disagree on the point");
    require(st.result == mul_naf(E, 1133044, P, MulMode::kFused).result,
            "chain result is not 1133044 P");

    auto total = [](const OpCount& c, double d) {
        return double(c.sqr + c.mul) + d * double(c.div);
    };
    double savings = (total(st.ops, 5) - total(fu.ops, 5)) / total(st.ops, 5);
    require(std::abs(savings - 0.0447) < 0.0001,
            "savings at div=5 is " + fmt(savings) + ", not 4.47%");
    return "23div+41s+23m vs 23div+37s+19m, savings " + fmt(100 * savings) + "%";
}

std::string c3_savings_formula(Runner&) {
    struct Row {
        double eps, alpha, want;
    };
    for (const Row& r : {Row{0.5, 4.18, 0.085}, Row{0.5, 6.23, 0.067},
                         Row{3.0 / 8, 4.18, 0.069}, Row{3.0 / 8, 6.23, 0.055},
                         Row{1.0 / 3, 4.18, 0.063}}) {
        double got = costmodel::scalar_savings(r.eps, r.alpha);
        require(std::abs(got - r.want) < 0.0005,
                "savings(" + fmt(r.eps) + ", " + fmt(r.alpha) + ") = " + fmt(got) +
                    ", want " + fmt(r.want));
    }
    return "8.5% / 6.7% / 6.9% / 5.5% / 6.3% within 0.05pp";
}

std::string c4_measured_vs_model(Runner& rn) {
    json pj = rn.fixture("curve_p160.json");
    LoadedCurve lc = curve_from_json(pj.at("curve"));
    const CurveParams& E = *lc.curve;
    CurvePoint G = point_from_json(pj.at("base_point"), *lc.ctx);

    const double n = 160, alpha = 4.18, divcost = alpha + 1;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(44);
    double cs = 0, cf = 0;
    for (int i = 0; i < 100; ++i) {
        mpz_class k = rng.get_z_bits(160) | (mpz_class(1) << 159);
        MulReport s = mul_naf(E, k, G, MulMode::kStandard);
        MulReport fz = mul_naf(E, k, G, MulMode::kFused);
        require(s.result == fz.result, "mode mismatch");
        cs += double(s.ops.sqr + s.ops.mul) + divcost * double(s.ops.div);
        cf += double(fz.ops.sqr + fz.ops.mul) + divcost * double(fz.ops.div);
    }
    cs /= 100;
    cf /= 100;
    const double model_std = (4 + alpha) * n + (3 + alpha) * n / 3;
    const double model_fused = (4 + alpha) * n + (1 + alpha) * n / 3;
    require(std::abs(cs - model_std) / model_std < 0.03,
            "standard cost " + fmt(cs) + " vs model " + fmt(model_std));
    require(std::abs(cf - model_fused) / model_fused < 0.03,
            "fused cost " + fmt(cf) + " vs model " + fmt(model_fused));
    double savings = (cs - cf) / cs;
    require(savings >= 0.060 && savings <= 0.066,
            "measured savings " + fmt(100 * savings) + "% outside [6.0, 6.6]");
    return "std " + fmt(cs) + " (model " + fmt(model_std) + "), fused " + fmt(cf) +
           " (model " + fmt(model_fused) + "), savings " + fmt(100 * savings) + "%";
}

std::string c5_pairing_step_costs(Runner& rn) {
    json pj = rn.fixture("curve_p160.json");
    LoadedCurve lc = curve_from_json(pj.at("curve"));
    const CurveParams& E = *lc.curve;
    RingContext& R = *lc.ctx;
    CurvePoint G = point_from_json(pj.at("base_point"), R);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(55);
    CurvePoint Q1 = random_point(E, rng), Q2 = random_point(E, rng);
    CurvePoint B = random_point(E, rng);
    MillerState st{9, B, {R(rng.get_z_range(R.modulus() - 1) + 1),
                          R(rng.get_z_range(R.modulus() - 1) + 1)}};
    MillerEntry entry{{R(1), R(1)}, G, 1};

    auto delta = [&](auto&& fn) {
        const OpCount before = R.counts();
        fn();
        return R.counts() - before;
    };
    OpCount d = delta([&] { miller_double_step(E, st, Q1, Q2); });
    require(d.mul_like() == 11 && d.div == 1, "double step is not 11 + 1 div");
    d = delta([&] {
        miller_double_add_step(E, st, entry, Q1, Q2, MillerEngine::kParabola);
    });
    require(d.mul_like() == 16 && d.div == 2, "fused double-add is not 16 + 2 div");
    d = delta([&] {
        miller_double_add_step(E, st, entry, Q1, Q2, MillerEngine::kStandard);
    });
    require(d.mul_like() == 21 && d.div == 2,
            "standard double-add is not 21 + 2 div");

    // Trace steps: 8 per line step, 12 per parabola double-add step.
    mpz_class m = (mpz_class(1) << 40) | 0x5a5a5;
    for (auto engine : {MillerEngine::kStandard, MillerEngine::kParabola}) {
        StepTrace trace = precompute_trace(E, G, m, engine);
        std::vector<OpCount> per_step;
        eval_trace(trace, Q1, Q2, &per_step);
        for (std::size_t i = 0; i < per_step.size(); ++i) {
            const auto& step = trace.steps()[i];
            if (!step.vertical_x) continue;  // degenerate terminal step
            const bool line_step = step.kind == StepTrace::Kind::kDouble ||
                                   step.kind == StepTrace::Kind::kAdd;
            require(per_step[i].div == 0, "trace step divided");
            require(per_step[i].mul_like() == (line_step ? 8u : 12u),
                    "trace step cost mismatch");
        }
    }
    return "11+1d / 16+2d / 21+2d live, 8 / 12 traced";
}

std::string c6_pairing_totals(Runner& rn) {
    json pj = rn.fixture("curve_p160.json");
    LoadedCurve lc = curve_from_json(pj.at("curve"));
    const CurveParams& E = *lc.curve;
    RingContext& R = *lc.ctx;
    CurvePoint G = point_from_json(pj.at("base_point"), R);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(66);
    CurvePoint Q1 = random_point(E, rng), Q2 = random_point(E, rng);

    const double n = 160, divcost = 5.18;
    const int samples = 40;
    double std_total = 0, par_total = 0, ts_total = 0, tp_total = 0;
    for (int i = 0; i < samples; ++i) {
        mpz_class m = rng.get_z_bits(160) | (mpz_class(1) << 159);
        PairingInputs in{m, G, Q1, Q2};
        R.reset_counts();
        miller_loop(E, in, MillerEngine::kStandard, MillerChain::kNaf);
        std_total += double(R.counts().mul_like()) + divcost * double(R.counts().div);
        R.reset_counts();
        miller_loop(E, in, MillerEngine::kParabola, MillerChain::kNaf);
        par_total += double(R.counts().mul_like()) + divcost * double(R.counts().div);

        StepTrace t1 = precompute_trace(E, G, m, MillerEngine::kStandard);
        StepTrace t2 = precompute_trace(E, G, m, MillerEngine::kParabola);
        R.reset_counts();
        eval_trace(t1, Q1, Q2);
        ts_total += double(R.counts().mul_like());
        R.reset_counts();
        eval_trace(t2, Q1, Q2);
        tp_total += double(R.counts().mul_like());
    }
    std_total /= samples;
    par_total /= samples;
    ts_total /= samples;
    tp_total /= samples;

    require(std::abs(std_total - 21.24 * n) / (21.24 * n) < 0.02,
            "standard total " + fmt(std_total) + " vs 21.24n");
    require(std::abs(par_total - 19.57 * n) / (19.57 * n) < 0.02,
            "parabola total " + fmt(par_total) + " vs 19.57n");
    double imp = (std_total - par_total) / std_total;
    require(imp >= 0.073 && imp <= 0.083,
            "improvement " + fmt(100 * imp) + "% outside [7.3, 8.3]");

    require(std::abs(ts_total - 32 * n / 3) / (32 * n / 3) < 0.02,
            "trace line total " + fmt(ts_total) + " vs 32n/3");
    require(std::abs(tp_total - 28 * n / 3) / (28 * n / 3) < 0.02,
            "trace parabola total " + fmt(tp_total) + " vs 28n/3");
    double timp = (ts_total - tp_total) / ts_total;
    require(std::abs(timp - 0.125) < 0.005,
            "trace improvement " + fmt(100 * timp) + "% not 12.5 +- 0.5");
    return "live " + fmt(std_total / n) + "n / " + fmt(par_total / n) + "n (" +
           fmt(100 * imp) + "%), trace " + fmt(ts_total / n) + "n / " +
           fmt(tp_total / n) + "n (" + fmt(100 * timp) + "%)";
}

std::string c7_pairing_properties(Runner& rn) {
    json j = rn.fixture("pairing_ed1.json");
    LoadedCurve lc = curve_from_json(j.at("curve"));
    const CurveParams& E = *lc.curve;
    RingContext& R = *lc.ctx;
    const mpz_class p = R.modulus();
    const mpz_class m = parse_int(j.at("m"));
    CurvePoint P = point_from_json(j.at("p_point"), R);
    CurvePoint Q = point_from_json(j.at("q_point"), R);

    auto smul = [&](const mpz_class& k, const CurvePoint& T) {
        CounterPause pause(R);
        return mul_naf(E, k, T, MulMode::kStandard).result;
    };

    RingElement t = tate_pairing(E, P, Q, m, MillerEngine::kParabola, 3, true);
    require(tate_pairing(E, P, Q, m, MillerEngine::kStandard, 3, true) == t,
            "tate engines disagree");
    require(powm(t.value(), m, p) == 1, "tate value not in mu_m");

    // Trace engine agrees with the live engines for the same randomization.
    {
        gmp_randclass rng(gmp_randinit_default);
        rng.seed(3);
        CurvePoint S, Q1;
        {
            CounterPause pause(R);
            S = random_point(E, rng);
            Q1 = add(E, Q, S);
        }
        StepTrace trace = precompute_trace(E, P, m, MillerEngine::kParabola);
        RingElement traced = eval_trace(trace, Q1, S);
        RingElement reduced = pow_raw(traced, (p - 1) / m);
        require(reduced == t, "trace engine disagrees with live engines");
    }

    for (mpz_class a = 1; a < m; ++a) {
        RingElement ta =
            tate_pairing(E, smul(a, P), Q, m, MillerEngine::kParabola, 3, true);
        require(ta.value() == powm(t.value(), a, p), "t(aP,Q) != t(P,Q)^a");
        RingElement tb =
            tate_pairing(E, P, smul(a, Q), m, MillerEngine::kStandard, 3, true);
        require(tb.value() == powm(t.value(), a, p), "t(P,bQ) != t(P,Q)^b");
        require(powm(ta.value(), m, p) == 1, "z^m != 1");
    }

    RingElement e = weil_pairing(E, P, Q, m, MillerEngine::kParabola, 2);
    require(weil_pairing(E, P, Q, m, MillerEngine::kStandard, 2) == e,
            "weil engines disagree");
    require(weil_pairing(E, P, P, m, MillerEngine::kParabola, 2).value() == 1,
            "e(P,P) != 1");
    require(powm(e.value(), m, p) == 1, "weil value not in mu_m");
    for (mpz_class a = 1; a < m; ++a)
        for (mpz_class b = 1; b < m; ++b) {
            RingElement eab = weil_pairing(E, smul(a, P), smul(b, Q), m,
                                           MillerEngine::kParabola, 4);
            require(eab.value() == powm(e.value(), a * b, p),
                    "e(aP,bQ) != e(P,Q)^{ab}");
        }
    return "m = " + m.get_str() +
           ": bilinearity grids, mu_m membership, three engines equal";
}

std::string c8_group_law_oracle(Runner& rn) {
    json j = rn.fixture("curves_small.json");
    std::set<DoubleAddBranch> seen;
    std::size_t curves = 0, general = 0;
    for (const json& e : j.at("curves")) {
        LoadedCurve lc = curve_from_json(e.at("curve"));
        const CurveParams& E = *lc.curve;
        RingContext& R = *lc.ctx;
        RefCurve rc = ref_of(E);
        if (rc.a1 == 1 && rc.a3 != 0) ++general;
        ++curves;
        auto pts = ref_points(rc);
        for (const RefPoint& rp : pts)
            for (const RefPoint& rq : pts) {
                CurvePoint P = lift(R, rp), Q = lift(R, rq);
                DoubleAddResult r = double_add(E, P, Q);
                seen.insert(r.branch);
                RefPoint want = ref_add(rc, ref_add(rc, rp, rq), rp);
                require(drop(r.point) == want, "fused 2P+Q disagrees with oracle");
                require(r.point == add(E, dbl(E, P), Q),
                        "standard 2P+Q route disagrees");
                require(drop(double_sub(E, P, Q).point) ==
                            ref_add(rc, ref_add(rc, rp, ref_neg(rc, rq)), rp),
                        "fused 2P-Q disagrees with oracle");
            }
    }
    require(curves >= 3, "fewer than 3 fixture curves");
    require(general >= 1, "no a1=1, a3!=0 fixture");
    require(seen.size() == 7, "not every double-add branch fired");
    return std::to_string(curves) + " curves exhausted, all 7 branches hit";
}

std::string c9_ecm(Runner& rn) {
    for (EcmEngine engine : {EcmEngine::kMontgomery, EcmEngine::kWeierstrassFused}) {
        EcmParams params{.n = 91, .b1 = 5, .seed = 2, .curves = 8, .engine = engine};
        EcmResult r = ecm_stage1(params);
        require(r.factor.has_value(), "91 not factored");
        require(91 % *r.factor == 0 && *r.factor > 1 && *r.factor < 91,
                "bad factor of 91");
    }

    json j = rn.fixture("ecm_semiprime40.json");
    EcmParams params{.n = parse_int(j.at("n")),
                     .b1 = j.at("b1").get<unsigned long>(),
                     .seed = j.at("seed").get<unsigned long>(),
                     .curves = j.at("curves").get<unsigned>()};
    const mpz_class p = parse_int(j.at("p")), q = parse_int(j.at("q"));
    require(p * q == params.n, "fixture is not the stated semiprime");

    const double n =
        double(mpz_sizeinbase(stage1_multiplier(params.b1).get_mpz_t(), 2));
    std::string found;
    for (EcmEngine engine : {EcmEngine::kMontgomery, EcmEngine::kWeierstrassFused}) {
        params.engine = engine;
        EcmResult r = ecm_stage1(params);
        require(r.factor.has_value(), "semiprime not factored");
        require(*r.factor == p || *r.factor == q, "factor is not p or q");
        found += (found.empty() ? "" : " / ") + to_hex(*r.factor);
        if (engine == EcmEngine::kMontgomery)
            for (const auto& c : r.per_curve_counts) {
                require(std::abs(double(c.sqr) - 4 * n) <= 4,
                        "ladder squarings outside 4n +- 4");
                require(std::abs(double(c.mul) - 7 * n) <= 7,
                        "ladder multiplications outside 7n +- 7");
            }
    }
    return "91 and " + to_hex(params.n) + " factored by both engines (" + found +
           "), ladder within (4n+-4, 7n+-7)";
}

std::string c10_parabola_identity(Runner& rn) {
    json pj = rn.fixture("curve_p160.json");
    LoadedCurve lc = curve_from_json(pj.at("curve"));
    const CurveParams& E = *lc.curve;
    RingContext& R = *lc.ctx;
    const mpz_class p = R.modulus();
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(110);

    int done = 0;
    while (done < 1000) {
        CurvePoint P = random_point(E, rng);
        CurvePoint Q = random_point(E, rng);
        CurvePoint T = random_point(E, rng);
        if (P.x() == Q.x()) continue;
        DoubleAddResult r = double_add(E, P, Q);
        if (r.branch != DoubleAddBranch::kGeneric) continue;
        r.parabola.prepare();

        // Reference lines from an independent full addition.
        RefCurve rc = ref_of(E);
        RefPoint rp = drop(P), rq = drop(Q), rt = drop(T);
        RefPoint sum = ref_add(rc, rp, rq);
        if (rt.x == sum.x) continue;
        mpz_class l1 = rmod((rq.y - rp.y) * rinv(rmod(rq.x - rp.x, p), p), p);
        mpz_class l2 = rmod((sum.y - rp.y) * rinv(rmod(sum.x - rp.x, p), p), p);
        mpz_class g1 = rmod(rt.y - rp.y - l1 * (rt.x - rp.x), p);
        mpz_class g2 = rmod(rt.y - rp.y - l2 * (rt.x - rp.x), p);
        mpz_class expect = rmod(g1 * g2 * rinv(rmod(rt.x - sum.x, p), p), p);
        require(eval_parabola(r.parabola, T).value() == expect,
                "parabola != line-product quotient");
        ++done;
    }
    return "1000 random (P,Q,T) triples, exact equality";
}

}  // namespace

std::vector<CriterionResult> run_all(const std::string& fixtures_dir) {
    Runner rn{fixtures_dir, {}};
    rn.run(1, "cost-table exactness (160-bit curve)",
           [&] { return c1_table_exactness(rn); }, 1.0);
    rn.run(2, "1133044P chain replay", [&] { return c2_chain_replay(rn); });
    rn.run(3, "savings formula values", [&] { return c3_savings_formula(rn); });
    rn.run(4, "measured vs model scalar multiplication",
           [&] { return c4_measured_vs_model(rn); }, 30.0);
    rn.run(5, "pairing step costs", [&] { return c5_pairing_step_costs(rn); });
    rn.run(6, "pairing totals vs model", [&] { return c6_pairing_totals(rn); });
    rn.run(7, "pairing correctness properties",
           [&] { return c7_pairing_properties(rn); }, 60.0);
    rn.run(8, "group-law oracle equivalence",
           [&] { return c8_group_law_oracle(rn); }, 10.0);
    rn.run(9, "ecm stage 1", [&] { return c9_ecm(rn); }, 5.0);
    rn.run(10, "parabola identity", [&] { return c10_parabola_identity(rn); });
    return rn.results;
}

}  // namespace ecfuse::selftest
