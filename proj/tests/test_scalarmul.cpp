#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ecfuse/scalarmul.hpp"
#include "ecfuse/serialize.hpp"
#include "oracles.hpp"

using namespace ecfuse;

namespace {

struct Fx {
    LoadedCurve lc;
    oracle::Curve oc;
};

Fx load_f17() {
    json j = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curves_small.json");
    for (const json& e : j.at("curves"))
        if (e.at("name") == "f17_short") {
            Fx f;
            f.lc = curve_from_json(e.at("curve"));
            const CurveParams& E = *f.lc.curve;
            f.oc = {E.a1().value(), E.a2().value(), E.a3().value(),
                    E.a4().value(), E.a6().value(), E.ctx().modulus()};
            return f;
        }
    throw std::runtime_error("missing f17 fixture");
}

CurvePoint lift(RingContext& R, const oracle::Pt& P) {
    if (P.inf) return CurvePoint::infinity();
    return CurvePoint(R(P.x), R(P.y));
}

oracle::Pt drop(const CurvePoint& P) {
    if (P.is_infinity()) return {};
    return oracle::pt(P.x().value(), P.y().value());
}

}  // namespace

TEST_CASE("recode_naf on the worked values") {
    CHECK(recode_naf(29).digits == std::vector<int>{1, 0, 0, -1, 0, 1});
    CHECK(recode_naf(1).digits == std::vector<int>{1});
    for (int t : {1, 4, 9}) {
        std::vector<int> expect(t + 1, 0);
        expect[0] = 1;
        CHECK(recode_naf(mpz_class(1) << t).digits == expect);
    }
    CHECK_THROWS_AS(recode_naf(0), std::invalid_argument);
}

TEST_CASE("NAF validity: value round-trip and no adjacent nonzeros") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(2024);
    for (int i = 0; i < 500; ++i) {
        mpz_class k = rng.get_z_bits(1 + int(i % 256)) + 1;
        SignedDigits d = recode_naf(k);
        CHECK(d.value() == k);
        CHECK(d.non_adjacent());
    }
}

TEST_CASE("NAF nonzero density approaches 1/3 on random 256-bit scalars") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(99);
    double total = 0;
    const int samples = 2000;
    for (int i = 0; i < samples; ++i) {
        mpz_class k = rng.get_z_bits(256) | (mpz_class(1) << 255);
        total += recode_naf(k).nonzero_density();
    }
    CHECK(std::abs(total / samples - 1.0 / 3.0) < 0.02);
}

TEST_CASE("window digit densities: 1/2, 3/8, 15/64") {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(7);
    const int samples = 10000;
    for (auto [w, expect] : {std::pair{1, 0.5}, {2, 3.0 / 8}, {4, 15.0 / 64}}) {
        double adds = 0, bits = 0;
        for (int i = 0; i < samples; ++i) {
            mpz_class k = rng.get_z_bits(256) | (mpz_class(1) << 255);
            for (unsigned d : window_digits(k, w)) adds += (d != 0);
            bits += 256;
        }
        CAPTURE(w);
        CHECK(std::abs(adds / bits - expect) < 0.01);
    }
}

TEST_CASE("oracle equivalence: every strategy, all k <= 200, all F_17 points") {
    Fx f = load_f17();
    RingContext& R = *f.lc.ctx;
    const CurveParams& E = *f.lc.curve;
    for (const auto& op : oracle::enumerate_points(f.oc)) {
        CurvePoint P = lift(R, op);
        oracle::Pt acc{};
        for (unsigned long k = 1; k <= 200; ++k) {
            acc = oracle::ec_add(f.oc, acc, op);  // repeated addition
            for (MulMode mode : {MulMode::kStandard, MulMode::kFused}) {
                CHECK(drop(mul_window(E, k, P, 1, mode).result) == acc);
                CHECK(drop(mul_window(E, k, P, 2, mode).result) == acc);
                CHECK(drop(mul_window(E, k, P, 4, mode).result) == acc);
                CHECK(drop(mul_naf(E, k, P, mode).result) == acc);
            }
        }
    }
}

TEST_CASE("trivial scalars") {
    Fx f = load_f17();
    RingContext& R = *f.lc.ctx;
    const CurveParams& E = *f.lc.curve;
    CurvePoint P = lift(R, oracle::enumerate_points(f.oc).at(1));

    for (int w : {1, 2, 4}) {
        MulReport r = mul_window(E, 1, P, w, MulMode::kFused);
        CHECK(r.result == P);
        CHECK(r.ops == OpCount{});  // main tally excludes precomputation
    }
    MulReport r2 = mul_window(E, 2, P, 1, MulMode::kStandard);
    CHECK(r2.result == dbl(E, P));
    CHECK(r2.ops == OpCount{.mul = 1, .sqr = 2, .div = 1});

    MulReport r0 = mul_naf(E, 0, P, MulMode::kFused);
    CHECK(r0.result.is_infinity());
    CHECK(r0.ops == OpCount{});

    MulReport rneg = mul_naf(E, -5, P, MulMode::kFused);
    CHECK(drop(rneg.result) == oracle::ec_mul(f.oc, -5, oracle::pt(P.x().value(), P.y().value())));
}

TEST_CASE("mode equivalence on 1000 random scalars over F_17 and the 160-bit curve") {
    Fx f = load_f17();
    RingContext& R17 = *f.lc.ctx;
    const CurveParams& E17 = *f.lc.curve;
    CurvePoint P17 = lift(R17, oracle::enumerate_points(f.oc).at(2));
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(31337);
    for (int i = 0; i < 1000; ++i) {
        mpz_class k = rng.get_z_bits(1 + i % 48) + 1;
        MulReport a = mul_naf(E17, k, P17, MulMode::kStandard);
        MulReport b = mul_naf(E17, k, P17, MulMode::kFused);
        CHECK(a.result == b.result);
        MulReport c = mul_window(E17, k, P17, 2, MulMode::kStandard);
        MulReport d = mul_window(E17, k, P17, 2, MulMode::kFused);
        CHECK(c.result == d.result);
        CHECK(a.result == c.result);
    }

    json pj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curve_p160.json");
    LoadedCurve big = curve_from_json(pj.at("curve"));
    CurvePoint G = point_from_json(pj.at("base_point"), *big.ctx);
    REQUIRE(is_on_curve(*big.curve, G));
    for (int i = 0; i < 200; ++i) {
        mpz_class k = rng.get_z_bits(160) + 1;
        MulReport a = mul_naf(*big.curve, k, G, MulMode::kStandard);
        MulReport b = mul_naf(*big.curve, k, G, MulMode::kFused);
        CHECK(a.result == b.result);
        if (i % 4 == 0) {
            MulReport c = mul_window(*big.curve, k, G, 4, MulMode::kStandard);
            MulReport d = mul_window(*big.curve, k, G, 4, MulMode::kFused);
            CHECK(c.result == d.result);
            CHECK(a.result == c.result);
        }
    }
}

TEST_CASE("fused-mode savings: exactly one sqr and one mul per fused step") {
    json pj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curve_p160.json");
    LoadedCurve big = curve_from_json(pj.at("curve"));
    CurvePoint G = point_from_json(pj.at("base_point"), *big.ctx);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(8);
    for (int i = 0; i < 20; ++i) {
        mpz_class k = rng.get_z_bits(160) | (mpz_class(1) << 159);
        MulReport s = mul_naf(*big.curve, k, G, MulMode::kStandard);
        MulReport fz = mul_naf(*big.curve, k, G, MulMode::kFused);
        CHECK(s.result == fz.result);
        OpCount diff = s.ops - fz.ops;
        CHECK(diff.sqr == fz.fused);
        CHECK(diff.mul == fz.fused);
        CHECK(diff.div == 0);
        CHECK(s.doubles + s.additions == fz.doubles + 2 * fz.fused);
    }
}

TEST_CASE("fused NAF field-op counts near 2n sqr + n mul + 4n/3 div at n = 256") {
    json pj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curve_p160.json");
    LoadedCurve big = curve_from_json(pj.at("curve"));
    CurvePoint G = point_from_json(pj.at("base_point"), *big.ctx);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(12);
    double sqr = 0, mul = 0, dv = 0;
    const int samples = 25;
    const double n = 256;
    for (int i = 0; i < samples; ++i) {
        mpz_class k = rng.get_z_bits(256) | (mpz_class(1) << 255);
        MulReport r = mul_naf(*big.curve, k, G, MulMode::kFused);
        sqr += double(r.ops.sqr);
        mul += double(r.ops.mul);
        dv += double(r.ops.div);
    }
    CHECK(std::abs(sqr / samples - 2 * n) / (2 * n) < 0.05);
    CHECK(std::abs(mul / samples - n) / n < 0.05);
    CHECK(std::abs(dv / samples - 4 * n / 3) / (4 * n / 3) < 0.05);
}

TEST_CASE("exec_chain replays the committed 1133044 chain with exact counts") {
    json cj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/chain_1133044.json");
    std::vector<ChainStep> steps = chain_from_json(cj.at("steps"));
    const mpz_class k = parse_int(cj.at("k"));
    CHECK(k == 1133044);

    Fx f = load_f17();
    RingContext& R = *f.lc.ctx;
    const CurveParams& E = *f.lc.curve;
    for (const auto& op : oracle::enumerate_points(f.oc)) {
        if (op.inf) continue;
        CurvePoint P = lift(R, op);
        std::vector<CurvePoint> table{triple(E, P)};
        MulReport st = exec_chain(E, steps, P, table, MulMode::kStandard);
        MulReport fu = exec_chain(E, steps, P, table, MulMode::kFused);
        CHECK(drop(st.result) == oracle::ec_mul(f.oc, k, op));
        CHECK(st.result == fu.result);
    }

    // Exact field-operation totals on a generic run (160-bit curve).
    json pj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curve_p160.json");
    LoadedCurve big = curve_from_json(pj.at("curve"));
    CurvePoint G = point_from_json(pj.at("base_point"), *big.ctx);
    std::vector<CurvePoint> table{triple(*big.curve, G)};
    MulReport st = exec_chain(*big.curve, steps, G, table, MulMode::kStandard);
    CHECK(st.ops == OpCount{.mul = 23, .sqr = 41, .div = 23});
    MulReport fu = exec_chain(*big.curve, steps, G, table, MulMode::kFused);
    CHECK(fu.ops == OpCount{.mul = 19, .sqr = 37, .div = 23});
    CHECK(st.result == fu.result);

    // Savings at div = 5 multiplications.
    auto total = [](const OpCount& c, double divcost) {
        return double(c.sqr + c.mul) + divcost * double(c.div);
    };
    double savings = (total(st.ops, 5) - total(fu.ops, 5)) / total(st.ops, 5);
    CHECK(savings == doctest::Approx(0.0447).epsilon(0.003));
}

TEST_CASE("exec_chain edges") {
    Fx f = load_f17();
    RingContext& R = *f.lc.ctx;
    const CurveParams& E = *f.lc.curve;
    CurvePoint P = lift(R, oracle::enumerate_points(f.oc).at(1));

    CHECK(exec_chain(E, {}, P, {}, MulMode::kFused).result == P);

    std::vector<ChainStep> dd{{StepKind::kDouble, 0}, {StepKind::kDouble, 0}};
    CHECK(exec_chain(E, dd, P, {}, MulMode::kStandard).result ==
          dbl(E, dbl(E, P)));

    std::vector<ChainStep> bad{{StepKind::kAdd, 3}};
    CHECK_THROWS_AS(exec_chain(E, bad, P, {}, MulMode::kFused), std::out_of_range);

    // Triple / triple-add steps in both modes.
    std::vector<CurvePoint> table{P};
    std::vector<ChainStep> tta{{StepKind::kTriple, 0}, {StepKind::kTripleAdd, 1}};
    MulReport a = exec_chain(E, tta, P, table, MulMode::kStandard);
    MulReport b = exec_chain(E, tta, P, table, MulMode::kFused);
    CHECK(a.result == b.result);
    CHECK(drop(a.result) == oracle::ec_mul(f.oc, 10, drop(P)));
}

TEST_CASE("multi_mul reproduces the 29P1 + 44P2 walkthrough") {
    Fx f = load_f17();
    RingContext& R = *f.lc.ctx;
    const CurveParams& E = *f.lc.curve;
    auto pts = oracle::enumerate_points(f.oc);
    CurvePoint P1 = lift(R, pts.at(1)), P2 = lift(R, pts.at(3));

    std::vector<mpz_class> ks{29, 44};
    std::vector<CurvePoint> ps{P1, P2};
    MulReport joint = multi_mul(E, ks, ps, MulMode::kFused);
    oracle::Pt expect = oracle::ec_add(f.oc, oracle::ec_mul(f.oc, 29, pts.at(1)),
                                       oracle::ec_mul(f.oc, 44, pts.at(3)));
    CHECK(drop(joint.result) == expect);

    // One table add, four fused double-adds, one plain double: 10 elliptic ops.
    CHECK(joint.table_adds == 1);
    CHECK(joint.fused == 4);
    CHECK(joint.doubles == 1);
    CHECK(joint.additions == 0);
    CHECK(joint.elliptic_ops() == 10);

    // The left-to-right scan: T := P2; 2T+P1; 2T+(P1+P2); 2T+(P1+P2); 2T; 2T+P1.
    CHECK(joint.joint_masks == std::vector<unsigned>{2, 1, 3, 3, 0, 1});

    // Separate binary chains: 7 + 7 elliptic ops plus the final addition = 15.
    MulReport c1 = mul_window(E, 29, P1, 1, MulMode::kFused);
    MulReport c2 = mul_window(E, 44, P2, 1, MulMode::kFused);
    CHECK(c1.elliptic_ops() + c2.elliptic_ops() + 1 == 15);
}

TEST_CASE("multi_mul: t = 1 reduces to window-1; random triples match the oracle") {
    Fx f = load_f17();
    RingContext& R = *f.lc.ctx;
    const CurveParams& E = *f.lc.curve;
    auto pts = oracle::enumerate_points(f.oc);
    CurvePoint P = lift(R, pts.at(2));

    std::vector<mpz_class> k1{123};
    std::vector<CurvePoint> p1{P};
    MulReport a = multi_mul(E, k1, p1, MulMode::kFused);
    MulReport b = mul_window(E, 123, P, 1, MulMode::kFused);
    CHECK(a.result == b.result);
    CHECK(a.ops == b.ops);

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(5);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<mpz_class> ks;
        std::vector<CurvePoint> ps;
        oracle::Pt expect{};
        for (int i = 0; i < 3; ++i) {
            mpz_class k = rng.get_z_bits(16) + 1;
            const auto& op = pts.at(1 + mpz_class(rng.get_z_range(pts.size() - 1)).get_ui());
            ks.push_back(k);
            ps.push_back(lift(R, op));
            expect = oracle::ec_add(f.oc, expect, oracle::ec_mul(f.oc, k, op));
        }
        for (MulMode mode : {MulMode::kStandard, MulMode::kFused})
            CHECK(drop(multi_mul(E, ks, ps, mode).result) == expect);
    }

    std::vector<mpz_class> mismatched{1, 2};
    std::vector<CurvePoint> single{P};
    CHECK_THROWS_AS(multi_mul(E, mismatched, single, MulMode::kFused),
                    std::invalid_argument);
}

TEST_CASE("multi_mul t=3: about 7/8 of doublings are followed by an addition") {
    json pj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curve_p160.json");
    LoadedCurve big = curve_from_json(pj.at("curve"));
    const CurveParams& E = *big.curve;
    CurvePoint G = point_from_json(pj.at("base_point"), *big.ctx);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(17);
    CurvePoint P2 = random_point(E, rng), P3 = random_point(E, rng);

    double with_add = 0, total = 0;
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<mpz_class> ks{rng.get_z_bits(128) | (mpz_class(1) << 127),
                                  rng.get_z_bits(128) | (mpz_class(1) << 127),
                                  rng.get_z_bits(128) | (mpz_class(1) << 127)};
        std::vector<CurvePoint> ps{G, P2, P3};
        MulReport r = multi_mul(E, ks, ps, MulMode::kFused);
        with_add += double(r.fused);
        total += double(r.fused + r.doubles);
    }
    CHECK(std::abs(with_add / total - 7.0 / 8.0) < 0.02);
}

TEST_CASE("realized epsilon statistics from executed multiplications") {
    json pj = load_json_file(std::string(ECFUSE_FIXTURES_DIR) + "/curve_p160.json");
    LoadedCurve big = curve_from_json(pj.at("curve"));
    CurvePoint G = point_from_json(pj.at("base_point"), *big.ctx);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(23);
    double e1 = 0, e2 = 0, enaf = 0;
    const int samples = 30;
    for (int i = 0; i < samples; ++i) {
        mpz_class k = rng.get_z_bits(256) | (mpz_class(1) << 255);
        e1 += mul_window(*big.curve, k, G, 1, MulMode::kFused).realized_epsilon();
        e2 += mul_window(*big.curve, k, G, 2, MulMode::kFused).realized_epsilon();
        enaf += mul_naf(*big.curve, k, G, MulMode::kFused).realized_epsilon();
    }
    CHECK(std::abs(e1 / samples - 0.5) < 0.02);
    CHECK(std::abs(e2 / samples - 0.375) < 0.02);
    CHECK(std::abs(enaf / samples - 1.0 / 3.0) < 0.02);
}
