#include "ecfuse/pairing.hpp"

#include <stdexcept>

#include "ecfuse/scalarmul.hpp"

namespace ecfuse {

namespace {

RingElement checked_eval(const Parabola& par, const CurvePoint& T) {
    RingElement v = par.eval(T);
    if (v.is_zero())
        throw DivisorCollision("evaluation point lies on a chain line/parabola");
    return v;
}

/// Vertical through R evaluated at T; 1 when R = O.  Free of counted ops.
RingElement vertical_eval(RingContext& ctx, const CurvePoint& R,
                          const CurvePoint& T) {
    if (R.is_infinity()) return ctx(1);
    RingElement v = sub(T.x(), R.x());
    if (v.is_zero())
        throw DivisorCollision("evaluation point meets a chain vertical");
    return v;
}

/* h' = h^2 * h_c * [par(Q1) vert(Q2)] / [par(Q2) vert(Q1)], shared by the
 * doubling step (h_c omitted) and the fused double-add step.  Multiplies by
 * the vertical only for a finite result, and by h_c only when requested, so
 * degenerate branches pay fewer multiplications. */
PairingFraction squared_update(RingContext& ctx, const PairingFraction& h,
                               const PairingFraction* hc, const Parabola& par,
                               const CurvePoint& result, const CurvePoint& Q1,
                               const CurvePoint& Q2) {
    RingElement p1 = checked_eval(par, Q1);
    RingElement p2 = checked_eval(par, Q2);
    RingElement num = sqr(h.num);
    RingElement den = sqr(h.den);
    if (hc) {
        num = mul(num, hc->num);
        den = mul(den, hc->den);
    }
    num = mul(num, p1);
    den = mul(den, p2);
    if (!result.is_infinity()) {
        num = mul(num, vertical_eval(ctx, result, Q2));
        den = mul(den, vertical_eval(ctx, result, Q1));
    }
    return {std::move(num), std::move(den)};
}

/// Addition-step update h' = h * h_c * [line(Q1) vert(Q2)] / [line(Q2) vert(Q1)].
PairingFraction linear_update(RingContext& ctx, const PairingFraction& h,
                              const PairingFraction& hc, const Parabola& line,
                              const CurvePoint& result, const CurvePoint& Q1,
                              const CurvePoint& Q2) {
    RingElement l1 = checked_eval(line, Q1);
    RingElement l2 = checked_eval(line, Q2);
    RingElement num = mul(mul(h.num, hc.num), l1);
    RingElement den = mul(mul(h.den, hc.den), l2);
    if (!result.is_infinity()) {
        num = mul(num, vertical_eval(ctx, result, Q2));
        den = mul(den, vertical_eval(ctx, result, Q1));
    }
    return {std::move(num), std::move(den)};
}

/// h_{-c} entry: f_{-c} = 1/(f_c g_c), so the fraction swaps and folds g_c.
MillerEntry negated_entry(RingContext& ctx, const MillerEntry& entry,
                          const CurveParams& E, const CurvePoint& Q1,
                          const CurvePoint& Q2) {
    RingElement gc1 = vertical_eval(ctx, entry.point, Q1);
    RingElement gc2 = vertical_eval(ctx, entry.point, Q2);
    return {{mul(entry.h.den, gc2), mul(entry.h.num, gc1)},
            negate(E, entry.point),
            -entry.c};
}

}  // namespace

MillerState miller_double_step(const CurveParams& E, const MillerState& state,
                               const CurvePoint& Q1, const CurvePoint& Q2) {
    DoubleAddResult da = double_add(E, state.point, CurvePoint::infinity());
    PairingFraction h =
        squared_update(E.ctx(), state.h, nullptr, da.parabola, da.point, Q1, Q2);
    return {state.b * 2, da.point, std::move(h)};
}

MillerState miller_add_step(const CurveParams& E, const MillerState& state,
                            const MillerEntry& entry, const CurvePoint& Q1,
                            const CurvePoint& Q2) {
    AddWithLine al = add_with_line(E, state.point, entry.point);
    PairingFraction h =
        linear_update(E.ctx(), state.h, entry.h, al.line, al.point, Q1, Q2);
    return {state.b + entry.c, al.point, std::move(h)};
}

MillerState miller_double_add_step(const CurveParams& E, const MillerState& state,
                                   const MillerEntry& entry, const CurvePoint& Q1,
                                   const CurvePoint& Q2, MillerEngine engine) {
    if (engine == MillerEngine::kStandard) {
        MillerState mid = miller_double_step(E, state, Q1, Q2);
        return miller_add_step(E, mid, entry, Q1, Q2);
    }
    DoubleAddResult da = double_add(E, state.point, entry.point);
    da.parabola.prepare();
    PairingFraction h = squared_update(E.ctx(), state.h, &entry.h, da.parabola,
                                       da.point, Q1, Q2);
    return {state.b * 2 + entry.c, da.point, std::move(h)};
}

MillerState miller_sub_step(const CurveParams& E, const MillerState& state,
                            const MillerEntry& entry, const CurvePoint& Q1,
                            const CurvePoint& Q2) {
    RingContext& ctx = E.ctx();
    // g_{-b,c}: line through -bP and cP; its third zero is (b-c)P.
    AddWithLine al = add_with_line(E, negate(E, state.point), entry.point);
    CurvePoint result = negate(E, al.point);

    RingElement l1 = checked_eval(al.line, Q1);
    RingElement l2 = checked_eval(al.line, Q2);
    RingElement num = mul(state.h.num, entry.h.den);
    RingElement den = mul(state.h.den, entry.h.num);
    if (!state.point.is_infinity()) {
        num = mul(num, vertical_eval(ctx, state.point, Q1));
        den = mul(den, vertical_eval(ctx, state.point, Q2));
    }
    num = mul(num, l2);
    den = mul(den, l1);
    return {state.b - entry.c, std::move(result), {std::move(num), std::move(den)}};
}

MillerState miller_double_sub_step(const CurveParams& E, const MillerState& state,
                                   const MillerEntry& entry, const CurvePoint& Q1,
                                   const CurvePoint& Q2, MillerEngine engine) {
    if (engine == MillerEngine::kStandard) {
        MillerState mid = miller_double_step(E, state, Q1, Q2);
        return miller_sub_step(E, mid, entry, Q1, Q2);
    }
    MillerEntry negc = negated_entry(E.ctx(), entry, E, Q1, Q2);
    return miller_double_add_step(E, state, negc, Q1, Q2, engine);
}

MillerResult miller_loop(const CurveParams& E, const PairingInputs& in,
                         MillerEngine engine, MillerChain chain,
                         std::optional<PairingFraction> initial) {
    if (in.m < 1) throw std::invalid_argument("miller_loop requires m >= 1");
    if (in.Q1.is_infinity() || in.Q2.is_infinity())
        throw DivisorCollision("evaluation point at infinity");
    RingContext& ctx = E.ctx();

    std::vector<int> digits;
    if (chain == MillerChain::kNaf) {
        digits = recode_naf(in.m).digits;
    } else {
        const std::size_t n = mpz_sizeinbase(in.m.get_mpz_t(), 2);
        digits.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            digits[i] = mpz_tstbit(in.m.get_mpz_t(), n - 1 - i);
    }

    bool has_minus_digit = false;
    for (int d : digits) has_minus_digit = has_minus_digit || d == -1;

    MillerState state;
    MillerEntry plus, minus;
    {
        // Entry-table and initial-value setup is precomputation.
        CounterPause pause(ctx);
        PairingFraction h1 =
            initial ? *initial : PairingFraction{ctx(1), ctx(1)};
        state = {1, in.P, h1};
        plus = {h1, in.P, 1};
        if (has_minus_digit) minus = negated_entry(ctx, plus, E, in.Q1, in.Q2);
    }

    MillerStats stats;
    for (std::size_t i = 1; i < digits.size(); ++i) {
        switch (digits[i]) {
            case 0:
                state = miller_double_step(E, state, in.Q1, in.Q2);
                ++stats.doubles;
                break;
            case 1:
                state = miller_double_add_step(E, state, plus, in.Q1, in.Q2, engine);
                ++stats.double_adds;
                break;
            case -1:
                state = miller_double_add_step(E, state, minus, in.Q1, in.Q2, engine);
                ++stats.subs;
                break;
        }
    }
    if (state.b != in.m) throw std::logic_error("chain did not reach m");
    if (state.h.num.is_zero() || state.h.den.is_zero())
        throw DivisorCollision("degenerate accumulated fraction");
    return {std::move(state.h), std::move(state.point), stats};
}

StepTrace precompute_trace(const CurveParams& E, const CurvePoint& P,
                           const mpz_class& m, MillerEngine engine) {
    if (m < 1) throw std::invalid_argument("precompute_trace requires m >= 1");
    StepTrace trace;
    trace.base_ = P;

    auto vert_of = [](const CurvePoint& R) -> std::optional<RingElement> {
        if (R.is_infinity()) return std::nullopt;
        return R.x();
    };

    CurvePoint T = P;
    CurvePoint negP = negate(E, P);
    SignedDigits naf = recode_naf(m);
    for (std::size_t i = 1; i < naf.digits.size(); ++i) {
        const int d = naf.digits[i];
        if (d == 0) {
            DoubleAddResult da = double_add(E, T, CurvePoint::infinity());
            trace.steps_.push_back(
                {StepTrace::Kind::kDouble, false, da.parabola, vert_of(da.point),
                 da.point});
            T = da.point;
            continue;
        }
        const bool minus = d == -1;
        if (engine == MillerEngine::kParabola) {
            DoubleAddResult da = double_add(E, T, minus ? negP : P);
            da.parabola.prepare();
            trace.steps_.push_back(
                {minus ? StepTrace::Kind::kDoubleSub : StepTrace::Kind::kDoubleAdd,
                 minus, da.parabola, vert_of(da.point), da.point});
            T = da.point;
        } else {
            DoubleAddResult dd = double_add(E, T, CurvePoint::infinity());
            trace.steps_.push_back({StepTrace::Kind::kDouble, false, dd.parabola,
                                    vert_of(dd.point), dd.point});
            AddWithLine al = add_with_line(E, dd.point, minus ? negP : P);
            trace.steps_.push_back({StepTrace::Kind::kAdd, minus, al.line,
                                    vert_of(al.point), al.point});
            T = al.point;
        }
    }
    trace.final_ = T;
    return trace;
}

RingElement eval_trace(const StepTrace& trace, const CurvePoint& Q1,
                       const CurvePoint& Q2, std::vector<OpCount>* per_step) {
    RingContext& ctx = trace.ctx();
    if (Q1.is_infinity() || Q2.is_infinity())
        throw DivisorCollision("evaluation point at infinity");

    RingElement one = ctx(1);
    // (+1)-entry value is f_1 = 1; the (-1)-entry is the pair of base
    // verticals, free to evaluate and needed only for minus steps.
    RingElement em_num = one, em_den = one;
    for (const StepTrace::Step& st : trace.steps())
        if (st.minus) {
            em_num = vertical_eval(ctx, trace.base(), Q2);
            em_den = vertical_eval(ctx, trace.base(), Q1);
            break;
        }

    PairingFraction h{one, one};
    for (const StepTrace::Step& st : trace.steps()) {
        const OpCount before = ctx.counts();
        RingElement p1 = checked_eval(st.par, Q1);
        RingElement p2 = checked_eval(st.par, Q2);
        RingElement num, den;
        if (st.kind == StepTrace::Kind::kAdd) {
            num = mul(h.num, st.minus ? em_num : one);
            den = mul(h.den, st.minus ? em_den : one);
        } else {
            num = sqr(h.num);
            den = sqr(h.den);
            if (st.kind != StepTrace::Kind::kDouble) {
                num = mul(num, st.minus ? em_num : one);
                den = mul(den, st.minus ? em_den : one);
            }
        }
        num = mul(num, p1);
        den = mul(den, p2);
        if (st.vertical_x) {
            RingElement v1 = sub(Q1.x(), *st.vertical_x);
            RingElement v2 = sub(Q2.x(), *st.vertical_x);
            if (v1.is_zero() || v2.is_zero())
                throw DivisorCollision("evaluation point meets a chain vertical");
            num = mul(num, v2);
            den = mul(den, v1);
        }
        h = {std::move(num), std::move(den)};
        if (per_step) per_step->push_back(ctx.counts() - before);
    }
    return div(h.num, h.den);
}

namespace {

/// Torsion check with uncounted arithmetic.
bool annihilates(const CurveParams& E, const mpz_class& m, const CurvePoint& P) {
    CounterPause pause(E.ctx());
    if (m < 1) return false;
    CurvePoint T;
    const std::size_t n = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (std::size_t i = n; i-- > 0;) {
        T = dbl(E, T);
        if (mpz_tstbit(m.get_mpz_t(), i)) T = add(E, T, P);
    }
    return T.is_infinity();
}

}  // namespace

RingElement tate_pairing(const CurveParams& E, const CurvePoint& P,
                         const CurvePoint& Q, const mpz_class& m,
                         MillerEngine engine, unsigned long seed, bool reduce,
                         MillerChain chain, MillerStats* stats,
                         unsigned max_retries) {
    RingContext& ctx = E.ctx();
    if (!annihilates(E, m, P))
        throw TorsionError("P is not annihilated by m");
    if (!is_on_curve(E, Q)) throw TorsionError("Q is not on the curve");

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        CurvePoint S, Q1;
        {
            CounterPause pause(ctx);
            S = random_point(E, rng);
            Q1 = add(E, Q, S);
        }
        if (Q1.is_infinity() || S.is_infinity() || Q1 == S) continue;
        try {
            MillerResult r =
                miller_loop(E, {m, P, Q1, S}, engine, chain, std::nullopt);
            if (stats) *stats = r.stats;
            RingElement h = div(r.h.num, r.h.den);
            if (!reduce) return h;
            const mpz_class& p = ctx.modulus();
            if ((p - 1) % m != 0)
                throw TorsionError("reduction requires m | p-1");
            return pow_raw(h, (p - 1) / m);
        } catch (const DivisorCollision&) {
            continue;
        }
    }
    throw RetriesExhausted("tate pairing: retries exhausted");
}

RingElement weil_pairing(const CurveParams& E, const CurvePoint& P,
                         const CurvePoint& Q, const mpz_class& m,
                         MillerEngine engine, unsigned long seed,
                         MillerChain chain, MillerStats* stats,
                         unsigned max_retries) {
    RingContext& ctx = E.ctx();
    if (!annihilates(E, m, P))
        throw TorsionError("P is not annihilated by m");
    if (!annihilates(E, m, Q))
        throw TorsionError("Q is not annihilated by m");

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    for (unsigned attempt = 0; attempt < max_retries; ++attempt) {
        try {
            CurvePoint R1, R2, PR1, QR2;
            PairingFraction initP, initQ;
            {
                /* Divisor-shifted setup: f_{1,P} = g_{P+R1}/g_{P,R1} makes
                 * div(f_{m,P}) = m(P+R1) - m(R1), so the ratio of the two
                 * shifted evaluations is the exact Weil pairing. */
                CounterPause pause(ctx);
                R1 = random_point(E, rng);
                R2 = random_point(E, rng);
                AddWithLine aP = add_with_line(E, P, R1);
                AddWithLine aQ = add_with_line(E, Q, R2);
                PR1 = aP.point;
                QR2 = aQ.point;
                if (PR1.is_infinity() || QR2.is_infinity()) continue;
                // f_{1,P} evaluated at the A_Q divisor points (Q+R2, R2).
                // Collisions must surface before any fraction is assembled.
                RingElement vP1 = vertical_eval(ctx, PR1, QR2);
                RingElement vP2 = vertical_eval(ctx, PR1, R2);
                RingElement lP1 = checked_eval(aP.line, QR2);
                RingElement lP2 = checked_eval(aP.line, R2);
                RingElement vQ1 = vertical_eval(ctx, QR2, PR1);
                RingElement vQ2 = vertical_eval(ctx, QR2, R1);
                RingElement lQ1 = checked_eval(aQ.line, PR1);
                RingElement lQ2 = checked_eval(aQ.line, R1);
                initP = {mul(vP1, lP2), mul(lP1, vP2)};
                initQ = {mul(vQ1, lQ2), mul(lQ1, vQ2)};
            }
            MillerResult rP = miller_loop(E, {m, P, QR2, R2}, engine, chain, initP);
            MillerResult rQ = miller_loop(E, {m, Q, PR1, R1}, engine, chain, initQ);
            if (stats) {
                *stats = rP.stats;
                stats->doubles += rQ.stats.doubles;
                stats->double_adds += rQ.stats.double_adds;
                stats->subs += rQ.stats.subs;
            }
            return div(mul(rP.h.num, rQ.h.den), mul(rP.h.den, rQ.h.num));
        } catch (const DivisorCollision&) {
            continue;
        }
    }
    throw RetriesExhausted("weil pairing: retries exhausted");
}

}  // namespace ecfuse
