#include "ecfuse/curve.hpp"

namespace ecfuse {

namespace {

/* x-coordinate of the next chord/tangent intersection:
 * l*(l + a1) - a2 - rest, where rest is the sum of the two known x's.
 * Uses a squaring when a1 = 0 so short-form tallies match the cost table. */
RingElement slope_x_step(const CurveParams& E, const RingElement& l,
                         const RingElement& rest) {
    RingElement ll = E.a1_is_zero() ? sqr(l) : mul(l, add(l, E.a1()));
    return sub(sub(ll, E.a2()), rest);
}

/// y = l*(x1 - xr) - a1*xr - a3 - y1 for the new point (xr, y).
RingElement slope_y_step(const CurveParams& E, const RingElement& l,
                         const RingElement& x1, const RingElement& y1,
                         const RingElement& xr) {
    RingElement t = mul(l, sub(x1, xr));
    return sub(sub(sub(t, mul_coeff(xr, E.a1())), E.a3()), y1);
}

/// 2y1 + a1*x1 + a3, the tangent-slope denominator; free of counted ops.
RingElement tangent_denominator(const CurveParams& E, const CurvePoint& P) {
    return add(add(dbl(P.y()), mul_coeff(P.x(), E.a1())), E.a3());
}

/* lambda2 = (a1*x3 + a3 + 2y1)/(x1 - x3) - lambda1: the slope through P and
 * P+Q obtained without ever computing y3. */
RingElement second_slope(const CurveParams& E, const RingElement& x1,
                         const RingElement& y1, const RingElement& x3,
                         const RingElement& lambda1) {
    RingElement num = add(add(mul_coeff(x3, E.a1()), E.a3()), dbl(y1));
    return sub(div(num, sub(x1, x3)), lambda1);
}

}  // namespace

CurveParams::CurveParams(RingElement a1, RingElement a2, RingElement a3,
                         RingElement a4, RingElement a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)),
      a4_(std::move(a4)), a6_(std::move(a6)) {
    short_form_ = a1_.is_zero() && a2_.is_zero() && a3_.is_zero();

    CounterPause pause(ctx());
    RingElement b2 = add(sqr(a1_), dbl(dbl(a2_)));
    RingElement b4 = add(dbl(a4_), mul(a1_, a3_));
    RingElement b6 = add(sqr(a3_), dbl(dbl(a6_)));
    RingElement b8 = add(sub(add(mul(sqr(a1_), a6_), dbl(dbl(mul(a2_, a6_)))),
                             mul(mul(a1_, a3_), a4_)),
                         sub(mul(a2_, sqr(a3_)), sqr(a4_)));
    RingElement d = add(sub(sub(neg(mul(sqr(b2), b8)),
                                mul(ctx()(8), mul(sqr(b4), b4))),
                            mul(ctx()(27), sqr(b6))),
                        mul(ctx()(9), mul(b2, mul(b4, b6))));
    if (d.is_zero()) throw SingularCurve("singular curve: discriminant is zero");
    discriminant_ = d;
}

bool is_on_curve(const CurveParams& E, const CurvePoint& P) {
    if (P.is_infinity()) return true;
    CounterPause pause(E.ctx());
    const RingElement& x = P.x();
    const RingElement& y = P.y();
    RingElement lhs = add(sqr(y), mul(add(mul_coeff(x, E.a1()), E.a3()), y));
    RingElement xx = sqr(x);
    RingElement rhs =
        add(add(add(mul(xx, x), mul(E.a2(), xx)), mul(E.a4(), x)), E.a6());
    return lhs == rhs;
}

CurvePoint negate(const CurveParams& E, const CurvePoint& P) {
    if (P.is_infinity()) return P;
    return CurvePoint(P.x(), neg(add(add(mul_coeff(P.x(), E.a1()), E.a3()), P.y())));
}

std::optional<RingElement> tangent_slope(const CurveParams& E, const CurvePoint& P) {
    RingElement den = tangent_denominator(E, P);
    if (den.is_zero()) return std::nullopt;
    RingElement num = sub(add(add(tpl(sqr(P.x())), dbl(mul_coeff(P.x(), E.a2()))),
                              E.a4()),
                          mul_coeff(P.y(), E.a1()));
    return div(num, den);
}

CurvePoint dbl(const CurveParams& E, const CurvePoint& P) {
    if (P.is_infinity()) return P;
    auto l = tangent_slope(E, P);
    if (!l) return CurvePoint::infinity();
    RingElement x3 = slope_x_step(E, *l, dbl(P.x()));
    RingElement y3 = slope_y_step(E, *l, P.x(), P.y(), x3);
    return CurvePoint(std::move(x3), std::move(y3));
}

CurvePoint add(const CurveParams& E, const CurvePoint& P, const CurvePoint& Q) {
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    if (P.x() == Q.x()) {
        if (P.y() == Q.y()) return dbl(E, P);
        return CurvePoint::infinity();  // distinct y at equal x: negatives
    }
    RingElement l = div(sub(Q.y(), P.y()), sub(Q.x(), P.x()));
    RingElement x3 = slope_x_step(E, l, add(P.x(), Q.x()));
    RingElement y3 = slope_y_step(E, l, P.x(), P.y(), x3);
    return CurvePoint(std::move(x3), std::move(y3));
}

DoubleAddResult double_add(const CurveParams& E, const CurvePoint& P,
                           const CurvePoint& Q) {
    RingContext& R = E.ctx();

    if (P.is_infinity()) {
        if (Q.is_infinity())
            return {Q, Parabola::one(R), {}, DoubleAddBranch::kBothAtInfinity};
        return {Q, Parabola::vertical(Q.x()), {}, DoubleAddBranch::kFirstAtInfinity};
    }

    const RingElement& x1 = P.x();
    const RingElement& y1 = P.y();

    if (Q.is_infinity()) {
        auto l1 = tangent_slope(E, P);
        if (!l1)
            return {CurvePoint::infinity(), Parabola::vertical(x1), {},
                    DoubleAddBranch::kTwoTorsionDouble};
        RingElement x3 = slope_x_step(E, *l1, dbl(x1));
        RingElement y3 = slope_y_step(E, *l1, x1, y1, x3);
        return {CurvePoint(std::move(x3), std::move(y3)),
                Parabola::line(x1, y1, *l1), Slopes{l1, std::nullopt},
                DoubleAddBranch::kPlainDouble};
    }

    std::optional<RingElement> l1;
    if (x1 != Q.x()) {
        l1 = div(sub(y1, Q.y()), sub(x1, Q.x()));
    } else if (y1 != Q.y() || tangent_denominator(E, P).is_zero()) {
        // P and Q are negatives of each other, so 2P + Q = P.
        return {P, Parabola::vertical_squared(x1), {},
                DoubleAddBranch::kOppositePoints};
    } else {
        l1 = tangent_slope(E, P);
    }

    RingElement x3 = slope_x_step(E, *l1, add(x1, Q.x()));
    if (x3 == x1) {
        // P + Q and P are negatives: 2P + Q = O.
        return {CurvePoint::infinity(), Parabola::line(x1, y1, *l1),
                Slopes{l1, std::nullopt}, DoubleAddBranch::kSumIsNegative};
    }

    RingElement l2 = second_slope(E, x1, y1, x3, *l1);
    RingElement x4 = slope_x_step(E, l2, add(x1, x3));
    RingElement y4 = slope_y_step(E, l2, x1, y1, x4);
    RingElement s = add(add(*l1, l2), E.a1());
    Parabola par = Parabola::generic(x1, y1, x4, s, l2);
    return {CurvePoint(std::move(x4), std::move(y4)), std::move(par),
            Slopes{l1, l2}, DoubleAddBranch::kGeneric};
}

DoubleAddResult double_sub(const CurveParams& E, const CurvePoint& P,
                           const CurvePoint& Q) {
    return double_add(E, P, negate(E, Q));
}

CurvePoint triple(const CurveParams& E, const CurvePoint& P) {
    return double_add(E, P, P).point;
}

CurvePoint triple_add(const CurveParams& E, const CurvePoint& P,
                      const CurvePoint& Q) {
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return triple(E, P);

    const RingElement& x1 = P.x();
    const RingElement& y1 = P.y();
    // Degenerate configurations take the composed (slower, always correct)
    // route; the chain below assumes three chord additions with distinct x.
    auto fallback = [&] { return add(E, add(E, add(E, P, Q), P), P); };

    if (x1 == Q.x()) return fallback();
    RingElement l1 = div(sub(y1, Q.y()), sub(x1, Q.x()));
    RingElement x3 = slope_x_step(E, l1, add(x1, Q.x()));
    if (x3 == x1) return fallback();
    RingElement l2 = second_slope(E, x1, y1, x3, l1);
    RingElement x4 = slope_x_step(E, l2, add(x1, x3));
    if (x4 == x1) return fallback();
    RingElement l3 = second_slope(E, x1, y1, x4, l2);
    RingElement x5 = slope_x_step(E, l3, add(x1, x4));
    RingElement y5 = slope_y_step(E, l3, x1, y1, x5);
    return CurvePoint(std::move(x5), std::move(y5));
}

AddWithLine add_with_line(const CurveParams& E, const CurvePoint& P,
                          const CurvePoint& Q) {
    if (P.is_infinity() && Q.is_infinity())
        return {CurvePoint::infinity(), Parabola::one(E.ctx()), {}};
    if (P.is_infinity()) return {Q, Parabola::vertical(Q.x()), {}};
    if (Q.is_infinity()) return {P, Parabola::vertical(P.x()), {}};

    if (P.x() == Q.x()) {
        if (P.y() != Q.y())
            return {CurvePoint::infinity(), Parabola::vertical(P.x()), {}};
        auto l = tangent_slope(E, P);
        if (!l) return {CurvePoint::infinity(), Parabola::vertical(P.x()), {}};
        RingElement x3 = slope_x_step(E, *l, dbl(P.x()));
        RingElement y3 = slope_y_step(E, *l, P.x(), P.y(), x3);
        return {CurvePoint(std::move(x3), std::move(y3)),
                Parabola::line(P.x(), P.y(), *l), Slopes{l, std::nullopt}};
    }
    RingElement l = div(sub(Q.y(), P.y()), sub(Q.x(), P.x()));
    RingElement x3 = slope_x_step(E, l, add(P.x(), Q.x()));
    RingElement y3 = slope_y_step(E, l, P.x(), P.y(), x3);
    return {CurvePoint(std::move(x3), std::move(y3)),
            Parabola::line(P.x(), P.y(), l), Slopes{l, std::nullopt}};
}

// ---------------------------------------------------------------- Parabola

Parabola Parabola::one(RingContext& ctx) {
    Parabola p(Kind::kOne);
    p.ctx_ = &ctx;
    return p;
}

Parabola Parabola::vertical(RingElement x0) {
    Parabola p(Kind::kVertical);
    p.ctx_ = &x0.ctx();
    p.x1_ = std::move(x0);
    return p;
}

Parabola Parabola::vertical_squared(RingElement x0) {
    Parabola p(Kind::kVerticalSquared);
    p.ctx_ = &x0.ctx();
    p.x1_ = std::move(x0);
    return p;
}

Parabola Parabola::line(RingElement x1, RingElement y1, RingElement slope) {
    Parabola p(Kind::kLine);
    p.ctx_ = &x1.ctx();
    p.x1_ = std::move(x1);
    p.y1_ = std::move(y1);
    p.lambda2_ = std::move(slope);
    return p;
}

Parabola Parabola::generic(RingElement x1, RingElement y1, RingElement x4,
                           RingElement s, RingElement lambda2) {
    Parabola p(Kind::kGeneric);
    p.ctx_ = &x1.ctx();
    p.x1_ = std::move(x1);
    p.y1_ = std::move(y1);
    p.x4_ = std::move(x4);
    p.s_ = std::move(s);
    p.lambda2_ = std::move(lambda2);
    return p;
}

void Parabola::prepare() {
    if (kind_ != Kind::kGeneric || has_c1_) return;
    c1_ = mul(s_, lambda2_);
    has_c1_ = true;
}

RingElement Parabola::eval(const CurvePoint& T) const {
    if (T.is_infinity())
        throw std::invalid_argument("parabola evaluated at infinity");
    switch (kind_) {
        case Kind::kOne:
            return (*ctx_)(1);
        case Kind::kVertical:
            return sub(T.x(), x1_);
        case Kind::kVerticalSquared:
            return sqr(sub(T.x(), x1_));
        case Kind::kLine:
            return sub(sub(T.y(), y1_), mul(lambda2_, sub(T.x(), x1_)));
        case Kind::kGeneric:
            if (!has_c1_)
                throw std::logic_error("generic parabola evaluated unprepared");
            return sub(mul(sub(T.x(), x1_), add(sub(T.x(), x4_), c1_)),
                       mul(s_, sub(T.y(), y1_)));
    }
    throw std::logic_error("unreachable");
}

std::array<RingElement, 4> Parabola::coefficients() const {
    RingContext& R = *ctx_;
    switch (kind_) {
        case Kind::kOne:
            return {R(0), R(0), R(0), R(1)};
        case Kind::kVertical:
            return {R(0), R(1), R(0), neg(x1_)};
        case Kind::kVerticalSquared:
            return {R(1), neg(dbl(x1_)), R(0), sqr(x1_)};
        case Kind::kLine:
            return {R(0), neg(lambda2_), R(1), sub(mul(lambda2_, x1_), y1_)};
        case Kind::kGeneric: {
            RingElement c1 = has_c1_ ? c1_ : mul(s_, lambda2_);
            RingElement px = sub(sub(c1, x1_), x4_);
            RingElement p0 =
                add(sub(mul(x1_, x4_), mul(x1_, c1)), mul(s_, y1_));
            return {R(1), std::move(px), neg(s_), std::move(p0)};
        }
    }
    throw std::logic_error("unreachable");
}

// ----------------------------------------------------------- random points

std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p) {
    mpz_class v = a % p;
    if (v < 0) v += p;
    if (v == 0) return mpz_class(0);
    if (mpz_legendre(v.get_mpz_t(), p.get_mpz_t()) != 1) return std::nullopt;

    auto powm = [&p](const mpz_class& b, const mpz_class& e) {
        mpz_class r;
        mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };

    if (p % 4 == 3) return powm(v, (p + 1) / 4);

    // Tonelli-Shanks: p - 1 = q * 2^s with q odd.
    mpz_class q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q >>= 1;
        ++s;
    }
    mpz_class z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;

    mpz_class m(s), c = powm(z, q), t = powm(v, q), r = powm(v, (q + 1) / 2);
    while (t != 1) {
        mpz_class tt = t;
        unsigned long i = 0;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        mpz_class b = c;
        for (mpz_class j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return r;
}

CurvePoint random_point(const CurveParams& E, gmp_randclass& rng) {
    RingContext& R = E.ctx();
    CounterPause pause(R);
    const mpz_class& p = R.modulus();
    mpz_class inv2;
    mpz_class two = 2;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());

    for (;;) {
        RingElement x = R(rng.get_z_range(p));
        RingElement xx = sqr(x);
        RingElement rhs =
            add(add(add(mul(xx, x), mul(E.a2(), xx)), mul(E.a4(), x)), E.a6());
        // y^2 + (a1 x + a3) y - rhs = 0
        RingElement b = add(mul_coeff(x, E.a1()), E.a3());
        RingElement disc = add(sqr(b), dbl(dbl(rhs)));
        auto root = sqrt_mod_prime(disc.value(), p);
        if (!root) continue;
        RingElement y = R((*root - b.value()) * inv2);
        CurvePoint P(x, y);
        if (rng.get_z_bits(1) == 1) P = negate(E, P);
        return P;
    }
}

}  // namespace ecfuse
