#ifndef ECFUSE_CURVE_HPP
#define ECFUSE_CURVE_HPP

#include <array>
#include <optional>
#include <stdexcept>

#include <gmpxx.h>

#include "ecfuse/modring.hpp"

/* Affine group law on a general Weierstrass curve
 *
 *     y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6
 *
 * including the fused double-add 2P+Q that skips the y-coordinate of the
 * intermediate P+Q and emits the (possibly degenerate) parabola through
 * P, P, Q, -(2P+Q).
 *
 * Generic costs on the short form (a1 = a2 = a3 = 0):
 *
 *     add         1 sqr  1 mul  1 div
 *     dbl         2 sqr  1 mul  1 div
 *     double_add  2 sqr  1 mul  2 div
 *     triple      3 sqr  1 mul  2 div
 *     triple_add  3 sqr  1 mul  3 div
 *
 * Products by the coefficients a1..a6 go through mul_coeff, so they are free
 * whenever the coefficient is 0, +-1, 2 or 3 and the short-form tallies above
 * hold exactly.
 */

namespace ecfuse {

class SingularCurve : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class CurveParams {
  public:
    CurveParams(RingElement a1, RingElement a2, RingElement a3, RingElement a4,
                RingElement a6);

    const RingElement& a1() const { return a1_; }
    const RingElement& a2() const { return a2_; }
    const RingElement& a3() const { return a3_; }
    const RingElement& a4() const { return a4_; }
    const RingElement& a6() const { return a6_; }

    RingContext& ctx() const { return a1_.ctx(); }
    bool a1_is_zero() const { return a1_.is_zero(); }
    bool short_form() const { return short_form_; }
    const RingElement& discriminant() const { return discriminant_; }

  private:
    RingElement a1_, a2_, a3_, a4_, a6_;
    RingElement discriminant_;
    bool short_form_;
};

/// Affine point or the group identity O.
class CurvePoint {
  public:
    CurvePoint() = default;  // infinity
    CurvePoint(RingElement x, RingElement y)
        : x_(std::move(x)), y_(std::move(y)), infinity_(false) {}

    static CurvePoint infinity() { return CurvePoint(); }

    bool is_infinity() const { return infinity_; }
    const RingElement& x() const { return x_; }
    const RingElement& y() const { return y_; }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.infinity_ || b.infinity_) return a.infinity_ == b.infinity_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) = default;

  private:
    RingElement x_, y_;
    bool infinity_ = true;
};

/* Quadratic-in-x, linear-in-y polynomial px2*x^2 + px*x + py*y + p0, kept in
 * the factored form the group law produces so that evaluation is cheap:
 *
 *   generic:   (x - x1)(x - x4 + s*l2) - s*(y - y1),  s = l1 + l2 + a1
 *
 * prepare() computes the single coefficient product s*l2 (one multiplication,
 * charged to the caller that wants evaluations); eval of a prepared generic
 * parabola costs exactly 2 multiplications per point. */
class Parabola {
  public:
    enum class Kind { kOne, kVertical, kVerticalSquared, kLine, kGeneric };

    static Parabola one(RingContext& ctx);
    static Parabola vertical(RingElement x0);
    static Parabola vertical_squared(RingElement x0);
    static Parabola line(RingElement x1, RingElement y1, RingElement slope);
    static Parabola generic(RingElement x1, RingElement y1, RingElement x4,
                            RingElement s, RingElement lambda2);

    Kind kind() const { return kind_; }
    bool prepared() const { return kind_ != Kind::kGeneric || has_c1_; }

    /// Costs 1 mul on the generic kind, nothing otherwise. Idempotent.
    void prepare();

    /* Value at a finite point T.  Counted cost: 0 (kOne, kVertical),
     * 1 sqr (kVerticalSquared), 1 mul (kLine), 2 mul (prepared kGeneric). */
    RingElement eval(const CurvePoint& T) const;

    /// Expanded coefficients {px2, px, py, p0}; counted, display/test use.
    std::array<RingElement, 4> coefficients() const;

    // Factored-form accessors (generic kind).
    const RingElement& x1() const { return x1_; }
    const RingElement& y1() const { return y1_; }
    const RingElement& x4() const { return x4_; }
    const RingElement& s() const { return s_; }
    const RingElement& lambda2() const { return lambda2_; }
    const RingElement& slope() const { return lambda2_; }  // kLine slope

  private:
    explicit Parabola(Kind k) : kind_(k) {}

    Kind kind_;
    RingElement x1_, y1_, x4_, s_, lambda2_, c1_;
    bool has_c1_ = false;
    RingContext* ctx_ = nullptr;  // kOne needs a context for eval
};

/// Which Figure-1 style case the fused double-add took.
enum class DoubleAddBranch {
    kBothAtInfinity,    // P = O, Q = O
    kFirstAtInfinity,   // P = O, Q != O
    kTwoTorsionDouble,  // Q = O, P of order 2
    kPlainDouble,       // Q = O
    kOppositePoints,    // x1 = x2 and 2P + Q = P
    kSumIsNegative,     // x3 = x1, P + Q = -P
    kGeneric,
};

struct Slopes {
    std::optional<RingElement> lambda1;
    std::optional<RingElement> lambda2;
};

struct DoubleAddResult {
    CurvePoint point;
    Parabola parabola;
    Slopes slopes;
    DoubleAddBranch branch;
};

/// Point plus the chord/tangent line used to form it (for Miller steps).
struct AddWithLine {
    CurvePoint point;
    Parabola line;  // kLine, kVertical, or kOne when both inputs are O
    Slopes slopes;
};

bool is_on_curve(const CurveParams& E, const CurvePoint& P);

/// -P = (x1, -a1*x1 - a3 - y1); free for a1 in {0, +-1, 2, 3}.
CurvePoint negate(const CurveParams& E, const CurvePoint& P);

/* Tangent slope l1 = (3x1^2 + 2a2x1 + a4 - a1y1) / (2y1 + a1x1 + a3);
 * nullopt when the denominator vanishes (order-2 point). */
std::optional<RingElement> tangent_slope(const CurveParams& E, const CurvePoint& P);

CurvePoint add(const CurveParams& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint dbl(const CurveParams& E, const CurvePoint& P);

/* 2P + Q without materializing y(P+Q), plus the parabola through
 * P, P, Q, -(2P+Q).  Every branch returns the degenerate parabola listed in
 * the algorithm; the generic branch never performs the (x1-x3)*l1
 * multiplication of the y3 formula. */
DoubleAddResult double_add(const CurveParams& E, const CurvePoint& P,
                           const CurvePoint& Q);

/// 2P - Q = double_add(P, -Q); the negation is free.
DoubleAddResult double_sub(const CurveParams& E, const CurvePoint& P,
                           const CurvePoint& Q);

CurvePoint triple(const CurveParams& E, const CurvePoint& P);

/// 3P + Q as ((P+Q)+P)+P with the slope shortcut used twice.
CurvePoint triple_add(const CurveParams& E, const CurvePoint& P, const CurvePoint& Q);

/// P + Q together with the line through P and Q (tangent when P = Q).
AddWithLine add_with_line(const CurveParams& E, const CurvePoint& P,
                          const CurvePoint& Q);

inline RingElement eval_parabola(const Parabola& par, const CurvePoint& T) {
    return par.eval(T);
}

/* Uniform random point; requires a prime modulus (Tonelli-Shanks square
 * roots).  Never tallied. */
CurvePoint random_point(const CurveParams& E, gmp_randclass& rng);

/// sqrt of a mod odd prime p, if a is a quadratic residue.
std::optional<mpz_class> sqrt_mod_prime(const mpz_class& a, const mpz_class& p);

}  // namespace ecfuse

#endif
