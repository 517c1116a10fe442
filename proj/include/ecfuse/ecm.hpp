#ifndef ECFUSE_ECM_HPP
#define ECFUSE_ECM_HPP

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ecfuse/costmodel.hpp"
#include "ecfuse/modring.hpp"

/* Desk-scale ECM stage 1 over Z/NZ with two engines:
 *
 *  - montgomery: x-only ladder on By^2 = x^3 + Ax^2 + x, no divisions during
 *    the multiplication, one gcd(Z, N) at the end;
 *  - fused: NAF-driven Weierstrass chain (double / double_add / double_sub)
 *    whose first failing division surfaces the factor.  With several curves
 *    the fused engine runs them in lockstep inside one batch-owner context
 *    and batches the per-phase inversion denominators across curves.
 */

namespace ecfuse {

class MontgomeryCurve {
  public:
    /* a24 = (A+2)/4 is computed eagerly; its inversion failing (even N) is
     * already a factor and throws NonInvertible. */
    MontgomeryCurve(RingElement A, RingElement B);

    const RingElement& A() const { return A_; }
    const RingElement& B() const { return B_; }
    const RingElement& a24() const { return a24_; }
    RingContext& ctx() const { return A_.ctx(); }

  private:
    RingElement A_, B_, a24_;
};

/// x-coordinate as a fraction X/Z; the y-coordinate is never carried.
struct XZPoint {
    RingElement X, Z;
};

/// P + Q given diff = P - Q; exactly 2 sqr + 4 mul.
XZPoint xz_dadd(const MontgomeryCurve& C, const XZPoint& P, const XZPoint& Q,
                const XZPoint& diff);

/// 2P; exactly 2 sqr + 3 mul.
XZPoint xz_double(const MontgomeryCurve& C, const XZPoint& P);

/* x(kP) by the Montgomery ladder over the bits of k >= 1; an n-bit k costs
 * 4n - 2 squarings and 7n - 4 multiplications. */
XZPoint ladder(const MontgomeryCurve& C, const mpz_class& k, const XZPoint& P);

enum class EcmEngine { kMontgomery, kWeierstrassFused };

struct EcmParams {
    mpz_class n;             // composite to factor, >= 4
    unsigned long b1 = 100;  // stage-1 smoothness bound, >= 2
    unsigned long seed = 1;
    unsigned curves = 1;
    EcmEngine engine = EcmEngine::kMontgomery;
};

struct EcmResult {
    std::optional<mpz_class> factor;
    unsigned curves_tried = 0;
    std::vector<OpCount> per_curve_counts;   // montgomery / single fused curve
    std::optional<OpCount> batch_counts;     // fused lockstep batch owner
};

/// Stage-1 multiplier: product of p^floor(log_p B1) over primes p <= B1.
mpz_class stage1_multiplier(unsigned long b1);

EcmResult ecm_stage1(const EcmParams& params);

struct EcmCostComparison {
    double ladder_sqr = 0, ladder_mul = 0;
    double fused_sqr = 0, fused_mul = 0, fused_div = 0;
    double ladder_total = 0, fused_total = 0;
    costmodel::EcmBreakeven breakeven;
};

/* Predicted ladder cost (4n sqr + 7n mul) against the fused chain
 * (2n sqr + n mul + 4n/3 div) for an n-bit multiplier, with the divisions
 * priced as inv_cost + 1. */
EcmCostComparison ecm_cost_compare(double n_bits, double inv_cost,
                                   double sqr_cost = 1.0, double mul_cost = 1.0);

}  // namespace ecfuse

#endif
