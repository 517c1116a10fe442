#ifndef ECFUSE_COSTMODEL_HPP
#define ECFUSE_COSTMODEL_HPP

#include <cstddef>

/* Closed-form expected operation counts for n-bit scalar multiplication,
 * Miller-loop pairing evaluation and ECM stage 1, used to cross-check the
 * measured counters.  All outputs are real-valued asymptotic expectations.
 */

namespace ecfuse::costmodel {

struct CostParams {
    double n = 160;        // scalar bit length
    double epsilon = 0.5;  // elliptic additions per bit for the recoding
    double alpha = 4.18;   // inversion / multiplication cost ratio
    double divcost() const { return alpha + 1; }
};

struct CostBreakdown {
    double squarings = 0;
    double multiplications = 0;
    double divisions = 0;
    double total_mul_equiv = 0;
};

enum class ScalarVariant { kConventional, kSaveSqr, kFused };

/* Conventional: (2+e)n sqr, (1+e)n mul, (1+e)n div  -> (4+a)n + (3+a)en
 * SaveSqr:      2n sqr,     (1+e)n mul, (1+e)n div  -> (4+a)n + (2+a)en
 * Fused:        2n sqr,     n mul,      (1+e)n div  -> (4+a)n + (1+a)en */
CostBreakdown scalar_cost(const CostParams& p, ScalarVariant variant);

/// Fractional saving of fused over conventional: 2e / ((4+a) + (3+a)e).
double scalar_savings(double epsilon, double alpha);

enum class PairingMode { kStandard, kParabola, kTraceStandard, kTraceParabola };

/* Per-evaluation multiplication totals for an n-bit Miller loop driven by the
 * 2n/3-doublings / n/3-double-adds chain:
 *   standard       (11 + d) 2n/3 + (21 + 2d) n/3
 *   parabola       (11 + d) 2n/3 + (16 + 2d) n/3
 *   trace standard 8 * 2n/3 + 16 * n/3  = 32n/3
 *   trace parabola 8 * 2n/3 + 12 * n/3  = 28n/3  */
double pairing_cost(double n, double divcost, PairingMode mode);

struct EcmBreakeven {
    double ladder_cost = 0;          // 2 sqr + 6 mul per bit
    double fused_division_cost = 0;  // 4/3 div per bit
    bool fused_superior = false;
    bool tie = false;
};

/* Per-bit comparison 4/3 div  vs  2 sqr + 6 mul, with div = inv + 1 mul.
 * Fused wins exactly when an inversion is cheaper than 1.5 sqr + 3.5 mul. */
EcmBreakeven ecm_breakeven(double inv_cost, double sqr_cost = 1.0,
                           double mul_cost = 1.0);

}  // namespace ecfuse::costmodel

#endif
