#ifndef ECFUSE_PAIRING_HPP
#define ECFUSE_PAIRING_HPP

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ecfuse/curve.hpp"
#include "ecfuse/modring.hpp"

/* Miller-loop evaluation of the Tate and Weil pairings.
 *
 * For an m-torsion point P, f_b denotes the function with divisor
 * b(P) - (bP) - (b-1)(O); h_b = f_b(Q1)/f_b(Q2) is well-defined and is
 * carried as a numerator/denominator pair, with a single ring division at
 * the very end.  The recurrences driving the chain are
 *
 *   h_{b+c} = h_b h_c [g_{b,c}(Q1) g_{b+c}(Q2)] / [g_{b,c}(Q2) g_{b+c}(Q1)]
 *   h_{b-c} = [h_b g_b(Q1) g_{-b,c}(Q2)] / [h_c g_b(Q2) g_{-b,c}(Q1)]
 *
 * with g_{b,c} the line through bP and cP and g_b the vertical through bP.
 *
 * Step engines: standard composes a doubling step with an addition step
 * (21 mul + 2 div per double-add, squarings counted as multiplications);
 * parabola fuses them through curve::double_add, replacing the three-line
 * product with the parabola and never forming y(bP+cP) (16 mul + 2 div).
 * A plain doubling step costs 11 mul + 1 div either way.
 *
 * Double-sub steps b -> 2b - c run the fused update against the negated
 * entry h_{-c} = (h_c.den * g_c(Q2), h_c.num * g_c(Q1)) paired with -cP,
 * which is the h_{2b-c} = h_b^2 h_c^{-1} par g_c-vertical formula with the
 * two extra fraction factors folded into the entry.  The NAF-driven loop
 * folds them once, before the loop, so minus digits cost the same as plus
 * digits.
 */

namespace ecfuse {

class DivisorCollision : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class RetriesExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class TorsionError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// num/den pair accumulating h_b; divided exactly once, at the end.
struct PairingFraction {
    RingElement num, den;
};

struct MillerState {
    mpz_class b;
    CurvePoint point;  // bP
    PairingFraction h;
};

/// Precomputed (h_c, cP) table entry for addition-type steps.
struct MillerEntry {
    PairingFraction h;
    CurvePoint point;
    mpz_class c;
};

enum class MillerEngine { kStandard, kParabola };
enum class MillerChain { kBinary, kNaf };

struct MillerStats {
    std::size_t doubles = 0;
    std::size_t double_adds = 0;
    std::size_t subs = 0;  // double-sub (minus-digit) steps
};

struct PairingInputs {
    mpz_class m;
    CurvePoint P;
    CurvePoint Q1, Q2;
};

MillerState miller_double_step(const CurveParams& E, const MillerState& state,
                               const CurvePoint& Q1, const CurvePoint& Q2);

/// Plain addition step b -> b + c via the h_{b+c} recurrence.
MillerState miller_add_step(const CurveParams& E, const MillerState& state,
                            const MillerEntry& entry, const CurvePoint& Q1,
                            const CurvePoint& Q2);

MillerState miller_double_add_step(const CurveParams& E, const MillerState& state,
                                   const MillerEntry& entry, const CurvePoint& Q1,
                                   const CurvePoint& Q2, MillerEngine engine);

MillerState miller_sub_step(const CurveParams& E, const MillerState& state,
                            const MillerEntry& entry, const CurvePoint& Q1,
                            const CurvePoint& Q2);

MillerState miller_double_sub_step(const CurveParams& E, const MillerState& state,
                                   const MillerEntry& entry, const CurvePoint& Q1,
                                   const CurvePoint& Q2, MillerEngine engine);

struct MillerResult {
    PairingFraction h;
    CurvePoint point;  // mP
    MillerStats stats;
};

/* Full chain for h_m.  The initial fraction defaults to f_1 = 1; the Weil
 * pairing passes the divisor-shifted f_1 instead.  Entry and initial-value
 * construction runs with the counter paused (precomputation); the steps
 * themselves are counted. */
MillerResult miller_loop(const CurveParams& E, const PairingInputs& in,
                         MillerEngine engine, MillerChain chain = MillerChain::kNaf,
                         std::optional<PairingFraction> initial = std::nullopt);

/* Chain record for fixed P, varying (Q1, Q2): per-step line/parabola
 * coefficients (prepared) and the vertical x of each chain point. */
class StepTrace {
  public:
    enum class Kind { kDouble, kAdd, kDoubleAdd, kDoubleSub };

    struct Step {
        Kind kind;
        bool minus = false;  // addition-type step against the (-1)-entry
        Parabola par;
        std::optional<RingElement> vertical_x;  // absent when the step lands on O
        CurvePoint after;
    };

    const std::vector<Step>& steps() const { return steps_; }
    const CurvePoint& base() const { return base_; }
    const CurvePoint& final_point() const { return final_; }
    RingContext& ctx() const { return base_.x().ctx(); }

  private:
    friend StepTrace precompute_trace(const CurveParams&, const CurvePoint&,
                                      const mpz_class&, MillerEngine);
    std::vector<Step> steps_;
    CurvePoint base_, final_;
};

StepTrace precompute_trace(const CurveParams& E, const CurvePoint& P,
                           const mpz_class& m, MillerEngine engine);

/* Replays a trace at (Q1, Q2): 8 multiplications per doubling or addition
 * step, 12 per fused double-add/double-sub step, zero divisions until the
 * final one.  per_step, when given, receives each step's counter delta. */
RingElement eval_trace(const StepTrace& trace, const CurvePoint& Q1,
                       const CurvePoint& Q2,
                       std::vector<OpCount>* per_step = nullptr);

/* Tate pairing h_m = f_m(Q+S)/f_m(S) for a seeded random S, retried on
 * divisor collisions.  With reduce, the value is raised to (p-1)/m (the
 * fixture must have m | p-1), landing it canonically in mu_m. */
RingElement tate_pairing(const CurveParams& E, const CurvePoint& P,
                         const CurvePoint& Q, const mpz_class& m,
                         MillerEngine engine, unsigned long seed,
                         bool reduce = false, MillerChain chain = MillerChain::kNaf,
                         MillerStats* stats = nullptr, unsigned max_retries = 32);

/* Weil pairing e_m(P, Q) as the ratio of two divisor-shifted Miller
 * evaluations (four f-evaluations in total): alternating, bilinear, and
 * valued in mu_m with no final exponentiation. */
RingElement weil_pairing(const CurveParams& E, const CurvePoint& P,
                         const CurvePoint& Q, const mpz_class& m,
                         MillerEngine engine, unsigned long seed,
                         MillerChain chain = MillerChain::kNaf,
                         MillerStats* stats = nullptr, unsigned max_retries = 32);

}  // namespace ecfuse

#endif
