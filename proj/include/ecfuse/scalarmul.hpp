#ifndef ECFUSE_SCALARMUL_HPP
#define ECFUSE_SCALARMUL_HPP

#include <span>
#include <vector>

#include <gmpxx.h>

#include "ecfuse/curve.hpp"
#include "ecfuse/modring.hpp"

/* Scalar-multiplication strategies in two modes: standard (double, then add)
 * and fused (one double_add / double_sub per doubling that is followed by an
 * addition).  Both modes execute the same schedule and return the same point;
 * only the field-operation tallies differ.
 */

namespace ecfuse {

enum class MulMode { kStandard, kFused };

enum class StepKind { kDouble, kDoubleAdd, kDoubleSub, kAdd, kTriple, kTripleAdd };

/// One executable step; index is 1-based into the precomputed table, 0 = none.
struct ChainStep {
    StepKind kind = StepKind::kDouble;
    std::size_t index = 0;
};

/// Signed-digit expansion, most-significant digit first.
struct SignedDigits {
    std::vector<int> digits;

    mpz_class value() const;
    bool non_adjacent() const;
    double nonzero_density() const;
};

struct MulReport {
    CurvePoint result;
    OpCount ops;           // main-loop field operations
    OpCount precomp_ops;   // table-construction field operations, kept apart
    MulMode mode = MulMode::kStandard;
    std::size_t bits = 0;  // scalar bit length (max bit length for multi_mul)
    std::size_t doubles = 0;
    std::size_t additions = 0;
    std::size_t fused = 0;       // fused double-add / double-sub steps
    std::size_t table_adds = 0;  // elliptic additions spent building the table

    /* multi_mul scan trace: the table mask consumed per bit column, starting
     * with the initializing column (0 = plain doubling).  Empty elsewhere. */
    std::vector<unsigned> joint_masks;

    /// Realized additions-per-bit density (the measured epsilon).
    double realized_epsilon() const {
        return bits == 0 ? 0.0
                         : double(additions + fused) / double(bits);
    }
    /* Elliptic-operation tally in the doubling+addition convention (a fused
     * step counts as one doubling plus one addition); equal across modes. */
    std::size_t elliptic_ops() const {
        return doubles + additions + 2 * fused + table_adds;
    }
};

/// Non-adjacent form of k >= 1; nonzero digit density tends to 1/3.
SignedDigits recode_naf(const mpz_class& k);

/* Fixed-width w-bit window values of k, most significant window first
 * (left-padded with zero bits).  A window d = u * 2^z with u odd is executed
 * as an addition of the precomputed uP fused into the (w-z)-th doubling, so
 * the table holds odd multiples only and the measured addition density is
 * (1 - 2^-w)/w: 1/2, 3/8, 15/64 for w = 1, 2, 4. */
std::vector<unsigned> window_digits(const mpz_class& k, int w);

/// Windowed left-to-right multiplication, w in {1, 2, 4}.
MulReport mul_window(const CurveParams& E, const mpz_class& k, const CurvePoint& P,
                     int w, MulMode mode);

/// NAF-driven multiplication: ~2n/3 doublings and ~n/3 double-add/sub steps.
MulReport mul_naf(const CurveParams& E, const mpz_class& k, const CurvePoint& P,
                  MulMode mode);

/* Replays an explicit step sequence starting from T = P against a caller-
 * supplied table of precomputed points. */
MulReport exec_chain(const CurveParams& E, std::span<const ChainStep> steps,
                     const CurvePoint& P, std::span<const CurvePoint> table,
                     MulMode mode);

/* Sum(k_i P_i) for 1..3 pairs via the joint 2^t-entry subset-sum table: one
 * doubling per bit column, fused with the table-entry addition where the
 * column is nonzero. */
MulReport multi_mul(const CurveParams& E, std::span<const mpz_class> scalars,
                    std::span<const CurvePoint> points, MulMode mode);

}  // namespace ecfuse

#endif
