#ifndef ECFUSE_MODRING_HPP
#define ECFUSE_MODRING_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

/* Arithmetic in Z/NZ (N prime or composite) with exact per-context operation
 * accounting.
 *
 * Counting convention: general multiplications, squarings, divisions and
 * inversions are tallied; additions, subtractions, negations and products by
 * the small constants 2 and 3 are free.  A division is one atomic counted
 * event (div += 1), never decomposed into inv + mul; converting tallies to a
 * single cost unit is the cost model's job.
 */

namespace ecfuse {

struct OpCount {
    std::uint64_t mul = 0;
    std::uint64_t sqr = 0;
    std::uint64_t div = 0;
    std::uint64_t inv = 0;

    std::uint64_t mul_like() const { return mul + sqr; }

    friend OpCount operator+(OpCount a, const OpCount& b) {
        a.mul += b.mul; a.sqr += b.sqr; a.div += b.div; a.inv += b.inv;
        return a;
    }
    friend OpCount operator-(OpCount a, const OpCount& b) {
        a.mul -= b.mul; a.sqr -= b.sqr; a.div -= b.div; a.inv -= b.inv;
        return a;
    }
    friend bool operator==(const OpCount&, const OpCount&) = default;
};

/// Snapshot returned by RingContext::counts(); identical layout to OpCount.
using CounterReport = OpCount;

/* Attempt to invert a nonzero element that shares a factor with the modulus.
 * The carried divisor g satisfies 1 < g < N and g | N; for ECM this is the
 * success path, everywhere else it propagates to the caller untouched. */
class NonInvertible : public std::runtime_error {
  public:
    NonInvertible(mpz_class factor, mpz_class modulus)
        : std::runtime_error("non-invertible element: gcd " + factor.get_str() +
                             " divides modulus"),
          factor_(std::move(factor)), modulus_(std::move(modulus)) {}
    const mpz_class& factor() const { return factor_; }
    const mpz_class& modulus() const { return modulus_; }

  private:
    mpz_class factor_;
    mpz_class modulus_;
};

class RingElement;

/* Owns the modulus and the operation counter.  Single-owner, single-threaded
 * state: distinct contexts are fully independent and may be used from
 * different threads concurrently, one context may not. */
class RingContext {
  public:
    explicit RingContext(mpz_class modulus);

    RingContext(const RingContext&) = delete;
    RingContext& operator=(const RingContext&) = delete;

    const mpz_class& modulus() const { return modulus_; }

    /// Make an element, reducing the value into [0, N).
    RingElement operator()(const mpz_class& value);
    RingElement operator()(long value);
    RingElement from_hex(const std::string& hex);

    CounterReport counts() const { return counter_; }
    void reset_counts() { counter_ = {}; }

    bool paused() const { return pause_depth_ > 0; }

  private:
    friend class CounterPause;
    friend RingElement mul(const RingElement&, const RingElement&);
    friend RingElement sqr(const RingElement&);
    friend RingElement inv(const RingElement&);
    friend RingElement div(const RingElement&, const RingElement&);
    friend std::vector<RingElement> batch_inv(std::span<const RingElement>);
    friend RingElement mul_coeff(const RingElement&, const RingElement&);

    void tally_mul() { if (!paused()) ++counter_.mul; }
    void tally_sqr() { if (!paused()) ++counter_.sqr; }
    void tally_div() { if (!paused()) ++counter_.div; }
    void tally_inv() { if (!paused()) ++counter_.inv; }

    mpz_class modulus_;
    OpCount counter_;
    int pause_depth_ = 0;
};

/* RAII guard suspending the counter; used by validation code (on-curve and
 * discriminant checks, fixture setup) so it never pollutes measured tallies.
 * Arithmetic behaves identically while paused, including NonInvertible. */
class CounterPause {
  public:
    explicit CounterPause(RingContext& ctx) : ctx_(ctx) { ++ctx_.pause_depth_; }
    ~CounterPause() { --ctx_.pause_depth_; }
    CounterPause(const CounterPause&) = delete;
    CounterPause& operator=(const CounterPause&) = delete;

  private:
    RingContext& ctx_;
};

/// Immutable residue in [0, N) tied to its context.
class RingElement {
  public:
    RingElement() = default;

    const mpz_class& value() const { return value_; }
    RingContext& ctx() const { return *ctx_; }
    bool is_zero() const { return value_ == 0; }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.ctx_ == b.ctx_ && a.value_ == b.value_;
    }
    friend bool operator!=(const RingElement& a, const RingElement& b) = default;

  private:
    friend class RingContext;
    RingElement(mpz_class v, RingContext* ctx) : value_(std::move(v)), ctx_(ctx) {}

    mpz_class value_;
    RingContext* ctx_ = nullptr;
};

// Free (uncounted) ring operations.
RingElement add(const RingElement& a, const RingElement& b);
RingElement sub(const RingElement& a, const RingElement& b);
RingElement neg(const RingElement& a);
RingElement dbl(const RingElement& a);  // 2a
RingElement tpl(const RingElement& a);  // 3a

// Counted ring operations.
RingElement mul(const RingElement& a, const RingElement& b);  // counter.mul += 1
RingElement sqr(const RingElement& a);                        // counter.sqr += 1

/* a^{-1} mod N.  counter.inv += 1 on success; throws NonInvertible{gcd(a,N)}
 * without touching the counter when gcd(a, N) > 1, std::domain_error on 0. */
RingElement inv(const RingElement& a);

/// a / b as one atomic counted division (counter.div += 1).
RingElement div(const RingElement& a, const RingElement& b);

/* Element-wise inverses by Montgomery's trick x^{-1} = y(xy)^{-1}:
 * for k inputs the counter delta is exactly {inv: 1, mul: 3(k-1)}. */
std::vector<RingElement> batch_inv(std::span<const RingElement> elements);

/* Product with a curve coefficient: free when the coefficient is 0, +-1, 2
 * or 3 (realized with adds/negations), a counted general multiplication
 * otherwise. */
RingElement mul_coeff(const RingElement& a, const RingElement& coeff);

/// a^e mod N computed directly on values; not tallied (canonicalization only).
RingElement pow_raw(const RingElement& a, const mpz_class& e);

inline CounterReport counter_snapshot(const RingContext& ctx) { return ctx.counts(); }
inline void counter_reset(RingContext& ctx) { ctx.reset_counts(); }

}  // namespace ecfuse

#endif
