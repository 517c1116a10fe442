#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include "ecfuse/modring.hpp"

using namespace ecfuse;

TEST_CASE("element construction reduces into [0, N)") {
    RingContext R(7);
    CHECK(R(10).value() == 3);
    CHECK(R(-1).value() == 6);
    CHECK(R.from_hex("0x1f").value() == 3);
    CHECK_THROWS_AS(RingContext(1), std::invalid_argument);
}

TEST_CASE("add/mul basics with counter deltas") {
    RingContext R(5);
    CHECK(add(R(3), R(4)).value() == 2);
    CHECK(add(R(0), R(3)).value() == 3);
    CHECK(add(R(4), R(1)).value() == 0);  // (N-1) + 1 wraps
    CHECK(R.counts() == OpCount{});       // additions are free

    RingContext R7(7);
    CHECK(mul(R7(2), R7(3)).value() == 6);
    CHECK(mul(R7(1), R7(5)).value() == 5);
    CHECK(R7.counts() == OpCount{.mul = 2});
    CHECK(sqr(R7(4)).value() == 2);
    CHECK(R7.counts() == OpCount{.mul = 2, .sqr = 1});
}

TEST_CASE("context mismatch is rejected") {
    RingContext A(7), B(7);
    CHECK_THROWS_AS(add(A(1), B(1)), std::invalid_argument);
    CHECK_THROWS_AS(mul(A(1), B(1)), std::invalid_argument);
}

TEST_CASE("inv: success, zero divisor, zero input") {
    RingContext R5(5);
    CHECK(inv(R5(2)).value() == 3);
    CHECK(R5.counts() == OpCount{.inv = 1});

    RingContext R8(8);
    CHECK_THROWS_WITH_AS(inv(R8(4)), doctest::Contains("gcd 4"), NonInvertible);
    CHECK(R8.counts() == OpCount{});  // failure does not tally

    RingContext R91(91);
    try {
        inv(R91(7));
        FAIL("expected NonInvertible");
    } catch (const NonInvertible& e) {
        CHECK(e.factor() == 7);
        CHECK(e.modulus() == 91);
    }
    CHECK_THROWS_AS(inv(R91(0)), std::domain_error);
}

TEST_CASE("div is one atomic counted event") {
    RingContext R(7);
    CHECK(div(R(6), R(2)).value() == 3);
    CHECK(R.counts() == OpCount{.div = 1});
    CHECK(div(R(4), R(1)).value() == 4);  // divisor 1 still counted
    CHECK(R.counts() == OpCount{.div = 2});
    CHECK_THROWS_AS(div(R(1), R(0)), std::domain_error);

    RingContext R91(91);
    try {
        div(R91(1), R91(13));
        FAIL("expected NonInvertible");
    } catch (const NonInvertible& e) {
        CHECK(e.factor() == 13);
    }
    CHECK(R91.counts() == OpCount{});
}

TEST_CASE("batch_inv values and exact counter contract") {
    RingContext R(7);
    std::vector<RingElement> xs{R(2), R(3)};
    auto ys = batch_inv(xs);
    CHECK(ys[0].value() == 4);
    CHECK(ys[1].value() == 5);
    CHECK(R.counts() == OpCount{.mul = 3, .inv = 1});

    R.reset_counts();
    std::vector<RingElement> one{R(3)};
    auto y1 = batch_inv(one);
    CHECK(y1[0].value() == 5);
    CHECK(R.counts() == OpCount{.inv = 1});

    CHECK(batch_inv(std::span<const RingElement>{}).empty());

    RingContext R91(91);
    std::vector<RingElement> bad{R91(2), R91(7)};
    try {
        batch_inv(bad);
        FAIL("expected NonInvertible");
    } catch (const NonInvertible& e) {
        CHECK(e.factor() == 7);
    }
    std::vector<RingElement> withzero{R91(2), R91(0)};
    CHECK_THROWS_AS(batch_inv(withzero), std::domain_error);
}

TEST_CASE("batch_inv matches element-wise inv on random samples") {
    mpz_class p("0xffffffffffffffffffffffffffffffff61", 0);  // not necessarily prime
    RingContext R(mpz_class(10007));
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(42);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<RingElement> xs;
        const int k = 1 + int(mpz_class(rng.get_z_bits(5)).get_ui() % 20);
        for (int i = 0; i < k; ++i) {
            RingElement e = R(rng.get_z_range(mpz_class(10006)) + 1);
            xs.push_back(e);
        }
        const OpCount before = R.counts();
        auto ys = batch_inv(xs);
        const OpCount delta = R.counts() - before;
        CHECK(delta == OpCount{.mul = 3 * std::uint64_t(k - 1), .inv = 1});
        for (int i = 0; i < k; ++i) CHECK(mul(xs[i], ys[i]).value() == 1);
    }
    // On 1000+ random elements in one shot, values still agree with inv().
    std::vector<RingElement> xs;
    for (int i = 0; i < 1200; ++i)
        xs.push_back(R(rng.get_z_range(mpz_class(10006)) + 1));
    auto ys = batch_inv(xs);
    CounterPause pause(R);
    for (std::size_t i = 0; i < xs.size(); ++i)
        CHECK(ys[i] == inv(xs[i]));
}

TEST_CASE("counter snapshot, reset, monotonicity") {
    RingContext R(11);
    CHECK(counter_snapshot(R) == OpCount{});
    sqr(R(4));
    CHECK(counter_snapshot(R) == OpCount{.sqr = 1});
    div(R(3), R(4));
    CHECK(counter_snapshot(R) == OpCount{.sqr = 1, .div = 1});

    OpCount prev{};
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(7);
    for (int i = 0; i < 200; ++i) {
        RingElement a = R(rng.get_z_range(10) + 1), b = R(rng.get_z_range(10) + 1);
        switch (mpz_class(rng.get_z_bits(2)).get_ui() % 4) {
            case 0: mul(a, b); break;
            case 1: sqr(a); break;
            case 2: div(a, b); break;
            case 3: inv(a); break;
        }
        const OpCount cur = R.counts();
        CHECK(cur.mul >= prev.mul);
        CHECK(cur.sqr >= prev.sqr);
        CHECK(cur.div >= prev.div);
        CHECK(cur.inv >= prev.inv);
        prev = cur;
    }
    counter_reset(R);
    CHECK(R.counts() == OpCount{});
}

TEST_CASE("ring axioms hold exhaustively over small prime fields") {
    for (long p : {5L, 7L, 11L}) {
        RingContext R(p);
        CounterPause pause(R);
        for (long a = 0; a < p; ++a) {
            for (long b = 0; b < p; ++b) {
                CHECK(add(R(a), R(b)) == add(R(b), R(a)));
                CHECK(mul(R(a), R(b)) == mul(R(b), R(a)));
                CHECK(sub(add(R(a), R(b)), R(b)) == R(a));
                if (b != 0) CHECK(mul(div(R(a), R(b)), R(b)) == R(a));
                for (long c = 0; c < p; ++c) {
                    CHECK(add(add(R(a), R(b)), R(c)) == add(R(a), add(R(b), R(c))));
                    CHECK(mul(mul(R(a), R(b)), R(c)) == mul(R(a), mul(R(b), R(c))));
                    CHECK(mul(R(a), add(R(b), R(c))) ==
                          add(mul(R(a), R(b)), mul(R(a), R(c))));
                }
            }
            if (a != 0) CHECK(mul(R(a), inv(R(a))).value() == 1);
        }
    }
}

TEST_CASE("mul_coeff: trivial constants are free, others counted") {
    RingContext R(17);
    CHECK(mul_coeff(R(5), R(0)).value() == 0);
    CHECK(mul_coeff(R(5), R(1)).value() == 5);
    CHECK(mul_coeff(R(5), R(16)).value() == 12);  // -1
    CHECK(mul_coeff(R(5), R(2)).value() == 10);
    CHECK(mul_coeff(R(5), R(3)).value() == 15);
    CHECK(R.counts() == OpCount{});
    CHECK(mul_coeff(R(5), R(4)).value() == 3);
    CHECK(R.counts() == OpCount{.mul = 1});
}

TEST_CASE("512-bit moduli work") {
    mpz_class p = (mpz_class(1) << 512) - 569;  // any odd 512-bit modulus
    RingContext R(p);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(3);
    RingElement a = R(rng.get_z_bits(511));
    RingElement b = R(rng.get_z_bits(511));
    CHECK(mul(a, inv(a)).value() == 1);
    CHECK(div(mul(a, b), b) == a);
}
