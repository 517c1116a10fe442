#include "ecfuse/modring.hpp"

namespace ecfuse {

namespace {

void require_same_ctx(const RingElement& a, const RingElement& b) {
    if (&a.ctx() != &b.ctx())
        throw std::invalid_argument("ring elements from different contexts");
}

}  // namespace

RingContext::RingContext(mpz_class modulus) : modulus_(std::move(modulus)) {
    if (modulus_ < 2) throw std::invalid_argument("modulus must be >= 2");
}

RingElement RingContext::operator()(const mpz_class& value) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
    return RingElement(std::move(r), this);
}

RingElement RingContext::operator()(long value) { return (*this)(mpz_class(value)); }

RingElement RingContext::from_hex(const std::string& hex) {
    return (*this)(mpz_class(hex, 0));
}

RingElement add(const RingElement& a, const RingElement& b) {
    require_same_ctx(a, b);
    mpz_class r = a.value() + b.value();
    if (r >= a.ctx().modulus()) r -= a.ctx().modulus();
    return a.ctx()(r);
}

RingElement sub(const RingElement& a, const RingElement& b) {
    require_same_ctx(a, b);
    mpz_class r = a.value() - b.value();
    if (r < 0) r += a.ctx().modulus();
    return a.ctx()(r);
}

RingElement neg(const RingElement& a) {
    if (a.is_zero()) return a;
    return a.ctx()(a.ctx().modulus() - a.value());
}

RingElement dbl(const RingElement& a) { return add(a, a); }

RingElement tpl(const RingElement& a) { return add(add(a, a), a); }

RingElement mul(const RingElement& a, const RingElement& b) {
    require_same_ctx(a, b);
    a.ctx().tally_mul();
    return a.ctx()(a.value() * b.value());
}

RingElement sqr(const RingElement& a) {
    a.ctx().tally_sqr();
    return a.ctx()(a.value() * a.value());
}

RingElement inv(const RingElement& a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    const mpz_class& n = a.ctx().modulus();
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.value().get_mpz_t(), n.get_mpz_t()) == 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), a.value().get_mpz_t(), n.get_mpz_t());
        throw NonInvertible(std::move(g), n);
    }
    a.ctx().tally_inv();
    return a.ctx()(r);
}

RingElement div(const RingElement& a, const RingElement& b) {
    require_same_ctx(a, b);
    if (b.is_zero()) throw std::domain_error("division by zero");
    const mpz_class& n = a.ctx().modulus();
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), b.value().get_mpz_t(), n.get_mpz_t()) == 0) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), b.value().get_mpz_t(), n.get_mpz_t());
        throw NonInvertible(std::move(g), n);
    }
    a.ctx().tally_div();
    return a.ctx()(a.value() * r);
}

std::vector<RingElement> batch_inv(std::span<const RingElement> elements) {
    if (elements.empty()) return {};
    RingContext& ctx = elements.front().ctx();
    const mpz_class& n = ctx.modulus();
    for (const auto& e : elements) {
        require_same_ctx(elements.front(), e);
        if (e.is_zero()) throw std::domain_error("batch_inv of zero element");
    }

    const std::size_t k = elements.size();
    // Prefix products: k-1 multiplications.
    std::vector<mpz_class> prefix(k);
    prefix[0] = elements[0].value();
    for (std::size_t i = 1; i < k; ++i) {
        ctx.tally_mul();
        prefix[i] = prefix[i - 1] * elements[i].value() % n;
    }

    mpz_class t;
    if (mpz_invert(t.get_mpz_t(), prefix[k - 1].get_mpz_t(), n.get_mpz_t()) == 0) {
        // The full product shares a factor with N; attribute it to an input.
        // Some input must have gcd > 1, and inputs are nonzero so the gcd is
        // proper.
        for (const auto& e : elements) {
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), e.value().get_mpz_t(), n.get_mpz_t());
            if (g > 1) throw NonInvertible(std::move(g), n);
        }
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), prefix[k - 1].get_mpz_t(), n.get_mpz_t());
        throw NonInvertible(std::move(g), n);
    }
    ctx.tally_inv();

    // Back-substitution: 2(k-1) multiplications.
    std::vector<RingElement> out(k);
    for (std::size_t i = k; i-- > 1;) {
        ctx.tally_mul();
        out[i] = ctx(t * prefix[i - 1]);
        ctx.tally_mul();
        t = t * elements[i].value() % n;
    }
    out[0] = ctx(t);
    return out;
}

RingElement mul_coeff(const RingElement& a, const RingElement& coeff) {
    require_same_ctx(a, coeff);
    const mpz_class& n = a.ctx().modulus();
    const mpz_class& c = coeff.value();
    if (c == 0) return a.ctx()(0);
    if (c == 1) return a;
    if (c == n - 1) return neg(a);
    if (c == 2) return dbl(a);
    if (c == 3) return tpl(a);
    return mul(a, coeff);
}

RingElement pow_raw(const RingElement& a, const mpz_class& e) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), a.value().get_mpz_t(), e.get_mpz_t(),
             a.ctx().modulus().get_mpz_t());
    return a.ctx()(r);
}

}  // namespace ecfuse
