#include "ecfuse/scalarmul.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ecfuse {

mpz_class SignedDigits::value() const {
    mpz_class v = 0;
    for (int d : digits) v = 2 * v + d;
    return v;
}

bool SignedDigits::non_adjacent() const {
    for (std::size_t i = 0; i + 1 < digits.size(); ++i)
        if (digits[i] != 0 && digits[i + 1] != 0) return false;
    return true;
}

double SignedDigits::nonzero_density() const {
    if (digits.empty()) return 0.0;
    std::size_t nz = 0;
    for (int d : digits) nz += (d != 0);
    return double(nz) / double(digits.size());
}

SignedDigits recode_naf(const mpz_class& k) {
    if (k < 1) throw std::invalid_argument("recode_naf requires k >= 1");
    std::vector<int> lsb;
    mpz_class v = k;
    while (v > 0) {
        if (mpz_odd_p(v.get_mpz_t())) {
            int d = 2 - int(mpz_fdiv_ui(v.get_mpz_t(), 4));
            lsb.push_back(d);
            v -= d;
        } else {
            lsb.push_back(0);
        }
        v >>= 1;
    }
    std::reverse(lsb.begin(), lsb.end());
    return SignedDigits{std::move(lsb)};
}

std::vector<unsigned> window_digits(const mpz_class& k, int w) {
    if (k < 1) throw std::invalid_argument("window_digits requires k >= 1");
    if (w != 1 && w != 2 && w != 4)
        throw std::invalid_argument("window size must be 1, 2 or 4");
    const std::size_t nbits = mpz_sizeinbase(k.get_mpz_t(), 2);
    const std::size_t nwin = (nbits + w - 1) / w;
    std::vector<unsigned> out(nwin);
    for (std::size_t i = 0; i < nwin; ++i) {
        unsigned d = 0;
        for (int b = w - 1; b >= 0; --b) {
            std::size_t bit = (nwin - 1 - i) * w + b;
            d = (d << 1) | mpz_tstbit(k.get_mpz_t(), bit);
        }
        out[i] = d;
    }
    return out;
}

namespace {

/* Shared executor state: applies one doubling-with-optional-addition in the
 * requested mode and keeps the elliptic-operation tallies. */
struct Executor {
    const CurveParams& E;
    MulMode mode;
    MulReport rep;
    CurvePoint T;

    Executor(const CurveParams& e, MulMode m) : E(e), mode(m) { rep.mode = m; }

    void plain_double() {
        T = dbl(E, T);
        ++rep.doubles;
    }
    void plain_add(const CurvePoint& Q) {
        T = add(E, T, Q);
        ++rep.additions;
    }
    // T := 2T + Q (Q may be a negated table entry; negation is free).
    void double_then_add(const CurvePoint& Q) {
        if (mode == MulMode::kFused) {
            T = double_add(E, T, Q).point;
            ++rep.fused;
        } else {
            plain_double();
            plain_add(Q);
        }
    }
};

MulReport finish(Executor& ex, RingContext& ctx, const OpCount& start,
                 const OpCount& after_precomp) {
    ex.rep.precomp_ops = after_precomp - start;
    ex.rep.ops = ctx.counts() - after_precomp;
    ex.rep.result = ex.T;
    return std::move(ex.rep);
}

}  // namespace

MulReport mul_window(const CurveParams& E, const mpz_class& k, const CurvePoint& P,
                     int w, MulMode mode) {
    RingContext& ctx = E.ctx();
    Executor ex(E, mode);
    const OpCount start = ctx.counts();

    mpz_class kk = k;
    CurvePoint base = P;
    if (kk < 0) {
        kk = -kk;
        base = negate(E, base);
    }
    if (kk == 0) return finish(ex, ctx, start, start);

    // Odd multiples uP for u = 1, 3, ..., 2^w - 1.
    std::vector<CurvePoint> table(std::size_t(1) << (w > 1 ? w - 1 : 0));
    table[0] = base;
    if (w > 1) {
        CurvePoint twoP = dbl(E, base);
        for (std::size_t i = 1; 2 * i + 1 < (std::size_t(1) << w); ++i) {
            table[i] = add(E, table[i - 1], twoP);
            ++ex.rep.table_adds;
        }
    }
    const OpCount after_precomp = ctx.counts();

    ex.rep.bits = mpz_sizeinbase(kk.get_mpz_t(), 2);
    bool started = false;
    for (unsigned d : window_digits(kk, w)) {
        if (!started) {
            if (d == 0) continue;  // leading zero window
            int z = 0;
            while ((d & 1) == 0) {
                d >>= 1;
                ++z;
            }
            ex.T = table[d >> 1];
            for (int i = 0; i < z; ++i) ex.plain_double();
            started = true;
            continue;
        }
        if (d == 0) {
            for (int i = 0; i < w; ++i) ex.plain_double();
            continue;
        }
        int z = 0;
        while ((d & 1) == 0) {
            d >>= 1;
            ++z;
        }
        for (int i = 0; i < w - z - 1; ++i) ex.plain_double();
        ex.double_then_add(table[d >> 1]);
        for (int i = 0; i < z; ++i) ex.plain_double();
    }
    return finish(ex, ctx, start, after_precomp);
}

MulReport mul_naf(const CurveParams& E, const mpz_class& k, const CurvePoint& P,
                  MulMode mode) {
    RingContext& ctx = E.ctx();
    Executor ex(E, mode);
    const OpCount start = ctx.counts();

    mpz_class kk = k;
    CurvePoint base = P;
    if (kk < 0) {
        kk = -kk;
        base = negate(E, base);
    }
    if (kk == 0) return finish(ex, ctx, start, start);

    CurvePoint negBase = negate(E, base);
    const OpCount after_precomp = ctx.counts();
    ex.rep.bits = mpz_sizeinbase(kk.get_mpz_t(), 2);

    SignedDigits naf = recode_naf(kk);
    ex.T = base;  // leading digit of a NAF is always +1
    for (std::size_t i = 1; i < naf.digits.size(); ++i) {
        switch (naf.digits[i]) {
            case 0: ex.plain_double(); break;
            case 1: ex.double_then_add(base); break;
            case -1:
                if (mode == MulMode::kFused) {
                    ex.T = double_sub(E, ex.T, base).point;
                    ++ex.rep.fused;
                } else {
                    ex.plain_double();
                    ex.plain_add(negBase);
                }
                break;
        }
    }
    return finish(ex, ctx, start, after_precomp);
}

MulReport exec_chain(const CurveParams& E, std::span<const ChainStep> steps,
                     const CurvePoint& P, std::span<const CurvePoint> table,
                     MulMode mode) {
    RingContext& ctx = E.ctx();
    Executor ex(E, mode);
    const OpCount start = ctx.counts();
    ex.T = P;

    auto entry = [&](const ChainStep& s) -> const CurvePoint& {
        if (s.index < 1 || s.index > table.size())
            throw std::out_of_range("chain step table index out of range");
        return table[s.index - 1];
    };

    for (const ChainStep& s : steps) {
        switch (s.kind) {
            case StepKind::kDouble:
                ex.plain_double();
                break;
            case StepKind::kAdd:
                ex.plain_add(entry(s));
                break;
            case StepKind::kDoubleAdd:
                ex.double_then_add(entry(s));
                break;
            case StepKind::kDoubleSub:
                if (mode == MulMode::kFused) {
                    ex.T = double_sub(E, ex.T, entry(s)).point;
                    ++ex.rep.fused;
                } else {
                    ex.plain_double();
                    ex.plain_add(negate(E, entry(s)));
                }
                break;
            case StepKind::kTriple:
                if (mode == MulMode::kFused) {
                    ex.T = triple(E, ex.T);
                } else {
                    CurvePoint t0 = ex.T;
                    ex.T = add(E, dbl(E, t0), t0);
                }
                ++ex.rep.doubles;
                ++ex.rep.additions;
                break;
            case StepKind::kTripleAdd:
                if (mode == MulMode::kFused) {
                    ex.T = triple_add(E, ex.T, entry(s));
                } else {
                    ex.T = add(E, add(E, add(E, ex.T, entry(s)), ex.T), ex.T);
                }
                ++ex.rep.doubles;
                ex.rep.additions += 2;
                break;
        }
    }
    return finish(ex, ctx, start, start);
}

MulReport multi_mul(const CurveParams& E, std::span<const mpz_class> scalars,
                    std::span<const CurvePoint> points, MulMode mode) {
    if (scalars.size() != points.size())
        throw std::invalid_argument("multi_mul: scalar/point count mismatch");
    if (scalars.empty() || scalars.size() > 3)
        throw std::invalid_argument("multi_mul supports 1 to 3 pairs");

    RingContext& ctx = E.ctx();
    Executor ex(E, mode);
    const OpCount start = ctx.counts();
    const std::size_t t = scalars.size();

    std::vector<mpz_class> ks(scalars.begin(), scalars.end());
    std::vector<CurvePoint> ps(points.begin(), points.end());
    for (std::size_t i = 0; i < t; ++i)
        if (ks[i] < 0) {
            ks[i] = -ks[i];
            ps[i] = negate(E, ps[i]);
        }

    // Subset-sum table over the point set, indexed by lane mask.
    std::vector<CurvePoint> table(std::size_t(1) << t);
    for (std::size_t i = 0; i < t; ++i) table[std::size_t(1) << i] = ps[i];
    for (std::size_t mask = 1; mask < table.size(); ++mask) {
        if ((mask & (mask - 1)) == 0) continue;  // single lane
        std::size_t low = mask & (~mask + 1);
        table[mask] = add(E, table[mask ^ low], table[low]);
        ++ex.rep.table_adds;
    }
    const OpCount after_precomp = ctx.counts();

    std::size_t L = 0;
    for (const auto& k : ks)
        if (k > 0) L = std::max(L, mpz_sizeinbase(k.get_mpz_t(), 2));
    ex.rep.bits = L;

    bool started = false;
    for (std::size_t col = L; col-- > 0;) {
        std::size_t mask = 0;
        for (std::size_t i = 0; i < t; ++i)
            if (mpz_tstbit(ks[i].get_mpz_t(), col)) mask |= std::size_t(1) << i;
        if (!started) {
            if (mask == 0) continue;
            ex.T = table[mask];
            ex.rep.joint_masks.push_back(unsigned(mask));
            started = true;
            continue;
        }
        ex.rep.joint_masks.push_back(unsigned(mask));
        if (mask == 0)
            ex.plain_double();
        else
            ex.double_then_add(table[mask]);
    }
    return finish(ex, ctx, start, after_precomp);
}

}  // namespace ecfuse
