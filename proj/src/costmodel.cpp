#include "ecfuse/costmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace ecfuse::costmodel {

CostBreakdown scalar_cost(const CostParams& p, ScalarVariant variant) {
    const double n = p.n, e = p.epsilon;
    CostBreakdown out;
    switch (variant) {
        case ScalarVariant::kConventional:
            out.squarings = (2 + e) * n;
            out.multiplications = (1 + e) * n;
            break;
        case ScalarVariant::kSaveSqr:
            out.squarings = 2 * n;
            out.multiplications = (1 + e) * n;
            break;
        case ScalarVariant::kFused:
            out.squarings = 2 * n;
            out.multiplications = n;
            break;
    }
    out.divisions = (1 + e) * n;
    out.total_mul_equiv =
        out.squarings + out.multiplications + p.divcost() * out.divisions;
    return out;
}

double scalar_savings(double epsilon, double alpha) {
    return 2 * epsilon / ((4 + alpha) + (3 + alpha) * epsilon);
}

double pairing_cost(double n, double divcost, PairingMode mode) {
    if (n < 1) throw std::invalid_argument("pairing_cost requires n >= 1");
    const double doubles = 2 * n / 3, fused = n / 3;
    switch (mode) {
        case PairingMode::kStandard:
            return (11 + divcost) * doubles + (21 + 2 * divcost) * fused;
        case PairingMode::kParabola:
            return (11 + divcost) * doubles + (16 + 2 * divcost) * fused;
        case PairingMode::kTraceStandard:
            return 8 * doubles + 16 * fused;  // 32n/3
        case PairingMode::kTraceParabola:
            return 8 * doubles + 12 * fused;  // 28n/3
    }
    throw std::logic_error("unreachable");
}

EcmBreakeven ecm_breakeven(double inv_cost, double sqr_cost, double mul_cost) {
    EcmBreakeven out;
    out.ladder_cost = 2 * sqr_cost + 6 * mul_cost;
    out.fused_division_cost = (4.0 / 3.0) * (inv_cost + mul_cost);
    const double diff = out.ladder_cost - out.fused_division_cost;
    out.tie = std::abs(diff) < 1e-12;
    out.fused_superior = diff > 0 && !out.tie;
    return out;
}

}  // namespace ecfuse::costmodel
