#ifndef ECFUSE_SERIALIZE_HPP
#define ECFUSE_SERIALIZE_HPP

#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "ecfuse/curve.hpp"
#include "ecfuse/modring.hpp"
#include "ecfuse/scalarmul.hpp"

/* JSON wire formats:
 *   big integers  "0x..." lowercase hex
 *   points        {"x": hex, "y": hex} or "infinity"
 *   curves        {"a1":..,"a2":..,"a3":..,"a4":..,"a6":..,"n": hex}
 *   counters      {"mul":..,"sqr":..,"div":..,"inv":..}
 *   chain steps   [{"op":"d"|"da"|"ds"|"a"|"t"|"ta", "idx": int}, ...]
 */

namespace ecfuse {

using nlohmann::json;

std::string to_hex(const mpz_class& v);
mpz_class parse_int(const std::string& s);  // 0x hex or decimal

json point_to_json(const CurvePoint& P);
json curve_to_json(const CurveParams& E);
json counts_to_json(const OpCount& c);
json chain_to_json(const std::vector<ChainStep>& steps);

/// Bundles a parsed curve with the context that owns its modulus.
struct LoadedCurve {
    std::unique_ptr<RingContext> ctx;
    std::unique_ptr<CurveParams> curve;
};

LoadedCurve curve_from_json(const json& j);
CurvePoint point_from_json(const json& j, RingContext& ctx);
std::vector<ChainStep> chain_from_json(const json& j);

json load_json_file(const std::string& path);

}  // namespace ecfuse

#endif
