#include "ecfuse/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace ecfuse {

std::string to_hex(const mpz_class& v) {
    if (v < 0) return "-0x" + mpz_class(-v).get_str(16);
    return "0x" + v.get_str(16);
}

mpz_class parse_int(const std::string& s) {
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), 0) != 0)
        throw std::invalid_argument("unparseable integer: " + s);
    return v;
}

json point_to_json(const CurvePoint& P) {
    if (P.is_infinity()) return json("infinity");
    return json{{"x", to_hex(P.x().value())}, {"y", to_hex(P.y().value())}};
}

json curve_to_json(const CurveParams& E) {
    return json{{"a1", to_hex(E.a1().value())}, {"a2", to_hex(E.a2().value())},
                {"a3", to_hex(E.a3().value())}, {"a4", to_hex(E.a4().value())},
                {"a6", to_hex(E.a6().value())},
                {"n", to_hex(E.ctx().modulus())}};
}

json counts_to_json(const OpCount& c) {
    return json{{"mul", c.mul}, {"sqr", c.sqr}, {"div", c.div}, {"inv", c.inv}};
}

namespace {

const char* op_name(StepKind k) {
    switch (k) {
        case StepKind::kDouble: return "d";
        case StepKind::kDoubleAdd: return "da";
        case StepKind::kDoubleSub: return "ds";
        case StepKind::kAdd: return "a";
        case StepKind::kTriple: return "t";
        case StepKind::kTripleAdd: return "ta";
    }
    throw std::logic_error("unreachable");
}

StepKind op_kind(const std::string& s) {
    if (s == "d") return StepKind::kDouble;
    if (s == "da") return StepKind::kDoubleAdd;
    if (s == "ds") return StepKind::kDoubleSub;
    if (s == "a") return StepKind::kAdd;
    if (s == "t") return StepKind::kTriple;
    if (s == "ta") return StepKind::kTripleAdd;
    throw std::invalid_argument("unknown chain op: " + s);
}

}  // namespace

json chain_to_json(const std::vector<ChainStep>& steps) {
    json out = json::array();
    for (const ChainStep& s : steps) {
        json j{{"op", op_name(s.kind)}};
        if (s.index != 0) j["idx"] = s.index;
        out.push_back(std::move(j));
    }
    return out;
}

LoadedCurve curve_from_json(const json& j) {
    LoadedCurve out;
    out.ctx = std::make_unique<RingContext>(parse_int(j.at("n")));
    RingContext& R = *out.ctx;
    auto coeff = [&](const char* name) {
        return j.contains(name) ? R(parse_int(j.at(name))) : R(0);
    };
    out.curve = std::make_unique<CurveParams>(coeff("a1"), coeff("a2"),
                                              coeff("a3"), coeff("a4"),
                                              coeff("a6"));
    return out;
}

CurvePoint point_from_json(const json& j, RingContext& ctx) {
    if (j.is_string()) {
        if (j.get<std::string>() == "infinity") return CurvePoint::infinity();
        throw std::invalid_argument("bad point literal: " + j.get<std::string>());
    }
    return CurvePoint(ctx(parse_int(j.at("x"))), ctx(parse_int(j.at("y"))));
}

std::vector<ChainStep> chain_from_json(const json& j) {
    std::vector<ChainStep> out;
    for (const json& e : j) {
        ChainStep s;
        s.kind = op_kind(e.at("op"));
        if (e.contains("idx")) s.index = e.at("idx").get<std::size_t>();
        out.push_back(s);
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

}  // namespace ecfuse
