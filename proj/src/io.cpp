#include "blowup/io.hpp"

#include <stdexcept>

namespace blowup {

using nlohmann::json;

json to_json(const PointII& p) {
    return json{{"germ", p.germ().str()}, {"radius_exp", p.radius_exp().str()}};
}

json to_json(const VertexSet& g) {
    json a = json::array();
    for (const auto& p : g.vertices()) a.push_back(to_json(p));
    return a;
}

json to_json(const DomainDescriptor& d) {
    json j;
    switch (d.kind) {
        case DomainDescriptor::Kind::Disk: j["kind"] = "disk"; break;
        case DomainDescriptor::Kind::Annulus: j["kind"] = "annulus"; break;
        case DomainDescriptor::Kind::InfinityDisk: j["kind"] = "infinity_disk"; break;
        case DomainDescriptor::Kind::MultiBoundary: j["kind"] = "multi_boundary"; break;
    }
    j["boundary"] = json::array();
    for (const auto& p : d.boundary) j["boundary"].push_back(to_json(p));
    if (d.kind == DomainDescriptor::Kind::Disk) j["direction"] = d.direction.str();
    if (d.contains_infinity) j["contains_infinity"] = true;
    return j;
}

json to_json(const BlowupOp& op) {
    switch (op.kind) {
        case BlowupOp::Kind::FreeAtInfinity:
            return json{{"op", "free_at_infinity"}, {"at", to_json(op.at)}};
        case BlowupOp::Kind::Free: {
            json j{{"op", "free"}, {"at", to_json(op.at)}};
            if (op.direction.kind == Direction::Kind::Generic) {
                j["direction"] = "generic";
                j["residue"] = op.direction.residue.str();
            } else {
                j["direction"] = "center";
            }
            return j;
        }
        case BlowupOp::Kind::Satellite:
            return json{{"op", "satellite"},
                        {"lower", to_json(op.lower)},
                        {"upper", to_json(op.upper)}};
    }
    throw std::logic_error("to_json: bad op");
}

json to_json(const BlowupScript& s) {
    json a = json::array();
    for (const auto& step : s) {
        json j = to_json(step.op);
        j["result"] = to_json(step.result);
        a.push_back(j);
    }
    return a;
}

json to_json(const Verdict& v) {
    json j;
    j["ok"] = v.ok;
    j["failures"] = json::array();
    for (const auto& [d, reason] : v.failures)
        j["failures"].push_back(json{{"domain", to_json(d)}, {"reason", reason}});
    return j;
}

PointII point_from_json(const json& j) {
    if (j.is_string()) return PointII::parse(j.get<std::string>());
    return PointII(PuiseuxGerm::parse(j.at("germ").get<std::string>()),
                   Frac::parse(j.at("radius_exp").get<std::string>()));
}

VertexSet set_from_json(const json& j) {
    std::vector<PointII> pts;
    for (const auto& e : j) pts.push_back(point_from_json(e));
    return VertexSet(std::move(pts));
}

BlowupOp op_from_json(const json& j) {
    std::string kind = j.at("op").get<std::string>();
    if (kind == "free_at_infinity") return BlowupOp::free_at_infinity(point_from_json(j.at("at")));
    if (kind == "free") {
        Direction d = j.at("direction").get<std::string>() == "center"
                          ? Direction::to_center()
                          : Direction::generic(Frac::parse(j.at("residue").get<std::string>()));
        return BlowupOp::free(point_from_json(j.at("at")), d);
    }
    if (kind == "satellite")
        return BlowupOp::satellite(point_from_json(j.at("lower")), point_from_json(j.at("upper")));
    throw std::invalid_argument("op_from_json: unknown op '" + kind + "'");
}

BlowupScript script_from_json(const json& j) {
    BlowupScript s;
    for (const auto& e : j) s.push_back({op_from_json(e), point_from_json(e.at("result"))});
    return s;
}

VertexSet parse_vertex_set(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    s = s.substr(b, e - b);
    if (s.empty() || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("vertex set: expected [zeta(...), ...]");
    s = s.substr(1, s.size() - 2);
    std::vector<PointII> pts;
    int depth = 0;
    size_t start = 0;
    for (size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] == '(') ++depth;
        else if (i < s.size() && s[i] == ')') --depth;
        else if (i == s.size() || (s[i] == ',' && depth == 0)) {
            std::string_view piece = s.substr(start, i - start);
            bool blank = true;
            for (char c : piece)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (!blank) pts.push_back(PointII::parse(piece));
            start = i + 1;
        }
    }
    return VertexSet(std::move(pts));
}

}  // namespace blowup
