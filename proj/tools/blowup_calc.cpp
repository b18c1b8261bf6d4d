#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "blowup/farey.hpp"
#include "blowup/io.hpp"
#include "blowup/models.hpp"
#include "blowup/skew.hpp"
#include "selftest.hpp"

using namespace blowup;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// --set accepts an inline [zeta(...), ...] expression or a file holding that
// form or the JSON array of point objects.
VertexSet load_set(const std::string& arg) {
    std::string text = arg;
    if (text.find('[') == std::string::npos) text = slurp(arg);
    if (text.find("zeta") != std::string::npos) return parse_vertex_set(text);
    return set_from_json(json::parse(text));
}

SkewProduct load_phi(const std::string& arg) {
    std::string text = arg;
    size_t i = text.find_first_not_of(" \t\r\n");
    if (i == std::string::npos || text[i] != '(') text = slurp(arg);
    return SkewProduct::parse(text);
}

std::string point_line(const PointII& p) {
    Invariants i = invariants(p);
    return p.str() + "  (a,b,m)=(" + i.a.get_str() + "," + i.b.get_str() + "," + i.m.get_str() +
           ")  " + (is_free(p) ? "free" : "satellite");
}

void print_script(const BlowupScript& script, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(script).dump(2) << "\n";
        return;
    }
    for (size_t i = 0; i < script.size(); ++i)
        std::cout << i + 1 << ". " << script[i].op.str() << "  ->  " << script[i].result.str()
                  << "\n";
    std::cout << script.size() << " blowups\n";
}

void print_verdict(const Verdict& v, const std::string& format) {
    if (format == "json") {
        std::cout << to_json(v).dump(2) << "\n";
        return;
    }
    if (v.ok) {
        std::cout << "smooth: every domain is Farey\n";
        return;
    }
    std::cout << "not smooth: " << v.failures.size() << " failing domain(s)\n";
    for (const auto& [d, reason] : v.failures)
        std::cout << "  " << d.str() << ": " << reason << "\n";
}

json verdict_json(const MapVerdict& v) {
    json j;
    j["vertices"] = json::array();
    for (const auto& vv : v.vertices) {
        json e{{"source", to_json(vv.source)}, {"image", to_json(vv.image)}};
        e["verdict"] =
            vv.kind == VertexVerdict::Kind::MapsToDivisor ? "maps_to_divisor" : "contracted";
        if (vv.target_domain) e["target_domain"] = to_json(*vv.target_domain);
        j["vertices"].push_back(e);
    }
    j["domains"] = json::array();
    for (const auto& dv : v.domains) {
        json e{{"domain", to_json(dv.domain)}};
        switch (dv.kind) {
            case DomainVerdict::Kind::Continuous:
                e["verdict"] = "continuous";
                if (dv.image_domain) e["image_domain"] = to_json(*dv.image_domain);
                break;
            case DomainVerdict::Kind::Indeterminate: {
                e["verdict"] = "indeterminate";
                json hits = json::array();
                for (const auto& h : dv.hits) hits.push_back(to_json(h));
                e["hits"] = hits;
                break;
            }
            case DomainVerdict::Kind::Unknown:
                e["verdict"] = "unknown";
                e["note"] = dv.note;
                break;
        }
        j["domains"].push_back(e);
    }
    return j;
}

int run_farey(const std::vector<std::string>& args) {
    if (args.empty()) throw std::invalid_argument("farey: expected an operation");
    const std::string& op = args[0];
    auto need = [&](size_t n) {
        if (args.size() != n + 1)
            throw std::invalid_argument("farey " + op + ": expected " + std::to_string(n) +
                                        " arguments");
    };
    if (op == "mediant") {
        need(2);
        std::cout << mediant(FareyPair::parse(args[1]), FareyPair::parse(args[2])).str() << "\n";
    } else if (op == "bracket") {
        need(2);
        std::cout << bracket(FareyPair::parse(args[1]), FareyPair::parse(args[2])).get_str()
                  << "\n";
    } else if (op == "adjacent") {
        need(2);
        bool adj = is_adjacent(FareyPair::parse(args[1]), FareyPair::parse(args[2]));
        std::cout << (adj ? "adjacent" : "not adjacent") << "\n";
        return adj ? kOk : kNegative;
    } else if (op == "parents") {
        need(1);
        auto [lo, hi] = parents(FareyPair::parse(args[1]));
        std::cout << lo.str() << " " << hi.str() << "\n";
    } else if (op == "haros") {
        need(3);
        auto [m, n] = haros_coeffs(FareyPair::parse(args[1]), FareyPair::parse(args[2]),
                                   FareyPair::parse(args[3]));
        std::cout << m.get_str() << " " << n.get_str() << "\n";
    } else if (op == "path") {
        need(3);
        auto path = stern_brocot_path(FareyPair::parse(args[1]), FareyPair::parse(args[2]),
                                      FareyPair::parse(args[3]));
        for (const auto& p : path) std::cout << p.str() << "\n";
        std::cout << path.size() << " mediants\n";
    } else if (op == "sequence") {
        need(3);
        auto seq = complete_sequence(mpz_class(args[1]), mpz_class(args[2]), mpz_class(args[3]));
        json a = json::array();
        for (const auto& p : seq) a.push_back(p.str());
        std::cout << a.dump() << "\n";
    } else {
        throw std::invalid_argument("farey: unknown operation '" + op + "'");
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculus of blowups on the Berkovich projective line over the "
                 "Puiseux series"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto* farey_cmd = app.add_subcommand("farey", "Farey pair arithmetic");
    std::vector<std::string> farey_args;
    farey_cmd->add_option("args", farey_args, "operation and fractions")->expected(-1);

    std::string point_expr;
    auto* point_cmd = app.add_subcommand("point", "Invariants of a Type II point");
    point_cmd->add_option("point", point_expr, "zeta(<germ>, <p/q>)")->required();

    std::string target_expr, base_arg = "[zeta(0, 0)]";
    auto* resolve_cmd = app.add_subcommand("resolve", "Minimal blowup script reaching a point");
    resolve_cmd->add_option("--target", target_expr, "target point")->required();
    resolve_cmd->add_option("--base", base_arg, "base vertex set (inline or file)");

    std::string set_arg;
    auto* check_cmd = app.add_subcommand("check", "Farey smoothness of a vertex set");
    check_cmd->add_option("--set", set_arg, "vertex set (inline or file)")->required();

    std::string script_file, apply_base = "[zeta(0, 0)]";
    auto* apply_cmd = app.add_subcommand("apply", "Replay a blowup script");
    apply_cmd->add_option("--script", script_file, "script JSON file")->required();
    apply_cmd->add_option("--base", apply_base, "base vertex set (inline or file)");

    std::string dec_set;
    auto* dec_cmd = app.add_subcommand("deconstruct", "Blowdown order for a vertex set");
    dec_cmd->add_option("--set", dec_set, "vertex set (inline or file)")->required();

    std::string graph_set, graph_format = "dot";
    auto* graph_cmd = app.add_subcommand("graph", "Dual graph export");
    graph_cmd->add_option("--set", graph_set, "vertex set (inline or file)")->required();
    graph_cmd->add_option("--graph-format", graph_format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));

    std::string phi_arg, map_point;
    int samples = 0;
    std::string order_cap = "0";
    auto* map_cmd = app.add_subcommand("map", "Image of a point under a skew product");
    map_cmd->add_option("--phi", phi_arg, "skew product (inline or file)")->required();
    map_cmd->add_option("--point", map_point, "zeta(...) or a Type I germ")->required();
    map_cmd->add_option("--samples", samples, "residue sample count override");
    map_cmd->add_option("--jet-order-cap", order_cap, "cap on the working jet order");

    std::string orbit_phi, orbit_point;
    int steps = 5;
    auto* orbit_cmd = app.add_subcommand("orbit", "Iterated images of a Type II point");
    orbit_cmd->add_option("--phi", orbit_phi, "skew product (inline or file)")->required();
    orbit_cmd->add_option("--point", orbit_point, "zeta(...)")->required();
    orbit_cmd->add_option("--steps", steps, "iteration count")->check(CLI::NonNegativeNumber);
    orbit_cmd->add_option("--samples", samples, "residue sample count override");
    orbit_cmd->add_option("--jet-order-cap", order_cap, "cap on the working jet order");

    std::string cls_phi, cls_src, cls_tgt;
    auto* cls_cmd = app.add_subcommand("classify", "Contraction/indeterminacy verdicts");
    cls_cmd->add_option("--phi", cls_phi, "skew product (inline or file)")->required();
    cls_cmd->add_option("--src", cls_src, "source vertex set")->required();
    cls_cmd->add_option("--tgt", cls_tgt, "target vertex set")->required();

    unsigned long seed = 0x5eedULL;
    auto* self_cmd = app.add_subcommand("selftest", "Replay the golden cases");
    self_cmd->add_option("--seed", seed, "seed for the randomized consistency group");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (farey_cmd->parsed()) return run_farey(farey_args);
        if (point_cmd->parsed()) {
            PointII p = PointII::parse(point_expr);
            if (format == "json") {
                Invariants i = invariants(p);
                json j{{"point", to_json(p)},     {"a", i.a.get_str()},
                       {"b", i.b.get_str()},      {"m", i.m.get_str()},
                       {"free", is_free(p)},      {"integral", is_integral(p)}};
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << point_line(p) << "\n";
            }
            return kOk;
        }
        if (resolve_cmd->parsed()) {
            BlowupScript script = resolve(PointII::parse(target_expr), load_set(base_arg));
            print_script(script, format);
            return kOk;
        }
        if (check_cmd->parsed()) {
            Verdict v = check_smooth(load_set(set_arg));
            print_verdict(v, format);
            return v.ok ? kOk : kNegative;
        }
        if (apply_cmd->parsed()) {
            BlowupScript script = script_from_json(json::parse(slurp(script_file)));
            VertexSet g = replay(load_set(apply_base), script);
            if (format == "json")
                std::cout << to_json(g).dump(2) << "\n";
            else
                for (const auto& p : g.vertices()) std::cout << point_line(p) << "\n";
            return kOk;
        }
        if (dec_cmd->parsed()) {
            DeconstructResult r = deconstruct(load_set(dec_set));
            if (format == "json") {
                json j{{"ok", r.ok}};
                if (r.ok) {
                    j["seed"] = to_json(r.seed);
                    j["script"] = to_json(r.script);
                } else {
                    j["stuck"] = to_json(r.stuck);
                    j["reason"] = r.reason;
                }
                std::cout << j.dump(2) << "\n";
            } else if (r.ok) {
                std::cout << "deconstructs to seed " << r.seed.vertices().front().str() << "\n";
                print_script(r.script, format);
            } else {
                std::cout << "stuck: " << r.reason << "\n";
            }
            return r.ok ? kOk : kNegative;
        }
        if (graph_cmd->parsed()) {
            GraphFormat gf = graph_format == "dot" ? GraphFormat::Dot : GraphFormat::Json;
            std::cout << export_dual_graph(load_set(graph_set), gf);
            return kOk;
        }
        if (map_cmd->parsed()) {
            SkewProduct phi = load_phi(phi_arg);
            if (map_point.find("zeta") != std::string::npos) {
                PointII img = map_pointII(phi, PointII::parse(map_point), samples,
                                          Frac::parse(order_cap));
                std::cout << (format == "json" ? to_json(img).dump(2) : point_line(img)) << "\n";
            } else {
                ImageI img = map_pointI(phi, PointI::parse(map_point), Frac(16));
                std::cout << (img.infinite ? "inf" : img.jet.str()) << "\n";
            }
            return kOk;
        }
        if (orbit_cmd->parsed()) {
            auto pts = orbit(load_phi(orbit_phi), PointII::parse(orbit_point), steps, samples,
                             Frac::parse(order_cap));
            if (format == "json") {
                json a = json::array();
                for (const auto& p : pts) a.push_back(to_json(p));
                std::cout << a.dump(2) << "\n";
            } else {
                for (const auto& p : pts) std::cout << point_line(p) << "\n";
            }
            return kOk;
        }
        if (cls_cmd->parsed()) {
            MapVerdict v = classify(load_phi(cls_phi), load_set(cls_src), load_set(cls_tgt));
            if (format == "json") {
                std::cout << verdict_json(v).dump(2) << "\n";
                return kOk;
            }
            for (const auto& vv : v.vertices) {
                std::cout << vv.source.str() << ": ";
                if (vv.kind == VertexVerdict::Kind::MapsToDivisor)
                    std::cout << "maps to divisor " << vv.image.str() << "\n";
                else
                    std::cout << "contracted into " << vv.target_domain->str() << " (image "
                              << vv.image.str() << ")\n";
            }
            for (const auto& dv : v.domains) {
                std::cout << dv.domain.str() << ": ";
                switch (dv.kind) {
                    case DomainVerdict::Kind::Continuous:
                        std::cout << "continuous into " << dv.image_domain->str() << "\n";
                        break;
                    case DomainVerdict::Kind::Indeterminate:
                        std::cout << "indeterminate, hits";
                        for (const auto& h : dv.hits) std::cout << " " << h.str();
                        std::cout << "\n";
                        break;
                    case DomainVerdict::Kind::Unknown:
                        std::cout << "unknown (" << dv.note << ")\n";
                        break;
                }
            }
            return kOk;
        }
        if (self_cmd->parsed()) return selftest::run(seed) ? kOk : kNegative;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::string what = e.what();
        if (what.find("parse") != std::string::npos ||
            what.find("cannot open") != std::string::npos ||
            what.find("expected") != std::string::npos || what.find("unknown") != std::string::npos)
            return kUsage;
        return kNegative;
    }
    return kUsage;
}
