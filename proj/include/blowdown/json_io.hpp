#pragma once

// JSON wire formats. Rationals travel as "p/q" strings in lowest terms,
// lattice vectors as two-element integer arrays. Parsing is strict:
// unknown fields are rejected and every error carries the JSON pointer
// of the offending value.

#include "blowdown/diagram.hpp"
#include "blowdown/domain.hpp"
#include "blowdown/surgery.hpp"

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace blowdown {

using json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    std::string pointer;
    ParseError(std::string ptr, const std::string& msg)
        : std::runtime_error(ptr.empty() ? msg : ptr + ": " + msg), pointer(std::move(ptr)) {}
};

namespace jio {

inline void require_object(const json& j, const std::string& ptr) {
    if (!j.is_object()) throw ParseError(ptr, "expected an object");
}

inline void require_array(const json& j, const std::string& ptr) {
    if (!j.is_array()) throw ParseError(ptr, "expected an array");
}

inline void check_fields(const json& j, const std::string& ptr,
                         std::initializer_list<const char*> allowed,
                         std::initializer_list<const char*> required) {
    require_object(j, ptr);
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known) throw ParseError(ptr + "/" + item.key(), "unknown field");
    }
    for (const char* k : required)
        if (!j.contains(k)) throw ParseError(ptr, std::string("missing required field '") + k + "'");
}

inline Int to_int(const json& j, const std::string& ptr) {
    try {
        if (j.is_number_integer()) return Int(j.get<long long>());
        if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
        if (j.is_string()) return parse_int(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError(ptr, e.what());
    }
    throw ParseError(ptr, "expected an integer (number or decimal string)");
}

inline int to_small_int(const json& j, const std::string& ptr) {
    Int v = to_int(j, ptr);
    if (v < -1000000 || v > 1000000) throw ParseError(ptr, "integer out of supported range");
    return static_cast<int>(v);
}

inline Rational to_rational(const json& j, const std::string& ptr) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
        if (j.is_number_unsigned()) return Rational(Int(j.get<unsigned long long>()));
    } catch (const std::exception& e) {
        throw ParseError(ptr, e.what());
    }
    throw ParseError(ptr, "expected a rational (\"p/q\" string or integer)");
}

inline bool to_bool(const json& j, const std::string& ptr) {
    if (!j.is_boolean()) throw ParseError(ptr, "expected a boolean");
    return j.get<bool>();
}

inline std::string to_string(const json& j, const std::string& ptr) {
    if (!j.is_string()) throw ParseError(ptr, "expected a string");
    return j.get<std::string>();
}

inline json from_int(const Int& v) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (v >= lo && v <= hi) return json(static_cast<long long>(v));
    return json(v.str());
}

inline json from_rational(const Rational& r) { return json(format_rational(r)); }

}  // namespace jio

inline json to_json(const LatticeVec& v) { return json::array({jio::from_int(v.x), jio::from_int(v.y)}); }

inline LatticeVec parse_lattice_vec(const json& j, const std::string& ptr) {
    jio::require_array(j, ptr);
    if (j.size() != 2) throw ParseError(ptr, "expected a two-element integer array");
    return {jio::to_int(j[0], ptr + "/0"), jio::to_int(j[1], ptr + "/1")};
}

inline json to_json(const RatPoint& p) {
    return json::array({jio::from_rational(p.x), jio::from_rational(p.y)});
}

inline RatPoint parse_point(const json& j, const std::string& ptr) {
    jio::require_array(j, ptr);
    if (j.size() != 2) throw ParseError(ptr, "expected a two-element rational array");
    return {jio::to_rational(j[0], ptr + "/0"), jio::to_rational(j[1], ptr + "/1")};
}

inline json to_json(const Edge& e) {
    json j;
    j["direction"] = to_json(e.direction);
    j["start"] = e.start ? to_json(*e.start) : json(nullptr);
    j["end"] = e.end ? to_json(*e.end) : json(nullptr);
    j["closed"] = e.closed;
    return j;
}

inline Edge parse_edge(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"direction", "start", "end", "closed"},
                      {"direction", "start", "end", "closed"});
    Edge e;
    e.direction = parse_lattice_vec(j["direction"], ptr + "/direction");
    if (!j["start"].is_null()) e.start = parse_point(j["start"], ptr + "/start");
    if (!j["end"].is_null()) e.end = parse_point(j["end"], ptr + "/end");
    e.closed = jio::to_bool(j["closed"], ptr + "/closed");
    return e;
}

inline json to_json(const PolyDomain& d) {
    json edges = json::array();
    for (const Edge& e : d.edges()) edges.push_back(to_json(e));
    json excluded = json::array();
    for (std::size_t i = 0; i < d.vertex_count(); ++i)
        if (d.corner_excluded(i)) excluded.push_back(i);
    json j;
    j["edges"] = std::move(edges);
    j["excluded_corners"] = std::move(excluded);
    return j;
}

inline PolyDomain parse_domain(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"edges", "excluded_corners"}, {"edges"});
    jio::require_array(j["edges"], ptr + "/edges");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < j["edges"].size(); ++i)
        edges.push_back(parse_edge(j["edges"][i], ptr + "/edges/" + std::to_string(i)));
    std::vector<bool> excluded(edges.empty() ? 0 : edges.size() - 1, false);
    if (j.contains("excluded_corners")) {
        const json& ex = j["excluded_corners"];
        jio::require_array(ex, ptr + "/excluded_corners");
        for (std::size_t i = 0; i < ex.size(); ++i) {
            std::string p = ptr + "/excluded_corners/" + std::to_string(i);
            Int idx = jio::to_int(ex[i], p);
            if (idx < 0 || idx >= Int(excluded.size())) throw ParseError(p, "corner index out of range");
            excluded[static_cast<std::size_t>(idx)] = true;
        }
    }
    try {
        return PolyDomain(std::move(edges), std::move(excluded));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

inline json to_json(const std::vector<EdgeInvariant>& invs) {
    json j = json::array();
    for (const EdgeInvariant& i : invs) {
        json e;
        e["area"] = jio::from_rational(i.area);
        e["self_intersection"] = jio::from_int(i.self_intersection);
        j.push_back(std::move(e));
    }
    return j;
}

inline json to_json(const CfExpansion& e) {
    json terms = json::array();
    for (const Int& b : e.terms()) terms.push_back(jio::from_int(b));
    return terms;
}

inline CfExpansion parse_cf_terms(const json& j, const std::string& ptr) {
    jio::require_array(j, ptr);
    std::vector<Int> terms;
    for (std::size_t i = 0; i < j.size(); ++i)
        terms.push_back(jio::to_int(j[i], ptr + "/" + std::to_string(i)));
    try {
        return CfExpansion(std::move(terms));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

inline json to_json(const ChainSpec& c) {
    json areas = json::array();
    for (const Rational& a : c.areas) areas.push_back(jio::from_rational(a));
    json j;
    j["n"] = c.n;
    j["areas"] = std::move(areas);
    return j;
}

inline ChainSpec parse_chain_spec(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"n", "areas"}, {"n", "areas"});
    int n = jio::to_small_int(j["n"], ptr + "/n");
    jio::require_array(j["areas"], ptr + "/areas");
    std::vector<Rational> areas;
    for (std::size_t i = 0; i < j["areas"].size(); ++i)
        areas.push_back(jio::to_rational(j["areas"][i], ptr + "/areas/" + std::to_string(i)));
    try {
        return ChainSpec(n, std::move(areas));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

inline json to_json(const BallSpec& b) {
    json j;
    j["alpha_plus"] = jio::from_rational(b.alpha_plus);
    j["alpha_minus"] = jio::from_rational(b.alpha_minus);
    return j;
}

inline BallSpec parse_ball_spec(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"alpha_plus", "alpha_minus"}, {"alpha_plus", "alpha_minus"});
    return {jio::to_rational(j["alpha_plus"], ptr + "/alpha_plus"),
            jio::to_rational(j["alpha_minus"], ptr + "/alpha_minus")};
}

inline json to_json(const ManifoldInvariants& m) {
    json j;
    j["euler"] = jio::from_int(m.euler);
    j["signature"] = jio::from_int(m.signature);
    j["b2"] = jio::from_int(m.b2);
    j["volume"] = jio::from_rational(m.volume);
    return j;
}

inline ManifoldInvariants parse_invariants(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"euler", "signature", "b2", "volume"},
                      {"euler", "signature", "b2", "volume"});
    try {
        return ManifoldInvariants(jio::to_int(j["euler"], ptr + "/euler"),
                                  jio::to_int(j["signature"], ptr + "/signature"),
                                  jio::to_int(j["b2"], ptr + "/b2"),
                                  jio::to_rational(j["volume"], ptr + "/volume"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

inline json to_json(const UnimodularMap& f) {
    const Mat2& b = f.linear();
    json j;
    j["matrix"] = json::array({json::array({jio::from_int(b.a), jio::from_int(b.b)}),
                               json::array({jio::from_int(b.c), jio::from_int(b.d)})});
    j["translation"] = to_json(f.translation());
    return j;
}

inline UnimodularMap parse_unimodular_map(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"matrix", "translation"}, {"matrix", "translation"});
    const json& m = j["matrix"];
    jio::require_array(m, ptr + "/matrix");
    if (m.size() != 2) throw ParseError(ptr + "/matrix", "expected two rows");
    auto row = [&](std::size_t i) {
        std::string p = ptr + "/matrix/" + std::to_string(i);
        jio::require_array(m[i], p);
        if (m[i].size() != 2) throw ParseError(p, "expected two entries");
        return std::pair<Int, Int>{jio::to_int(m[i][0], p + "/0"), jio::to_int(m[i][1], p + "/1")};
    };
    auto [a, b] = row(0);
    auto [c, d] = row(1);
    try {
        return UnimodularMap(Mat2{a, b, c, d}, parse_point(j["translation"], ptr + "/translation"));
    } catch (const std::invalid_argument& e) {
        throw ParseError(ptr, e.what());
    }
}

inline json to_json(const FitReport& r) {
    json j;
    j["feasible"] = r.feasible;
    j["margin"] = jio::from_rational(r.margin);
    j["phi1"] = to_json(r.phi1);
    j["phi2"] = to_json(r.phi2);
    if (!r.feasible) j["reason"] = r.reason;
    return j;
}

inline json to_json(const BlowdownReport& r) {
    json j;
    j["path"] = r.fit ? "rational-ball" : "conic-sum";
    j["fit"] = r.fit ? to_json(*r.fit) : json(nullptr);
    j["volume_delta"] = jio::from_rational(r.volume_delta);
    json d;
    d["euler"] = jio::from_int(r.deltas.euler);
    d["signature"] = jio::from_int(r.deltas.signature);
    d["b2"] = jio::from_int(r.deltas.b2);
    d["c1_squared"] = jio::from_int(r.deltas.c1_squared);
    d["volume"] = jio::from_rational(r.deltas.volume);
    j["deltas"] = std::move(d);
    j["new_invariants"] = to_json(r.new_invariants);
    return j;
}

inline json to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(jio::from_int(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const SumDiagram& d) {
    json surfaces = json::array();
    for (const Surface& s : d.surfaces) {
        json e;
        e["id"] = s.id;
        e["host"] = s.host;
        e["self_intersection"] = jio::from_int(s.self_intersection);
        surfaces.push_back(std::move(e));
    }
    json pairings = json::array();
    for (const auto& p : d.pairings) pairings.push_back(json::array({p[0], p[1]}));
    json triples = json::array();
    for (const auto& t : d.triple_points) triples.push_back(json::array({t[0], t[1], t[2]}));
    json j;
    j["surfaces"] = std::move(surfaces);
    j["pairings"] = std::move(pairings);
    j["triple_points"] = std::move(triples);
    return j;
}

inline SumDiagram parse_diagram(const json& j, const std::string& ptr) {
    jio::check_fields(j, ptr, {"surfaces", "pairings", "triple_points"}, {"surfaces", "pairings"});
    SumDiagram d;
    const json& surfaces = j["surfaces"];
    jio::require_array(surfaces, ptr + "/surfaces");
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        std::string p = ptr + "/surfaces/" + std::to_string(i);
        jio::check_fields(surfaces[i], p, {"id", "host", "self_intersection"},
                          {"id", "host", "self_intersection"});
        d.surfaces.push_back({jio::to_string(surfaces[i]["id"], p + "/id"),
                              jio::to_string(surfaces[i]["host"], p + "/host"),
                              jio::to_int(surfaces[i]["self_intersection"], p + "/self_intersection")});
    }
    const json& pairings = j["pairings"];
    jio::require_array(pairings, ptr + "/pairings");
    for (std::size_t i = 0; i < pairings.size(); ++i) {
        std::string p = ptr + "/pairings/" + std::to_string(i);
        jio::require_array(pairings[i], p);
        if (pairings[i].size() != 2) throw ParseError(p, "expected a pair of surface ids");
        d.pairings.push_back({jio::to_string(pairings[i][0], p + "/0"),
                              jio::to_string(pairings[i][1], p + "/1")});
    }
    if (j.contains("triple_points")) {
        const json& triples = j["triple_points"];
        jio::require_array(triples, ptr + "/triple_points");
        for (std::size_t i = 0; i < triples.size(); ++i) {
            std::string p = ptr + "/triple_points/" + std::to_string(i);
            jio::require_array(triples[i], p);
            if (triples[i].size() != 3) throw ParseError(p, "expected three pairing indices");
            std::array<std::size_t, 3> t{};
            for (std::size_t k = 0; k < 3; ++k) {
                Int idx = jio::to_int(triples[i][k], p + "/" + std::to_string(k));
                if (idx < 0) throw ParseError(p + "/" + std::to_string(k), "negative pairing index");
                t[k] = static_cast<std::size_t>(idx);
            }
            d.triple_points.push_back(t);
        }
    }
    return d;
}

inline json to_json(const DiagramVerdict& v) {
    json pairings = json::array();
    for (const PairingCheck& c : v.pairings) {
        json e;
        e["pairing"] = c.pairing;
        e["surfaces"] = json::array({c.ids[0], c.ids[1]});
        e["self_intersection_sum"] = jio::from_int(c.self_intersection_sum);
        e["triple_points"] = jio::from_int(c.triple_count);
        e["residual"] = jio::from_int(c.residual);
        e["ok"] = c.ok;
        pairings.push_back(std::move(e));
    }
    json j;
    j["valid"] = v.valid;
    j["pairings"] = std::move(pairings);
    return j;
}

}  // namespace blowdown
