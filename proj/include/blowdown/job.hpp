#pragma once

// Job dispatch behind the CLI: a schema-checked JSON job document in,
// a JSON report or SVG document out. Exit status policy: 0 for
// success/feasible, 1 for a well-formed negative verdict (failed fit,
// invalid diagram), 2 for invalid input.

#include "blowdown/json_io.hpp"
#include "blowdown/svg.hpp"

#include <string>

namespace blowdown {

struct JobResult {
    int exit_code = 0;
    std::string output;
    bool svg = false;
};

namespace detail {

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline RenderOptions parse_render_options(const json& payload, const std::string& ptr) {
    RenderOptions opt;
    if (!payload.contains("options")) return opt;
    const json& j = payload["options"];
    std::string p = ptr + "/options";
    jio::check_fields(j, p, {"scale", "collar_epsilon", "labels", "horizon"}, {});
    if (j.contains("scale")) {
        opt.scale = jio::to_rational(j["scale"], p + "/scale");
        if (opt.scale <= 0) throw ParseError(p + "/scale", "scale must be positive");
    }
    if (j.contains("collar_epsilon")) {
        opt.collar_epsilon = jio::to_rational(j["collar_epsilon"], p + "/collar_epsilon");
        if (*opt.collar_epsilon <= 0)
            throw ParseError(p + "/collar_epsilon", "collar epsilon must be positive");
    }
    if (j.contains("horizon")) {
        opt.horizon = jio::to_rational(j["horizon"], p + "/horizon");
        if (*opt.horizon <= 0) throw ParseError(p + "/horizon", "horizon must be positive");
    }
    if (j.contains("labels")) opt.labels = jio::to_bool(j["labels"], p + "/labels");
    return opt;
}

inline json lens_json(const Int& n, const Int& m) {
    json j;
    j["n"] = jio::from_int(n);
    j["m"] = jio::from_int(m);
    return j;
}

inline json domain_report(const PolyDomain& d) {
    json j;
    j["domain"] = to_json(d);
    j["edge_invariants"] = to_json(edge_sphere_invariants(d));
    auto [n, m] =
        lens_from_corner(-d.edges().front().direction, d.edges().back().direction);
    j["boundary"] = lens_json(n, m);
    return j;
}

inline JobResult run_cf(const json& payload) {
    jio::check_fields(payload, "/payload", {"n", "m", "terms"}, {});
    json out;
    if (payload.contains("terms")) {
        if (payload.contains("n") || payload.contains("m"))
            throw ParseError("/payload", "give either n and m or terms, not both");
        CfExpansion e = parse_cf_terms(payload["terms"], "/payload/terms");
        auto [n, m] = neg_cf_eval(e);
        out["n"] = jio::from_int(n);
        out["m"] = jio::from_int(m);
        out["terms"] = to_json(e);
    } else {
        if (!payload.contains("n") || !payload.contains("m"))
            throw ParseError("/payload", "missing required fields 'n' and 'm'");
        Int n = jio::to_int(payload["n"], "/payload/n");
        Int m = jio::to_int(payload["m"], "/payload/m");
        CfExpansion e = neg_cf_expand(n, m);
        out["n"] = jio::from_int(n);
        out["m"] = jio::from_int(m);
        out["terms"] = to_json(e);
    }
    return {0, dump(out), false};
}

inline JobResult run_lens(const json& payload) {
    jio::check_fields(payload, "/payload", {"u", "v"}, {"u", "v"});
    auto [n, m] = lens_from_corner(parse_lattice_vec(payload["u"], "/payload/u"),
                                   parse_lattice_vec(payload["v"], "/payload/v"));
    return {0, dump(lens_json(n, m)), false};
}

inline JobResult run_chain(const json& payload) {
    jio::check_fields(payload, "/payload", {"n", "areas", "collar"}, {"n", "areas"});
    bool collar = payload.contains("collar") && jio::to_bool(payload["collar"], "/payload/collar");
    ChainSpec c = parse_chain_spec(payload, "/payload");
    PolyDomain d = collar ? make_chain_collar(c.n, c.areas) : make_chain_domain(c.n, c.areas);
    json out = domain_report(d);
    out["budget"] = jio::from_rational(chain_budget(c));
    return {0, dump(out), false};
}

inline JobResult run_plumbing(const json& payload) {
    jio::check_fields(payload, "/payload", {"terms", "areas"}, {"terms"});
    CfExpansion b = parse_cf_terms(payload["terms"], "/payload/terms");
    std::vector<Rational> areas(b.size(), Rational(1));
    if (payload.contains("areas")) {
        areas.clear();
        jio::require_array(payload["areas"], "/payload/areas");
        for (std::size_t i = 0; i < payload["areas"].size(); ++i)
            areas.push_back(
                jio::to_rational(payload["areas"][i], "/payload/areas/" + std::to_string(i)));
    }
    PolyDomain d = make_general_plumbing_domain(b, areas);
    json out = domain_report(d);
    IntMatrix m = plumbing_matrix(b);
    out["intersection_form"] = to_json(m);
    out["determinant"] = jio::from_int(determinant(m));
    out["negative_definite"] = is_negative_definite(m);
    auto [ln, lm] = neg_cf_eval(b);
    out["lens"] = lens_json(ln, lm);
    return {0, dump(out), false};
}

inline JobResult run_fit(const json& payload) {
    jio::check_fields(payload, "/payload", {"chain", "ball"}, {"chain", "ball"});
    ChainSpec c = parse_chain_spec(payload["chain"], "/payload/chain");
    BallSpec b = parse_ball_spec(payload["ball"], "/payload/ball");
    FitReport r = ball_feasible(c, b);
    return {r.feasible ? 0 : 1, dump(to_json(r)), false};
}

inline JobResult run_blowdown(const json& payload) {
    jio::check_fields(payload, "/payload", {"chain", "invariants", "ball"},
                      {"chain", "invariants"});
    ChainSpec c = parse_chain_spec(payload["chain"], "/payload/chain");
    ManifoldInvariants m = parse_invariants(payload["invariants"], "/payload/invariants");
    std::optional<BallSpec> ball;
    if (payload.contains("ball")) ball = parse_ball_spec(payload["ball"], "/payload/ball");
    if (ball && c.n >= 3) {
        FitReport fr = ball_feasible(c, *ball);
        if (!fr.feasible) {
            json out = to_json(fr);
            out["error"] = "explicit ball does not fit";
            return {1, dump(out), false};
        }
    }
    BlowdownReport rep = blowdown_report(m, c, ball);
    return {0, dump(to_json(rep)), false};
}

inline JobResult run_diagram(const json& payload) {
    SumDiagram d = parse_diagram(payload, "/payload");
    DiagramVerdict v = validate_threefold_diagram(d);
    return {v.valid ? 0 : 1, dump(to_json(v)), false};
}

inline JobResult run_render(const json& payload) {
    if (!payload.contains("kind")) throw ParseError("/payload", "missing required field 'kind'");
    std::string kind = jio::to_string(payload["kind"], "/payload/kind");
    if (kind == "wedge")
        jio::check_fields(payload, "/payload", {"kind", "wedge", "shade", "options"}, {"kind"});
    else if (kind == "chain")
        jio::check_fields(payload, "/payload", {"kind", "chain", "collar", "shade", "options"},
                          {"kind"});
    else if (kind == "plumbing")
        jio::check_fields(payload, "/payload", {"kind", "terms", "areas", "shade", "options"},
                          {"kind"});
    else if (kind == "ball")
        jio::check_fields(payload, "/payload", {"kind", "n", "ball", "shade", "options"}, {"kind"});
    else if (kind == "fit")
        jio::check_fields(payload, "/payload", {"kind", "chain", "ball", "options"}, {"kind"});
    else if (kind == "plumbing-graph")
        jio::check_fields(payload, "/payload", {"kind", "n", "terms", "options"}, {"kind"});
    else
        throw ParseError("/payload/kind", "unknown render kind '" + kind + "'");
    RenderOptions opt = parse_render_options(payload, "/payload");

    auto shade_flag = [&](bool dflt) {
        return payload.contains("shade") ? jio::to_bool(payload["shade"], "/payload/shade") : dflt;
    };

    if (kind == "wedge") {
        if (!payload.contains("wedge")) throw ParseError("/payload", "wedge render needs 'wedge'");
        const json& w = payload["wedge"];
        jio::check_fields(w, "/payload/wedge", {"n", "m"}, {"n", "m"});
        Int n = jio::to_int(w["n"], "/payload/wedge/n");
        Int m = jio::to_int(w["m"], "/payload/wedge/m");
        PolyDomain d = make_wedge(n, m);
        Decorations deco{"V(" + n.str() + "," + m.str() + ")", false};
        return {0, render_domain_svg(d, deco, opt), true};
    }
    if (kind == "chain") {
        if (!payload.contains("chain")) throw ParseError("/payload", "chain render needs 'chain'");
        ChainSpec c = parse_chain_spec(payload["chain"], "/payload/chain");
        bool collar =
            payload.contains("collar") && jio::to_bool(payload["collar"], "/payload/collar");
        PolyDomain d = collar ? make_chain_collar(c.n, c.areas) : make_chain_domain(c.n, c.areas);
        Decorations deco{"C" + std::to_string(c.n) + (collar ? "-" : ""), shade_flag(collar)};
        return {0, render_domain_svg(d, deco, opt), true};
    }
    if (kind == "plumbing") {
        if (!payload.contains("terms")) throw ParseError("/payload", "plumbing render needs 'terms'");
        CfExpansion b = parse_cf_terms(payload["terms"], "/payload/terms");
        std::vector<Rational> areas(b.size(), Rational(1));
        if (payload.contains("areas")) {
            areas.clear();
            jio::require_array(payload["areas"], "/payload/areas");
            for (std::size_t i = 0; i < payload["areas"].size(); ++i)
                areas.push_back(
                    jio::to_rational(payload["areas"][i], "/payload/areas/" + std::to_string(i)));
        }
        PolyDomain d = make_general_plumbing_domain(b, areas);
        Decorations deco{"plumbing", shade_flag(false)};
        return {0, render_domain_svg(d, deco, opt), true};
    }
    if (kind == "ball") {
        if (!payload.contains("n") || !payload.contains("ball"))
            throw ParseError("/payload", "ball render needs 'n' and 'ball'");
        int n = jio::to_small_int(payload["n"], "/payload/n");
        BallSpec b = parse_ball_spec(payload["ball"], "/payload/ball");
        PolyDomain d = make_ball_collar_domain(n, b.alpha_plus, b.alpha_minus);
        Decorations deco{"A'" + std::to_string(n), shade_flag(false)};
        return {0, render_domain_svg(d, deco, opt), true};
    }
    if (kind == "fit") {
        if (!payload.contains("chain") || !payload.contains("ball"))
            throw ParseError("/payload", "fit render needs 'chain' and 'ball'");
        ChainSpec c = parse_chain_spec(payload["chain"], "/payload/chain");
        BallSpec b = parse_ball_spec(payload["ball"], "/payload/ball");
        FitReport r = ball_feasible(c, b);
        if (!r.feasible) return {1, dump(to_json(r)), false};
        return {0, render_fit_svg(c, b, opt), true};
    }
    if (kind == "plumbing-graph") {
        std::vector<Int> terms;
        if (payload.contains("terms")) {
            CfExpansion b = parse_cf_terms(payload["terms"], "/payload/terms");
            terms = b.terms();
        } else if (payload.contains("n")) {
            int n = jio::to_small_int(payload["n"], "/payload/n");
            if (n < 2) throw ParseError("/payload/n", "n must be >= 2");
            terms.assign(static_cast<std::size_t>(n - 1), Int(2));
            terms[0] = Int(n) + 2;
        } else {
            throw ParseError("/payload", "plumbing-graph render needs 'terms' or 'n'");
        }
        return {0, render_plumbing_graph_svg(terms, opt, "plumbing graph"), true};
    }
    throw ParseError("/payload/kind", "unknown render kind '" + kind + "'");
}

inline JobResult dispatch(const json& config) {
    jio::check_fields(config, "", {"command", "payload"}, {"command", "payload"});
    std::string cmd = jio::to_string(config["command"], "/command");
    const json& payload = config["payload"];
    jio::require_object(payload, "/payload");
    if (cmd == "cf") return run_cf(payload);
    if (cmd == "lens") return run_lens(payload);
    if (cmd == "chain") return run_chain(payload);
    if (cmd == "plumbing") return run_plumbing(payload);
    if (cmd == "fit") return run_fit(payload);
    if (cmd == "blowdown") return run_blowdown(payload);
    if (cmd == "diagram") return run_diagram(payload);
    if (cmd == "render") return run_render(payload);
    throw ParseError("/command", "unknown command '" + cmd + "'");
}

}  // namespace detail

// Run one job document. Malformed or domain-invalid requests come back
// as exit code 2 with an error document; internal cross-check failures
// (plain logic_error) still propagate.
inline JobResult run_job(const json& config) {
    auto fail = [](const std::exception& e, const std::string& pointer) {
        json err;
        err["error"] = std::string(e.what());
        if (!pointer.empty()) err["pointer"] = pointer;
        return JobResult{2, detail::dump(err), false};
    };
    try {
        return detail::dispatch(config);
    } catch (const ParseError& e) {
        return fail(e, e.pointer);
    } catch (const std::invalid_argument& e) {
        return fail(e, "");
    } catch (const std::domain_error& e) {
        return fail(e, "");
    } catch (const std::out_of_range& e) {
        return fail(e, "");
    } catch (const json::exception& e) {
        return fail(e, "");
    }
}

}  // namespace blowdown
