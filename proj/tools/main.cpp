// Command-line front end: every subcommand accepts a full job document
// via --json (file or '-' for stdin) or builds one from flags. JSON
// reports go to stdout, SVG to --out or stdout; exit 0 = success or
// feasible, 1 = well-formed negative verdict, 2 = invalid input.

#include "blowdown/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using blowdown::json;

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

json csv_array(const std::string& s) {
    json a = json::array();
    for (const std::string& item : split_csv(s)) a.push_back(item);
    return a;
}

json csv_vec(const std::string& s, const char* what) {
    auto parts = split_csv(s);
    if (parts.size() != 2)
        throw std::invalid_argument(std::string(what) + " must be two comma-separated integers");
    return json::array({parts[0], parts[1]});
}

int run_and_emit(const json& config, const std::string& out_path) {
    blowdown::JobResult r = blowdown::run_job(config);
    if (r.exit_code == 2) {
        std::cerr << r.output;
        return 2;
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::cerr << "cannot open output file " << out_path << "\n";
            return 2;
        }
        f << r.output;
    } else {
        std::cout << r.output;
    }
    return r.exit_code;
}

// A subcommand's --json accepts either a bare payload (wrapped with
// that subcommand's name) or a full job document with a matching
// "command" field. `run` takes full documents only.
int run_json_file(const std::string& path, const std::string& out_path,
                  const std::string& subcommand = "") {
    json doc;
    try {
        if (path == "-") {
            doc = json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) {
                std::cerr << "cannot open " << path << "\n";
                return 2;
            }
            doc = json::parse(in);
        }
    } catch (const json::parse_error& e) {
        std::cerr << "invalid JSON: " << e.what() << "\n";
        return 2;
    }
    if (doc.is_object() && doc.contains("command")) {
        if (!subcommand.empty() && doc["command"] != subcommand) {
            std::cerr << "job document is for command '" << doc["command"].dump()
                      << "', not '" << subcommand << "'\n";
            return 2;
        }
        return run_and_emit(doc, out_path);
    }
    if (subcommand.empty()) {
        std::cerr << "run requires a full job document with a 'command' field\n";
        return 2;
    }
    json config;
    config["command"] = subcommand;
    config["payload"] = std::move(doc);
    return run_and_emit(config, out_path);
}

struct CommonArgs {
    std::string json_path;
    std::string out_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--json", args.json_path, "job document (file path or '-' for stdin)");
    cmd->add_option("-o,--out", args.out_path, "write output to this file instead of stdout");
}

json wrap(const std::string& command, json payload) {
    json config;
    config["command"] = command;
    config["payload"] = std::move(payload);
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toric models for the rational blowdown of sphere chains"};
    app.require_subcommand(1);

    // run: dispatch a full job document
    auto* runj = app.add_subcommand("run", "run a job document ({command, payload})");
    CommonArgs run_args;
    add_common(runj, run_args);

    // cf
    auto* cf = app.add_subcommand("cf", "negative continued fraction expansion / evaluation");
    CommonArgs cf_args;
    add_common(cf, cf_args);
    std::string cf_n, cf_m, cf_terms;
    cf->add_option("--n", cf_n, "numerator");
    cf->add_option("--m", cf_m, "denominator");
    cf->add_option("--terms", cf_terms, "comma-separated terms to evaluate");

    // lens
    auto* lens = app.add_subcommand("lens", "classify a corner from two primitive edge directions");
    CommonArgs lens_args;
    add_common(lens, lens_args);
    std::string lens_u, lens_v;
    lens->add_option("--u", lens_u, "first direction, e.g. 0,1");
    lens->add_option("--v", lens_v, "second direction, e.g. 16,3");

    // chain
    auto* chain = app.add_subcommand("chain", "sphere-chain moment domain and its invariants");
    CommonArgs chain_args;
    add_common(chain, chain_args);
    std::string chain_n, chain_areas;
    bool chain_collar = false;
    chain->add_option("--n", chain_n, "chain parameter (n-1 spheres)");
    chain->add_option("--areas", chain_areas, "comma-separated sphere areas");
    chain->add_flag("--collar", chain_collar, "collar variant (sphere edges removed)");

    // plumbing
    auto* plumbing = app.add_subcommand("plumbing", "general linear plumbing domain and form");
    CommonArgs plumbing_args;
    add_common(plumbing, plumbing_args);
    std::string pl_terms, pl_areas;
    plumbing->add_option("--terms", pl_terms, "comma-separated plumbing terms b_i >= 2");
    plumbing->add_option("--areas", pl_areas, "comma-separated sphere areas (default all 1)");

    // fit
    auto* fit = app.add_subcommand("fit", "check that a rational ball fits below a chain collar");
    CommonArgs fit_args;
    add_common(fit, fit_args);
    std::string fit_n, fit_areas, fit_ap, fit_am;
    fit->add_option("--n", fit_n, "chain parameter");
    fit->add_option("--areas", fit_areas, "comma-separated sphere areas");
    fit->add_option("--alpha-plus", fit_ap, "ball section area alpha_plus");
    fit->add_option("--alpha-minus", fit_am, "ball section area alpha_minus");

    // blowdown
    auto* bd = app.add_subcommand("blowdown", "full blowdown report for a manifold and chain");
    CommonArgs bd_args;
    add_common(bd, bd_args);
    std::string bd_n, bd_areas, bd_ap, bd_am, bd_euler, bd_sigma, bd_b2, bd_vol;
    bd->add_option("--n", bd_n, "chain parameter");
    bd->add_option("--areas", bd_areas, "comma-separated sphere areas");
    bd->add_option("--alpha-plus", bd_ap, "explicit ball alpha_plus (optional)");
    bd->add_option("--alpha-minus", bd_am, "explicit ball alpha_minus (optional)");
    bd->add_option("--euler", bd_euler, "Euler characteristic of the ambient manifold");
    bd->add_option("--signature", bd_sigma, "signature of the ambient manifold");
    bd->add_option("--b2", bd_b2, "second Betti number");
    bd->add_option("--volume", bd_vol, "symplectic volume (rational)");

    // diagram
    auto* diagram = app.add_subcommand("diagram", "validate a 3-fold sum gluing diagram");
    CommonArgs diagram_args;
    add_common(diagram, diagram_args);

    // render
    auto* render = app.add_subcommand("render", "emit an SVG figure");
    CommonArgs render_args;
    add_common(render, render_args);
    std::string r_kind, r_n, r_m, r_areas, r_terms, r_ap, r_am, r_scale, r_eps, r_horizon;
    bool r_collar = false, r_no_labels = false;
    render->add_option("--kind", r_kind, "wedge | chain | plumbing | ball | fit | plumbing-graph");
    render->add_option("--n", r_n, "chain parameter / wedge n / ball n");
    render->add_option("--m", r_m, "wedge m");
    render->add_option("--areas", r_areas, "comma-separated areas");
    render->add_option("--terms", r_terms, "comma-separated plumbing terms");
    render->add_option("--alpha-plus", r_ap, "ball alpha_plus");
    render->add_option("--alpha-minus", r_am, "ball alpha_minus");
    render->add_option("--scale", r_scale, "svg units per lattice step");
    render->add_option("--collar-epsilon", r_eps, "collar thickness for shading");
    render->add_option("--horizon", r_horizon, "ray truncation horizon");
    render->add_flag("--collar", r_collar, "render the collar variant");
    render->add_flag("--no-labels", r_no_labels, "suppress labels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (runj->parsed()) {
            if (run_args.json_path.empty()) {
                std::cerr << "run requires --json\n";
                return 2;
            }
            return run_json_file(run_args.json_path, run_args.out_path);
        }
        if (cf->parsed()) {
            if (!cf_args.json_path.empty()) return run_json_file(cf_args.json_path, cf_args.out_path);
            json payload;
            if (!cf_terms.empty()) payload["terms"] = csv_array(cf_terms);
            if (!cf_n.empty()) payload["n"] = cf_n;
            if (!cf_m.empty()) payload["m"] = cf_m;
            return run_and_emit(wrap("cf", payload), cf_args.out_path);
        }
        if (lens->parsed()) {
            if (!lens_args.json_path.empty())
                return run_json_file(lens_args.json_path, lens_args.out_path);
            json payload;
            payload["u"] = csv_vec(lens_u, "--u");
            payload["v"] = csv_vec(lens_v, "--v");
            return run_and_emit(wrap("lens", payload), lens_args.out_path);
        }
        if (chain->parsed()) {
            if (!chain_args.json_path.empty())
                return run_json_file(chain_args.json_path, chain_args.out_path);
            json payload;
            payload["n"] = chain_n;
            payload["areas"] = csv_array(chain_areas);
            if (chain_collar) payload["collar"] = true;
            return run_and_emit(wrap("chain", payload), chain_args.out_path);
        }
        if (plumbing->parsed()) {
            if (!plumbing_args.json_path.empty())
                return run_json_file(plumbing_args.json_path, plumbing_args.out_path);
            json payload;
            payload["terms"] = csv_array(pl_terms);
            if (!pl_areas.empty()) payload["areas"] = csv_array(pl_areas);
            return run_and_emit(wrap("plumbing", payload), plumbing_args.out_path);
        }
        if (fit->parsed()) {
            if (!fit_args.json_path.empty())
                return run_json_file(fit_args.json_path, fit_args.out_path);
            json payload;
            payload["chain"] = {{"n", fit_n}, {"areas", csv_array(fit_areas)}};
            payload["ball"] = {{"alpha_plus", fit_ap}, {"alpha_minus", fit_am}};
            return run_and_emit(wrap("fit", payload), fit_args.out_path);
        }
        if (bd->parsed()) {
            if (!bd_args.json_path.empty()) return run_json_file(bd_args.json_path, bd_args.out_path);
            json payload;
            payload["chain"] = {{"n", bd_n}, {"areas", csv_array(bd_areas)}};
            payload["invariants"] = {{"euler", bd_euler},
                                     {"signature", bd_sigma},
                                     {"b2", bd_b2},
                                     {"volume", bd_vol}};
            if (!bd_ap.empty() || !bd_am.empty())
                payload["ball"] = {{"alpha_plus", bd_ap}, {"alpha_minus", bd_am}};
            return run_and_emit(wrap("blowdown", payload), bd_args.out_path);
        }
        if (diagram->parsed()) {
            if (diagram_args.json_path.empty()) {
                std::cerr << "diagram requires --json\n";
                return 2;
            }
            return run_json_file(diagram_args.json_path, diagram_args.out_path);
        }
        if (render->parsed()) {
            if (!render_args.json_path.empty())
                return run_json_file(render_args.json_path, render_args.out_path);
            json payload;
            payload["kind"] = r_kind;
            if (r_kind == "wedge") {
                payload["wedge"] = {{"n", r_n}, {"m", r_m}};
            } else if (r_kind == "chain") {
                payload["chain"] = {{"n", r_n}, {"areas", csv_array(r_areas)}};
                if (r_collar) payload["collar"] = true;
            } else if (r_kind == "plumbing") {
                payload["terms"] = csv_array(r_terms);
                if (!r_areas.empty()) payload["areas"] = csv_array(r_areas);
            } else if (r_kind == "ball") {
                payload["n"] = r_n;
                payload["ball"] = {{"alpha_plus", r_ap}, {"alpha_minus", r_am}};
            } else if (r_kind == "fit") {
                payload["chain"] = {{"n", r_n}, {"areas", csv_array(r_areas)}};
                payload["ball"] = {{"alpha_plus", r_ap}, {"alpha_minus", r_am}};
            } else if (r_kind == "plumbing-graph") {
                if (!r_terms.empty()) payload["terms"] = csv_array(r_terms);
                else payload["n"] = r_n;
            }
            json options;
            if (!r_scale.empty()) options["scale"] = r_scale;
            if (!r_eps.empty()) options["collar_epsilon"] = r_eps;
            if (!r_horizon.empty()) options["horizon"] = r_horizon;
            if (r_no_labels) options["labels"] = false;
            if (!options.empty()) payload["options"] = std::move(options);
            return run_and_emit(wrap("render", payload), render_args.out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
