#include "blowdown/job.hpp"

#include <catch_amalgamated.hpp>

#include <chrono>
#include <fstream>
#include <sstream>

using namespace blowdown;

namespace {

json load(const std::string& rel) {
    std::ifstream in(std::string(BLOWDOWN_TEST_DATA_DIR) + rel);
    REQUIRE(in.good());
    return json::parse(in);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json job(const std::string& command, json payload) {
    json config;
    config["command"] = command;
    config["payload"] = std::move(payload);
    return config;
}

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = hay.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("cf job") {
    JobResult r = run_job(job("cf", {{"n", 16}, {"m", 3}}));
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out["terms"] == json::array({6, 2, 2}));

    JobResult eval = run_job(job("cf", {{"terms", {5, 2}}}));
    CHECK(eval.exit_code == 0);
    out = json::parse(eval.output);
    CHECK(out["n"] == 9);
    CHECK(out["m"] == 2);

    // string-encoded big integers are accepted
    JobResult big = run_job(job("cf", {{"n", "1000000000000000000000000"}, {"m", "7"}}));
    CHECK(big.exit_code == 0);

    CHECK(run_job(job("cf", {{"n", 16}})).exit_code == 2);
    CHECK(run_job(job("cf", {{"n", 4}, {"m", 2}})).exit_code == 2);
    CHECK(run_job(job("cf", {{"n", 16}, {"m", 3}, {"terms", {2}}})).exit_code == 2);
}

TEST_CASE("lens job") {
    JobResult r = run_job(job("lens", {{"u", {0, 1}}, {"v", {16, 3}}}));
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out["n"] == 16);
    CHECK(out["m"] == 3);
}

TEST_CASE("chain job") {
    JobResult r = run_job(job("chain", {{"n", 4}, {"areas", {"1", "1", "1"}}}));
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out["budget"] == "6");
    CHECK(out["boundary"]["n"] == 16);
    CHECK(out["boundary"]["m"] == 3);
    REQUIRE(out["edge_invariants"].size() == 3);
    CHECK(out["edge_invariants"][0]["self_intersection"] == -6);
    CHECK(out["edge_invariants"][0]["area"] == "1");
    CHECK(out["domain"]["edges"].size() == 5);
    CHECK(out["domain"]["edges"][0]["start"].is_null());
}

TEST_CASE("plumbing job") {
    JobResult r = run_job(job("plumbing", {{"terms", {6, 2, 2}}}));
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out["determinant"] == -16);
    CHECK(out["negative_definite"] == true);
    CHECK(out["lens"]["n"] == 16);
    CHECK(out["intersection_form"][0] == json::array({-6, 1, 0}));

    CHECK(run_job(job("plumbing", {{"terms", {6, 1, 2}}})).exit_code == 2);
}

TEST_CASE("fit job exit codes") {
    json chain = {{"n", 4}, {"areas", {"1", "1", "1"}}};
    JobResult bad =
        run_job(job("fit", {{"chain", chain}, {"ball", {{"alpha_plus", "20"}, {"alpha_minus", "1"}}}}));
    CHECK(bad.exit_code == 1);
    CHECK(json::parse(bad.output)["feasible"] == false);

    JobResult good = run_job(job(
        "fit", {{"chain", chain}, {"ball", {{"alpha_plus", "18/19"}, {"alpha_minus", "3/19"}}}}));
    CHECK(good.exit_code == 0);
    json out = json::parse(good.output);
    CHECK(out["feasible"] == true);
    CHECK(out["margin"] == "3/16");
    CHECK(out["phi1"]["translation"] == json::array({"0", "3/8"}));
}

TEST_CASE("blowdown job") {
    json payload = {{"chain", {{"n", 2}, {"areas", {"1"}}}},
                    {"invariants",
                     {{"euler", 12}, {"signature", -8}, {"b2", 10}, {"volume", "1"}}}};
    JobResult r = run_job(job("blowdown", payload));
    CHECK(r.exit_code == 0);
    json out = json::parse(r.output);
    CHECK(out["volume_delta"] == "1/8");
    CHECK(out["path"] == "conic-sum");
    CHECK(out["fit"].is_null());
    CHECK(out["new_invariants"]["volume"] == "9/8");

    // infeasible explicit ball: well formed, negative verdict
    json payload2 = {{"chain", {{"n", 4}, {"areas", {"1", "1", "1"}}}},
                     {"invariants",
                      {{"euler", 100}, {"signature", -20}, {"b2", 30}, {"volume", "50"}}},
                     {"ball", {{"alpha_plus", "20"}, {"alpha_minus", "1"}}}};
    JobResult infeasible = run_job(job("blowdown", payload2));
    CHECK(infeasible.exit_code == 1);

    payload2["ball"] = {{"alpha_plus", "18/19"}, {"alpha_minus", "3/19"}};
    JobResult ok = run_job(job("blowdown", payload2));
    CHECK(ok.exit_code == 0);
    out = json::parse(ok.output);
    CHECK(out["new_invariants"]["euler"] == 97);
    CHECK(out["new_invariants"]["signature"] == -17);
    CHECK(out["new_invariants"]["b2"] == 27);
    CHECK(out["deltas"]["c1_squared"] == 3);
}

TEST_CASE("schema violations carry JSON pointers") {
    JobResult unknown = run_job(job("cf", {{"n", 16}, {"m", 3}, {"bogus", 1}}));
    CHECK(unknown.exit_code == 2);
    json err = json::parse(unknown.output);
    CHECK(err["pointer"] == "/payload/bogus");

    JobResult bad_type =
        run_job(job("fit", {{"chain", {{"n", 4}, {"areas", "1,1,1"}}},
                            {"ball", {{"alpha_plus", "1"}, {"alpha_minus", "1/9"}}}}));
    CHECK(bad_type.exit_code == 2);
    CHECK(json::parse(bad_type.output)["pointer"] == "/payload/chain/areas");

    JobResult bad_rat = run_job(job("chain", {{"n", 4}, {"areas", {"1", "x", "1"}}}));
    CHECK(bad_rat.exit_code == 2);
    CHECK(json::parse(bad_rat.output)["pointer"] == "/payload/areas/1");

    JobResult bad_cmd = run_job(job("warp", json::object()));
    CHECK(bad_cmd.exit_code == 2);
    CHECK(json::parse(bad_cmd.output)["pointer"] == "/command");

    json no_payload;
    no_payload["command"] = "cf";
    CHECK(run_job(no_payload).exit_code == 2);
}

TEST_CASE("diagram job") {
    json valid = load("/diagrams/conic_n2.json");
    JobResult r = run_job(job("diagram", valid));
    CHECK(r.exit_code == 0);

    valid["surfaces"][0]["self_intersection"] = -3;
    JobResult invalid = run_job(job("diagram", valid));
    CHECK(invalid.exit_code == 1);
    CHECK(json::parse(invalid.output)["valid"] == false);

    valid["pairings"][0][1] = "missing";
    CHECK(run_job(job("diagram", valid)).exit_code == 2);
}

TEST_CASE("chain render structure") {
    JobResult r = run_job(job("render", {{"kind", "chain"}, {"chain", {{"n", 4}, {"areas", {"1", "1", "1"}}}}}));
    REQUIRE(r.exit_code == 0);
    CHECK(r.svg);
    CHECK(count_occurrences(r.output, "class=\"seg closed\"") == 3);
    CHECK(count_occurrences(r.output, "class=\"ray closed\"") == 2);
    CHECK(count_occurrences(r.output, "class=\"seg open\"") == 0);

    JobResult collar = run_job(job(
        "render", {{"kind", "chain"}, {"chain", {{"n", 4}, {"areas", {"1", "1", "1"}}}}, {"collar", true}}));
    REQUIRE(collar.exit_code == 0);
    CHECK(count_occurrences(collar.output, "class=\"seg open\"") == 3);
    CHECK(count_occurrences(collar.output, "class=\"collar\"") == 1);
}

TEST_CASE("wedge render marks the excluded corner hollow") {
    JobResult r = run_job(job("render", {{"kind", "wedge"}, {"wedge", {{"n", 16}, {"m", 3}}}}));
    REQUIRE(r.exit_code == 0);
    CHECK(count_occurrences(r.output, "class=\"corner excluded\"") == 1);
    CHECK(count_occurrences(r.output, "L(16,3)") == 1);
}

TEST_CASE("fit render") {
    json payload = {{"kind", "fit"},
                    {"chain", {{"n", 4}, {"areas", {"30", "1", "1"}}}},
                    {"ball", {{"alpha_plus", "20"}, {"alpha_minus", "1"}}}};
    JobResult r = run_job(job("render", payload));
    REQUIRE(r.exit_code == 0);
    CHECK(r.svg);
    CHECK(count_occurrences(r.output, "class=\"collar\"") == 1);
    CHECK(count_occurrences(r.output, "V(16,3)") == 1);

    payload["chain"] = {{"n", 4}, {"areas", {"1", "1", "1"}}};
    JobResult infeasible = run_job(job("render", payload));
    CHECK(infeasible.exit_code == 1);
    CHECK_FALSE(infeasible.svg);
}

TEST_CASE("plumbing graph render") {
    JobResult r = run_job(job("render", {{"kind", "plumbing-graph"}, {"n", 4}}));
    REQUIRE(r.exit_code == 0);
    CHECK(count_occurrences(r.output, "<circle class=\"graph-node\"") == 3);
    CHECK(count_occurrences(r.output, ">-6</text>") == 1);
    CHECK(count_occurrences(r.output, ">-2</text>") == 2);
}

TEST_CASE("job outputs are deterministic in-process") {
    std::vector<json> configs = {
        job("cf", {{"n", 16}, {"m", 3}}),
        job("chain", {{"n", 4}, {"areas", {"1", "1", "1"}}}),
        job("render", {{"kind", "fit"},
                       {"chain", {{"n", 4}, {"areas", {"30", "1", "1"}}}},
                       {"ball", {{"alpha_plus", "20"}, {"alpha_minus", "1"}}}}),
        job("render", {{"kind", "ball"},
                       {"n", 5},
                       {"ball", {{"alpha_plus", "33"}, {"alpha_minus", "7/2"}}}}),
    };
    for (const json& c : configs) {
        JobResult a = run_job(c);
        JobResult b = run_job(c);
        CHECK(a.exit_code == b.exit_code);
        CHECK(a.output == b.output);
    }
}

TEST_CASE("every command path returns promptly at desk scale") {
    json areas12 = json::array();
    for (int i = 0; i < 11; ++i) areas12.push_back("1");
    std::vector<json> configs = {
        job("cf", {{"n", 144}, {"m", 11}}),
        job("lens", {{"u", {0, 1}}, {"v", {144, 11}}}),
        job("chain", {{"n", 12}, {"areas", areas12}}),
        job("plumbing", {{"terms", {14, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}}}),
        job("fit", {{"chain", {{"n", 12}, {"areas", areas12}}},
                    {"ball", {{"alpha_plus", "2"}, {"alpha_minus", "1/10"}}}}),
        job("blowdown", {{"chain", {{"n", 12}, {"areas", areas12}}},
                         {"invariants",
                          {{"euler", 100}, {"signature", -40}, {"b2", 60}, {"volume", "50"}}}}),
        job("render", {{"kind", "chain"}, {"chain", {{"n", 12}, {"areas", areas12}}}}),
        job("render", {{"kind", "plumbing-graph"}, {"n", 12}}),
    };
    for (const json& c : configs) {
        auto t0 = std::chrono::steady_clock::now();
        JobResult r = run_job(c);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        INFO(c.dump());
        CHECK(r.exit_code == 0);
        CHECK(secs < 1.0);
    }
}

TEST_CASE("outputs match the checked-in goldens") {
    struct Golden {
        const char* jobfile;
        const char* golden;
    };
    for (const Golden& g : {Golden{"/jobs/chain_n4.json", "/../golden/chain_n4.json"},
                            Golden{"/jobs/render_fit.json", "/../golden/render_fit.svg"},
                            Golden{"/jobs/render_chain_collar.json",
                                   "/../golden/render_chain_collar.svg"},
                            Golden{"/jobs/blowdown_n2.json", "/../golden/blowdown_n2.json"}}) {
        json config = load(g.jobfile);
        JobResult r = run_job(config);
        INFO(g.jobfile);
        CHECK(r.output == slurp(std::string(BLOWDOWN_TEST_DATA_DIR) + g.golden));
    }
}
