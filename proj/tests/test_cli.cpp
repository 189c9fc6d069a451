#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <doctest.h>
#include <json.hpp>

#include "ontolab/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "ontolab");
    std::ostringstream out;
    std::ostringstream err;
    const int code = ontolab::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ONTOLAB_DATA_DIR) + "/" + name; }

nlohmann::json run_json(std::vector<std::string> args, int expected) {
    args.insert(args.begin(), "--json");
    const auto r = run(args);
    CHECK(r.code == expected);
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("check verdicts and exit codes") {
    auto j = run_json({"check", data("fuzzy_coins.json"), "classify-property"}, 1);
    CHECK(j["verdict"] == "Epistemic");
    CHECK(j["payload"]["witness"]["state"] == "GW");
    CHECK(j["payload"]["witness"]["value"] == "G");
    CHECK(j["payload"]["witness"]["other_value"] == "W");
    CHECK(j["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
    CHECK(j.contains("elapsed_ms"));

    j = run_json({"check", data("pr_box.json"), "local-realizable"}, 1);
    CHECK(j["verdict"] == "Infeasible");
    CHECK(j["payload"]["p"].contains("certificate"));

    j = run_json({"check", data("product_theory.json"), "prep-independent"}, 0);
    CHECK(j["verdict"] == "preparation independent");

    CHECK(run({"check", data("ontic_property.json"), "classify-property"}).code == 0);
    CHECK(run({"check", data("fuzzy_coins.json"), "hs-supports"}).code == 1);
    CHECK(run({"check", data("local_model.json"), "deterministic"}).code == 0);
    CHECK(run({"check", data("local_model.json"), "parameter-independent"}).code == 0);
    CHECK(run({"check", data("local_model.json"), "local"}).code == 0);
    CHECK(run({"check", data("local_model.json"), "factorisable"}).code == 0);
    CHECK(run({"check", data("local_model.json"), "local-realizable"}).code == 0);
    CHECK(run({"check", data("parameter_dependent_model.json"), "local"}).code == 1);
    CHECK(run({"check", data("parameter_dependent_model.json"), "factorisable"}).code == 2);
    CHECK(run({"check", data("psi_complete_bell.json"), "local"}).code == 1);
    CHECK(run({"check", data("psi_complete_qubit.json"), "deterministic"}).code == 1);
    CHECK(run({"check", data("chsh_quantum.json"), "no-signalling"}).code == 0);
    CHECK(run({"check", data("chsh_quantum.json"), "local-realizable"}).code == 1);
    CHECK(run({"check", data("noisy_pr_half.json"), "local-realizable"}).code == 0);
    CHECK(run({"check", data("pr_box.json"), "quasi-decompose"}).code == 0);
    CHECK(run({"check", data("signalling_table.json"), "no-signalling"}).code == 1);
    CHECK(run({"check", data("signalling_table.json"), "quasi-decompose"}).code == 1);
    CHECK(run({"check", data("correlated_theory.json"), "prep-independent"}).code == 1);
    CHECK(run({"check", data("correlated_theory.json"), "no-prep-signalling"}).code == 0);
    CHECK(run({"check", data("steering_disjoint.json"), "steering"}).code == 1);
    CHECK(run({"check", data("steering_overlapping.json"), "steering"}).code == 0);
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({"check", data("missing.json"), "local"}).code == 2);
    CHECK(run({"check", data("fuzzy_coins.json"), "no-such-check"}).code == 2);
    CHECK(run({"check", data("fuzzy_coins.json"), "local"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const auto dir = std::filesystem::temp_directory_path() / "ontolab_cli_test";
    std::filesystem::create_directories(dir);
    const auto bad = (dir / "bad.json").string();
    std::ofstream(bad) << "{ not json";
    CHECK(run({"check", bad, "local"}).code == 2);
    std::ofstream(bad) << R"({"lambda": ["a"], "values": ["v"], "property": {"a": {"v": 0.5}}})";
    const auto r = run({"check", bad, "classify-property"});
    CHECK(r.code == 2);
    CHECK(r.err.find("/property/a/v") != std::string::npos);
}

TEST_CASE("canonicalize writes a re-checkable model") {
    const auto dir = std::filesystem::temp_directory_path() / "ontolab_cli_test";
    std::filesystem::create_directories(dir);
    const auto out = (dir / "canonical.json").string();
    const auto j = run_json({"canonicalize", data("local_model.json"), "-o", out}, 0);
    CHECK(j["payload"]["weights"]["p"].size() == 2);
    CHECK(j["payload"]["weights"]["p"]["a0:0,a1:1,b0:0,b1:0"] == "3/4");
    CHECK(run({"check", out, "factorisable"}).code == 0);
    CHECK(run({"check", out, "local"}).code == 0);
    const auto again = (dir / "canonical2.json").string();
    CHECK(run({"canonicalize", out, "-o", again}).code == 0);
    CHECK(run_json({"canonicalize", again}, 0)["payload"]["weights"] == j["payload"]["weights"]);

    const auto nl = run_json({"canonicalize", data("psi_complete_bell.json"), "-o", (dir / "x.json").string()}, 1);
    CHECK(nl["payload"]["reason"] == "NotDeterministic");
    CHECK(run({"canonicalize", data("parameter_dependent_model.json")}).code == 1);
}

TEST_CASE("localize") {
    CHECK(run({"localize", data("pr_box.json")}).code == 1);
    CHECK(run({"localize", data("local_model.json"), "-p", "q"}).code == 0);
    CHECK(run({"localize", data("local_model.json"), "-p", "zz"}).code == 2);
    const auto j = run_json({"localize", data("local_model.json"), "-p", "q"}, 0);
    CHECK(j["payload"].size() == 1);
    CHECK(j["payload"]["q"]["realization"]["a0:1,a1:1,b0:0,b1:1"] == "1");
}

TEST_CASE("demos") {
    auto j = run_json({"demo", "epr"}, 0);
    CHECK(j["verdict"] == "ψ-complete model is non-local");
    CHECK(j["payload"]["bell_model"]["reason"] == "NotDeterministic");
    j = run_json({"demo", "steering"}, 0);
    CHECK(j["verdict"] == "Contradiction(mixture-equality-impossible)");
    j = run_json({"demo", "prep-relaxation"}, 0);
    CHECK(j["verdict"] == "prep-independent: false; no-prep-signalling: true");
    CHECK(run({"demo", "nope"}).code == 2);
    // --json is accepted after the subcommand as well.
    CHECK(run({"demo", "epr", "--json"}).out.front() == '{');
    CHECK(run({"demo", "epr"}).out.rfind("command: demo epr", 0) == 0);
}

TEST_CASE("installed binary honours the exit-code contract") {
    const std::string bin = ONTOLAB_BINARY;
    auto status = [&](const std::string& args) {
        const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status("check " + data("product_theory.json") + " prep-independent") == 0);
    CHECK(status("check " + data("fuzzy_coins.json") + " classify-property") == 1);
    CHECK(status("check " + data("nope.json") + " local") == 2);
    CHECK(status("--json demo steering") == 0);
}
