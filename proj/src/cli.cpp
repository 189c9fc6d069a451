#include "ontolab/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ontolab/canonical.hpp"
#include "ontolab/empirical.hpp"
#include "ontolab/io.hpp"
#include "ontolab/preparation.hpp"
#include "ontolab/quantum.hpp"

namespace ontolab::cli {

namespace {

using io::Json;

struct Report {
    std::string command;
    std::string digest;
    std::string verdict;
    int exit_code = kHolds;
    Json payload = Json::object();
};

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream ss;
    ss << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return ss.str();
}

Json parse_document(const std::string& text, const std::string& path) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
}

Json context_json(const Context& c) { return Json(std::vector<std::string>(c.begin(), c.end())); }

Json witness_json(const EpistemicWitness& w) {
    return {{"state", w.state}, {"value", w.value}, {"other_value", w.other_value}};
}

Json witness_json(const StochasticResponse& w) { return {{"state", w.state}, {"context", context_json(w.context)}}; }

Json witness_json(const MarginalDisagreement& w) {
    return {{"measurement", w.measurement},
            {"state", w.state},
            {"first", context_json(w.first)},
            {"second", context_json(w.second)}};
}

Json witness_json(const FactorisationFailure& w) {
    return {{"state", w.state}, {"context", context_json(w.context)}, {"outcome", w.outcome.str()}};
}

Json witness_json(const SignallingWitness& w) {
    return {{"preparation", w.preparation},
            {"shared", context_json(w.shared)},
            {"first", context_json(w.first)},
            {"second", context_json(w.second)}};
}

Json witness_json(const FactorisationGap& w) {
    return {{"context", prep_context_key(w.context)}, {"joint_state", w.joint_state.str()}};
}

Json witness_json(const PreparationSignal& w) {
    return {{"site", w.site},
            {"preparation", w.preparation},
            {"first", prep_context_key(w.first)},
            {"second", prep_context_key(w.second)}};
}

Json locality_json(const LocalityVerdict& v) {
    if (v.holds()) {
        return Json::object();
    }
    if (v.failure == LocalityVerdict::Failure::NotDeterministic) {
        return {{"reason", "NotDeterministic"}, {"witness", witness_json(std::get<StochasticResponse>(v.witness))}};
    }
    return {{"reason", "NotParameterIndependent"},
            {"witness", witness_json(std::get<MarginalDisagreement>(v.witness))}};
}

Json classification_json(const Classification& c) {
    if (c.ontic()) {
        return {{"generator", c.generator}};
    }
    return {{"witness", witness_json(*c.witness)}};
}

template <class W>
void apply_verdict(Report& r, const Verdict<W>& v, const std::string& yes, const std::string& no) {
    r.verdict = v.holds() ? yes : no;
    r.exit_code = v.holds() ? kHolds : kFails;
    if (!v.holds()) {
        r.payload["witness"] = witness_json(*v.witness);
    }
}

Json steering_json(const SteeringAnalysis& s) {
    Json out{{"outcome", s.contradiction() ? "Contradiction" : "Consistent"},
             {"reason", s.reason()},
             {"supports_disjoint", s.supports_disjoint},
             {"mixtures_equal", s.mixtures_equal}};
    if (s.overlapping_states) {
        out["overlap"] = {{"states", {s.overlapping_states->first, s.overlapping_states->second}},
                          {"ontic_state", *s.shared_ontic_state}};
    }
    if (s.mixture_difference) {
        out["mixture_difference"] = *s.mixture_difference;
    }
    return out;
}

Json realizability_json(const LocalRealizability& r) {
    if (r.feasible()) {
        return {{"result", "Feasible"}, {"realization", io::to_json(*r.realization)}};
    }
    return {{"result", "Infeasible"}, {"certificate", io::to_json(*r.certificate)}};
}

void run_check(Report& r, const Json& doc, const std::string& check) {
    if (check == "classify-property") {
        const auto prop = io::property_from_json(doc);
        const auto c = classify_property(prop.property);
        r.verdict = c.ontic() ? "Ontic" : "Epistemic";
        r.exit_code = c.ontic() ? kHolds : kFails;
        r.payload = classification_json(c);
    } else if (check == "hs-supports") {
        const auto prop = io::property_from_json(doc);
        const auto inversion = bayesian_inversion(prop.property, prop.prior);
        Json posteriors = Json::object();
        for (const auto& [v, mu] : inversion.posteriors) {
            posteriors[v] = mu ? io::weights_to_json(mu->weights(), [](const Label& l) { return l; }) : Json(nullptr);
        }
        apply_verdict(r, hs_ontic_by_supports(prop.property, prop.prior), "supports disjoint", "supports overlap");
        r.payload["posteriors"] = std::move(posteriors);
    } else if (check == "deterministic") {
        apply_verdict(r, is_deterministic(io::any_model_from_json(doc)), "deterministic", "not deterministic");
    } else if (check == "parameter-independent") {
        apply_verdict(r, is_parameter_independent(io::any_model_from_json(doc)), "parameter-independent",
                      "not parameter-independent");
    } else if (check == "local") {
        const auto v = is_local(io::any_model_from_json(doc));
        r.verdict = v.holds() ? "local" : "not local";
        r.exit_code = v.holds() ? kHolds : kFails;
        r.payload = locality_json(v);
    } else if (check == "factorisable") {
        apply_verdict(r, is_factorisable(io::any_model_from_json(doc)), "factorisable", "not factorisable");
    } else if (check == "no-signalling") {
        apply_verdict(r, is_no_signalling(io::any_empirical_from_json(doc)), "no-signalling", "signalling");
    } else if (check == "local-realizable") {
        const auto e = io::any_empirical_from_json(doc);
        bool all = true;
        for (const auto& p : e.preparations()) {
            const auto res = local_realizability(e, p);
            all = all && res.feasible();
            r.payload[p] = realizability_json(res);
        }
        r.verdict = all ? "Feasible" : "Infeasible";
        r.exit_code = all ? kHolds : kFails;
    } else if (check == "quasi-decompose") {
        const auto e = io::any_empirical_from_json(doc);
        bool all = true;
        for (const auto& p : e.preparations()) {
            const auto res = quasi_local_decomposition(e, p);
            if (res.weights) {
                r.payload[p] = {{"result", "SignedWeights"},
                                {"has_negative", res.weights->has_negative()},
                                {"weights", io::to_json(*res.weights)}};
            } else {
                all = false;
                r.payload[p] = {{"result", "NotNoSignalling"}, {"witness", witness_json(*res.signalling)}};
            }
        }
        r.verdict = all ? "SignedWeights" : "NotNoSignalling";
        r.exit_code = all ? kHolds : kFails;
    } else if (check == "prep-independent") {
        apply_verdict(r, is_preparation_independent(io::theory_from_json(doc)), "preparation independent",
                      "not preparation independent");
    } else if (check == "no-prep-signalling") {
        apply_verdict(r, is_no_preparation_signalling(io::theory_from_json(doc)), "no-preparation-signalling",
                      "preparation signalling");
    } else if (check == "steering") {
        const auto s = io::steering_from_json(doc);
        const auto res = steering_incompatibility(s.mu, s.first, s.second);
        r.verdict = res.contradiction() ? "Contradiction(" + res.reason() + ")" : "Consistent";
        r.exit_code = res.contradiction() ? kFails : kHolds;
        r.payload = steering_json(res);
    } else {
        throw InputError("unknown check '" + check + "'");
    }
}

Report demo_epr() {
    Report r;
    const auto qubit = quantum::qubit_psi_complete_model();
    Json observables = Json::object();
    bool all_epistemic = true;
    for (const auto& m : {"Z", "X"}) {
        const auto c = quantum::check_observable_epistemicity(qubit, m);
        all_epistemic = all_epistemic && !c.ontic();
        observables[m] = {{"classification", c.ontic() ? "Ontic" : "Epistemic"}};
        observables[m].update(classification_json(c));
    }
    const auto qubit_local = is_local(qubit);
    const auto bell = quantum::bell_psi_complete_model();
    const auto bell_local = is_local(bell);
    r.payload = {{"qubit_model", {{"observables", observables}, {"local", qubit_local.holds()}}},
                 {"bell_model", {{"local", bell_local.holds()}}}};
    r.payload["qubit_model"].update(locality_json(qubit_local));
    r.payload["bell_model"].update(locality_json(bell_local));
    const bool ok = all_epistemic && !qubit_local.holds() && !bell_local.holds();
    r.verdict = ok ? "ψ-complete model is non-local" : "unexpected: ψ-complete model passed a locality check";
    r.exit_code = ok ? kHolds : kFails;
    return r;
}

std::map<Label, Distribution<Label>> disjoint_family() {
    return {{"ket0", Distribution<Label>::delta("l0")},
            {"ket1", Distribution<Label>::delta("l1")},
            {"ketplus", Distribution<Label>::delta("l2")},
            {"ketminus", Distribution<Label>::delta("l3")}};
}

Report demo_steering() {
    Report r;
    const auto ens = quantum::steering_ensembles();
    auto ensemble_json = [](const Ensemble& e) {
        Json out = Json::array();
        for (const auto& [c, l] : e) {
            out.push_back(Json::array({c.str(), l}));
        }
        return out;
    };
    const auto res = steering_incompatibility(disjoint_family(), ens.computational, ens.hadamard);
    r.payload = {{"ensembles", {ensemble_json(ens.computational), ensemble_json(ens.hadamard)}},
                 {"same_density_matrix", ens.same_density()},
                 {"analysis", steering_json(res)}};
    r.verdict = res.contradiction() ? "Contradiction(" + res.reason() + ")" : "Consistent";
    r.exit_code = res.contradiction() && ens.same_density() ? kHolds : kFails;
    return r;
}

Report demo_prep_relaxation() {
    Report r;
    const auto correlated = correlated_preparation_theory();
    const auto product = product_preparation_theory();
    const auto ci = is_preparation_independent(correlated);
    const auto cn = is_no_preparation_signalling(correlated);
    const auto pi = is_preparation_independent(product);
    const auto pn = is_no_preparation_signalling(product);
    r.payload = {{"correlated", {{"prep_independent", ci.holds()}, {"no_prep_signalling", cn.holds()}}},
                 {"product", {{"prep_independent", pi.holds()}, {"no_prep_signalling", pn.holds()}}}};
    if (ci.witness) {
        r.payload["correlated"]["witness"] = witness_json(*ci.witness);
    }
    const bool ok = !ci.holds() && cn.holds() && pi.holds() && pn.holds();
    r.verdict = "prep-independent: " + std::string(ci.holds() ? "true" : "false") +
                "; no-prep-signalling: " + (cn.holds() ? "true" : "false");
    r.exit_code = ok ? kHolds : kFails;
    return r;
}

void emit(const Report& r, double elapsed_ms, bool json, std::ostream& out) {
    if (json) {
        Json j{{"command", r.command},
               {"verdict", r.verdict},
               {"exit_code", r.exit_code},
               {"payload", r.payload},
               {"elapsed_ms", elapsed_ms}};
        if (!r.digest.empty()) {
            j["input_digest"] = r.digest;
        }
        out << j.dump(2) << '\n';
        return;
    }
    out << "command: " << r.command << '\n';
    if (!r.digest.empty()) {
        out << "input: " << r.digest << '\n';
    }
    out << "verdict: " << r.verdict << '\n';
    if (!r.payload.empty()) {
        out << "details: " << r.payload.dump() << '\n';
    }
    out << "time: " << std::fixed << std::setprecision(3) << elapsed_ms << " ms\n";
}

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{
        "classify-property", "hs-supports",     "deterministic",    "parameter-independent",
        "local",             "factorisable",    "no-signalling",    "local-realizable",
        "quasi-decompose",   "prep-independent", "no-prep-signalling", "steering"};
    return names;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ontolab: finite ontological models, locality and preparation independence"};
    app.require_subcommand(1);
    bool json = false;
    app.add_flag("--json", json, "Machine-readable JSON report");

    std::string file;
    std::string check;
    std::string output;
    std::string prep;
    std::string demo_name;

    auto* check_cmd = app.add_subcommand("check", "Run one check on a JSON document");
    check_cmd->fallthrough();
    check_cmd->add_option("file", file, "Input document")->required();
    check_cmd->add_option("check", check, "Check name")->required()->check(CLI::IsMember(check_names()));

    auto* canon_cmd = app.add_subcommand("canonicalize", "Rewrite a local model over global assignments");
    canon_cmd->fallthrough();
    canon_cmd->add_option("file", file, "Input model")->required();
    canon_cmd->add_option("-o,--output", output, "Where to write the canonical model (stdout when omitted)");

    auto* localize_cmd = app.add_subcommand("localize", "Decide local realizability of each preparation's table");
    localize_cmd->fallthrough();
    localize_cmd->add_option("file", file, "Empirical or model document")->required();
    localize_cmd->add_option("-p,--prep", prep, "Only this preparation");

    auto* demo_cmd = app.add_subcommand("demo", "Built-in demonstrations");
    demo_cmd->fallthrough();
    demo_cmd->add_option("name", demo_name, "Demo name")
        ->required()
        ->check(CLI::IsMember({"epr", "steering", "prep-relaxation"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kHolds;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    const auto start = std::chrono::steady_clock::now();
    Report r;
    try {
        if (*check_cmd) {
            const auto text = read_file(file);
            r.command = "check " + check;
            r.digest = fnv1a64(text);
            run_check(r, parse_document(text, file), check);
        } else if (*canon_cmd) {
            const auto text = read_file(file);
            r.command = "canonicalize";
            r.digest = fnv1a64(text);
            const auto model = io::any_model_from_json(parse_document(text, file));
            try {
                const auto canonical = canonicalize(model);
                const auto doc = io::to_json(canonical);
                if (!output.empty()) {
                    std::ofstream f(output, std::ios::binary);
                    if (!f) {
                        throw InputError("cannot write '" + output + "'");
                    }
                    f << doc.dump(2) << '\n';
                } else if (!json) {
                    out << doc.dump(2) << '\n';
                }
                Json live = Json::object();
                for (const auto& p : canonical.model.preparations()) {
                    live[p] = io::weights_to_json(canonical.weights(p), [](const Assignment& a) { return a.str(); });
                }
                r.verdict = "canonical form written";
                r.payload = {{"collapse", doc.at("collapse")}, {"weights", live}};
                if (json && output.empty()) {
                    r.payload["model"] = doc;
                }
            } catch (const NotLocalError& e) {
                r.verdict = "not local";
                r.exit_code = kFails;
                r.payload = locality_json(e.verdict());
            }
        } else if (*localize_cmd) {
            const auto text = read_file(file);
            r.command = "localize";
            r.digest = fnv1a64(text);
            const auto e = io::any_empirical_from_json(parse_document(text, file));
            std::vector<Label> preps = e.preparations();
            if (!prep.empty()) {
                if (!e.has_preparation(prep)) {
                    throw InputError("unknown preparation '" + prep + "'");
                }
                preps = {prep};
            }
            bool all = true;
            for (const auto& p : preps) {
                const auto res = local_realizability(e, p);
                all = all && res.feasible();
                r.payload[p] = realizability_json(res);
            }
            r.verdict = all ? "Feasible" : "Infeasible";
            r.exit_code = all ? kHolds : kFails;
        } else if (*demo_cmd) {
            if (demo_name == "epr") {
                r = demo_epr();
            } else if (demo_name == "steering") {
                r = demo_steering();
            } else {
                r = demo_prep_relaxation();
            }
            r.command = "demo " + demo_name;
        }
    } catch (const io::SchemaError& e) {
        err << "schema error at " << e.location() << ": " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    emit(r, elapsed, json, out);
    return r.exit_code;
}

}  // namespace ontolab::cli
