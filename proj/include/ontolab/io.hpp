#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "ontolab/canonical.hpp"
#include "ontolab/empirical.hpp"
#include "ontolab/ontology.hpp"
#include "ontolab/preparation.hpp"

namespace ontolab::io {

using Json = nlohmann::json;

/// Input that does not match the expected schema. `location` is a JSON
/// pointer into the offending document.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string location, const std::string& message)
        : std::runtime_error(location + ": " + message), location_(std::move(location)) {}

    [[nodiscard]] const std::string& location() const { return location_; }

private:
    std::string location_;
};

/// Rationals are strings "p/q" or "p"; JSON integers are accepted on input,
/// floats never.
Rational rational_from_json(const Json& j, const std::string& where = "");
Json to_json(const Rational& r);

MeasurementScenario scenario_from_json(const Json& j, const std::string& where = "/scenario");
Json to_json(const MeasurementScenario& s);

template <class S, class KeyFn>
Json weights_to_json(const std::map<S, Rational>& weights, KeyFn&& key) {
    Json out = Json::object();
    for (const auto& [s, w] : weights) {
        out[key(s)] = to_json(w);
    }
    return out;
}

struct PropertyDocument {
    Property property;
    /// Defaults to uniform over the states.
    Distribution<Label> prior;
};

/// {"lambda": [...], "values": [...], "property": {"<λ>": {"<v>": "p/q"}}, "prior": {...}}
PropertyDocument property_from_json(const Json& j);
Json to_json(const PropertyDocument& doc);

/// {"scenario", "preparations", "lambda", "prep_dists", "response": {"<λ>|<context>": {"<assignment>": "p/q"}}}
OntologicalModel model_from_json(const Json& j);
Json to_json(const OntologicalModel& h);

/// The model format plus "collapse": {"<λ>": "<assignment>"}.
Json to_json(const CanonicalModel& c);
CanonicalModel canonical_from_json(const Json& j);

/// {"scenario", "preparations", "tables": {"<p>|<context>": {"<assignment>": "p/q"}}}
EmpiricalModel empirical_from_json(const Json& j);
Json to_json(const EmpiricalModel& e);

/// {"scenario", "states": {"<label>": "<built-in>" | [[re, im], ...]},
///  "measurements": {"<m>": "Z" | "X" | [{"outcome": "<o>", "vector": ...}]},
///  "preparations": {...}?}. Joint measurements are tensor products in
/// sorted context order.
OntologicalModel quantum_model_from_json(const Json& j);

/// {"sites": [...], "prep_contexts": [[<prep per site>], ...], "lambda": [...],
///  "joint_dists": {"<site:prep,...>": {"<site:λ,...>": "p/q"}}}
PreparationTheory theory_from_json(const Json& j);
Json to_json(const PreparationTheory& t);

struct SteeringDocument {
    std::map<Label, Distribution<Label>> mu;
    Ensemble first;
    Ensemble second;
};

/// {"mu": {"<state>": {"<λ>": "p/q"}}, "ensembles": [[["1/2", "<state>"], ...], [...]]}
SteeringDocument steering_from_json(const Json& j);
Json to_json(const SteeringDocument& doc);

/// Any document carrying an ontological model: plain or quantum.
OntologicalModel any_model_from_json(const Json& j);

/// Tables from an empirical document, or from_ontological of a model document.
EmpiricalModel any_empirical_from_json(const Json& j);

Json to_json(const Distribution<Assignment>& d);
Json to_json(const SignedWeights<Assignment>& w);
Json to_json(const Certificate& c);

}  // namespace ontolab::io
