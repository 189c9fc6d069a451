#include "ontolab/io.hpp"

#include "ontolab/quantum.hpp"

namespace ontolab::io {

namespace {

std::string escape_pointer(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~') {
            out += "~0";
        } else if (c == '/') {
            out += "~1";
        } else {
            out += c;
        }
    }
    return out;
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + escape_pointer(key); }
std::string child(const std::string& where, std::size_t index) { return where + "/" + std::to_string(index); }

const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) {
        throw SchemaError(where.empty() ? "/" : where, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw SchemaError(child(where, key), "missing required field");
    }
    return *it;
}

const Json& array_at(const Json& j, const std::string& where) {
    if (!j.is_array()) {
        throw SchemaError(where, "expected an array");
    }
    return j;
}

const Json& object_at(const Json& j, const std::string& where) {
    if (!j.is_object()) {
        throw SchemaError(where, "expected an object");
    }
    return j;
}

Label label_from(const Json& j, const std::string& where) {
    if (!j.is_string()) {
        throw SchemaError(where, "expected a string label");
    }
    return j.get<std::string>();
}

std::vector<Label> labels_from(const Json& j, const std::string& where) {
    std::vector<Label> out;
    const auto& arr = array_at(j, where);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(label_from(arr[i], child(where, i)));
    }
    return out;
}

// Runs a constructor, reporting contract violations at `where`.
template <class F>
auto at_location(const std::string& where, F&& make) {
    try {
        return make();
    } catch (const SchemaError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw SchemaError(where.empty() ? "/" : where, e.what());
    } catch (const std::domain_error& e) {
        throw SchemaError(where.empty() ? "/" : where, e.what());
    }
}

template <class S, class ParseKey>
Distribution<S> distribution_from(const Json& j, const std::string& where, ParseKey&& parse_key) {
    typename Distribution<S>::Weights w;
    for (const auto& [k, v] : object_at(j, where).items()) {
        const auto loc = child(where, k);
        S key = at_location(loc, [&] { return parse_key(k); });
        w.emplace(std::move(key), rational_from_json(v, loc));
    }
    return at_location(where, [&] { return Distribution<S>(std::move(w)); });
}

Distribution<Label> label_distribution(const Json& j, const std::string& where) {
    return distribution_from<Label>(j, where, [](const std::string& k) { return k; });
}

Distribution<Assignment> assignment_distribution(const Json& j, const std::string& where) {
    return distribution_from<Assignment>(j, where, [](const std::string& k) { return Assignment::parse(k); });
}

std::pair<Label, Context> split_pair_key(const std::string& key, const std::string& where) {
    const auto bar = key.find('|');
    if (bar == std::string::npos) {
        throw SchemaError(where, "key must have the form '<label>|<context>'");
    }
    Context c = at_location(where, [&] { return parse_context_key(std::string_view(key).substr(bar + 1)); });
    return {key.substr(0, bar), std::move(c)};
}

Json labels_to_json(const std::vector<Label>& labels) {
    Json out = Json::array();
    for (const auto& l : labels) {
        out.push_back(l);
    }
    return out;
}

quantum::Vector vector_from(const Json& j, const std::string& where) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        return at_location(where, [&] { return quantum::PureState::named(name).amplitudes(); });
    }
    const auto& arr = array_at(j, where);
    if (!arr.empty() && arr[0].is_string()) {
        // Tensor product of named single-system states.
        quantum::Vector out{1.0};
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out = quantum::tensor(out, vector_from(arr[i], child(where, i)));
        }
        return out;
    }
    quantum::Vector out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto loc = child(where, i);
        const auto& pair = array_at(arr[i], loc);
        if (pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw SchemaError(loc, "expected a complex pair [re, im]");
        }
        out.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    return out;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        return at_location(where, [&] { return Rational::parse(j.get<std::string>()); });
    }
    throw SchemaError(where.empty() ? "/" : where, "expected a rational string \"p/q\"");
}

Json to_json(const Rational& r) { return r.str(); }

MeasurementScenario scenario_from_json(const Json& j, const std::string& where) {
    auto measurements = labels_from(field(j, "measurements", where), child(where, "measurements"));
    auto outcomes = labels_from(field(j, "outcomes", where), child(where, "outcomes"));
    const auto contexts_loc = child(where, "contexts");
    const auto& arr = array_at(field(j, "contexts", where), contexts_loc);
    std::vector<Context> contexts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto members = labels_from(arr[i], child(contexts_loc, i));
        contexts.emplace_back(members.begin(), members.end());
        if (contexts.back().size() != members.size()) {
            throw SchemaError(child(contexts_loc, i), "context repeats a measurement");
        }
    }
    return at_location(where, [&] {
        return MeasurementScenario(std::move(measurements), std::move(outcomes), std::move(contexts));
    });
}

Json to_json(const MeasurementScenario& s) {
    Json contexts = Json::array();
    for (const auto& c : s.contexts()) {
        contexts.push_back(labels_to_json({c.begin(), c.end()}));
    }
    return Json{{"measurements", labels_to_json(s.measurements())},
                {"outcomes", labels_to_json(s.outcomes())},
                {"contexts", std::move(contexts)}};
}

PropertyDocument property_from_json(const Json& j) {
    auto states = labels_from(field(j, "lambda", ""), "/lambda");
    auto values = labels_from(field(j, "values", ""), "/values");
    std::map<Label, Distribution<Label>> f;
    for (const auto& [k, v] : object_at(field(j, "property", ""), "/property").items()) {
        f.emplace(k, label_distribution(v, child("/property", k)));
    }
    auto prior = j.contains("prior") ? label_distribution(j.at("prior"), "/prior")
                                     : at_location("/lambda", [&] { return Distribution<Label>::uniform(states); });
    auto property = at_location("/property", [&] { return Property(std::move(states), std::move(values), std::move(f)); });
    return PropertyDocument{std::move(property), std::move(prior)};
}

Json to_json(const PropertyDocument& doc) {
    Json f = Json::object();
    for (const auto& [s, d] : doc.property.map()) {
        f[s] = weights_to_json(d.weights(), [](const Label& l) { return l; });
    }
    return Json{{"lambda", labels_to_json(doc.property.states())},
                {"values", labels_to_json(doc.property.values())},
                {"property", std::move(f)},
                {"prior", weights_to_json(doc.prior.weights(), [](const Label& l) { return l; })}};
}

OntologicalModel model_from_json(const Json& j) {
    auto scenario = scenario_from_json(field(j, "scenario", ""));
    auto preparations = labels_from(field(j, "preparations", ""), "/preparations");
    auto states = labels_from(field(j, "lambda", ""), "/lambda");
    std::map<Label, Distribution<Label>> prep_dists;
    for (const auto& [k, v] : object_at(field(j, "prep_dists", ""), "/prep_dists").items()) {
        prep_dists.emplace(k, label_distribution(v, child("/prep_dists", k)));
    }
    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    for (const auto& [k, v] : object_at(field(j, "response", ""), "/response").items()) {
        const auto loc = child("/response", k);
        responses.emplace(split_pair_key(k, loc), assignment_distribution(v, loc));
    }
    return at_location("", [&] {
        return OntologicalModel(std::move(scenario), std::move(preparations), std::move(states), std::move(prep_dists),
                                std::move(responses));
    });
}

Json to_json(const OntologicalModel& h) {
    Json prep = Json::object();
    for (const auto& [p, d] : h.prep_dists()) {
        prep[p] = weights_to_json(d.weights(), [](const Label& l) { return l; });
    }
    Json response = Json::object();
    for (const auto& [key, d] : h.responses()) {
        response[key.first + "|" + context_key(key.second)] =
            weights_to_json(d.weights(), [](const Assignment& a) { return a.str(); });
    }
    return Json{{"scenario", to_json(h.scenario())},
                {"preparations", labels_to_json(h.preparations())},
                {"lambda", labels_to_json(h.states())},
                {"prep_dists", std::move(prep)},
                {"response", std::move(response)}};
}

Json to_json(const CanonicalModel& c) {
    Json out = to_json(c.model);
    Json collapse = Json::object();
    for (const auto& [l, a] : c.collapse) {
        collapse[l] = a.str();
    }
    out["collapse"] = std::move(collapse);
    return out;
}

CanonicalModel canonical_from_json(const Json& j) {
    auto model = model_from_json(j);
    std::map<Label, Assignment> collapse;
    for (const auto& [k, v] : object_at(field(j, "collapse", ""), "/collapse").items()) {
        const auto loc = child("/collapse", k);
        const auto text = label_from(v, loc);
        collapse.emplace(k, at_location(loc, [&] { return Assignment::parse(text); }));
    }
    return CanonicalModel{std::move(model), std::move(collapse)};
}

EmpiricalModel empirical_from_json(const Json& j) {
    auto scenario = scenario_from_json(field(j, "scenario", ""));
    auto preparations = labels_from(field(j, "preparations", ""), "/preparations");
    std::map<EmpiricalModel::TableKey, Distribution<Assignment>> tables;
    for (const auto& [k, v] : object_at(field(j, "tables", ""), "/tables").items()) {
        const auto loc = child("/tables", k);
        tables.emplace(split_pair_key(k, loc), assignment_distribution(v, loc));
    }
    return at_location("", [&] {
        return EmpiricalModel(std::move(scenario), std::move(preparations), std::move(tables));
    });
}

Json to_json(const EmpiricalModel& e) {
    Json tables = Json::object();
    for (const auto& [key, d] : e.tables()) {
        tables[key.first + "|" + context_key(key.second)] =
            weights_to_json(d.weights(), [](const Assignment& a) { return a.str(); });
    }
    return Json{{"scenario", to_json(e.scenario())},
                {"preparations", labels_to_json(e.preparations())},
                {"tables", std::move(tables)}};
}

OntologicalModel quantum_model_from_json(const Json& j) {
    auto scenario = scenario_from_json(field(j, "scenario", ""));
    std::vector<quantum::PureState> states;
    for (const auto& [k, v] : object_at(field(j, "states", ""), "/states").items()) {
        const auto loc = child("/states", k);
        auto amplitudes = vector_from(v, loc);
        states.push_back(at_location(loc, [&] { return quantum::PureState(k, std::move(amplitudes)); }));
    }
    std::map<Label, quantum::ProjectiveMeasurement> locals;
    for (const auto& [k, v] : object_at(field(j, "measurements", ""), "/measurements").items()) {
        const auto loc = child("/measurements", k);
        if (v.is_string()) {
            const auto name = v.get<std::string>();
            locals.emplace(k, at_location(loc, [&] { return quantum::ProjectiveMeasurement::named(name); }));
            continue;
        }
        std::vector<quantum::ProjectiveMeasurement::Branch> branches;
        const auto& arr = array_at(v, loc);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto bloc = child(loc, i);
            branches.push_back({label_from(field(arr[i], "outcome", bloc), child(bloc, "outcome")),
                                vector_from(field(arr[i], "vector", bloc), child(bloc, "vector"))});
        }
        locals.emplace(k, at_location(loc, [&] { return quantum::ProjectiveMeasurement(k, std::move(branches)); }));
    }
    std::map<Context, quantum::ProjectiveMeasurement> joint;
    for (const auto& c : scenario.contexts()) {
        joint.emplace(c, at_location("/measurements", [&] { return quantum::product_measurement(c, locals); }));
    }
    std::optional<std::map<Label, Distribution<Label>>> preparations;
    if (j.contains("preparations")) {
        preparations.emplace();
        for (const auto& [k, v] : object_at(j.at("preparations"), "/preparations").items()) {
            preparations->emplace(k, label_distribution(v, child("/preparations", k)));
        }
    }
    return at_location("", [&] { return quantum::psi_complete_model(states, scenario, joint, preparations); });
}

PreparationTheory theory_from_json(const Json& j) {
    auto sites = labels_from(field(j, "sites", ""), "/sites");
    auto lambda = labels_from(field(j, "lambda", ""), "/lambda");
    std::vector<PrepContext> contexts;
    const auto& arr = array_at(field(j, "prep_contexts", ""), "/prep_contexts");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto loc = child("/prep_contexts", i);
        const auto preps = labels_from(arr[i], loc);
        if (preps.size() != sites.size()) {
            throw SchemaError(loc, "a preparation context lists one preparation per site");
        }
        PrepContext c;
        for (std::size_t s = 0; s < sites.size(); ++s) {
            c.emplace(sites[s], preps[s]);
        }
        contexts.push_back(std::move(c));
    }
    auto scenario = at_location("", [&] {
        return PreparationScenario(std::move(sites), std::move(contexts), std::move(lambda));
    });
    std::map<PrepContext, Distribution<Assignment>> joint;
    for (const auto& [k, v] : object_at(field(j, "joint_dists", ""), "/joint_dists").items()) {
        const auto loc = child("/joint_dists", k);
        auto key = at_location(loc, [&] { return Assignment::parse(k); });
        joint.emplace(key.values(), assignment_distribution(v, loc));
    }
    return at_location("/joint_dists", [&] { return PreparationTheory(std::move(scenario), std::move(joint)); });
}

Json to_json(const PreparationTheory& t) {
    const auto& scenario = t.scenario();
    Json contexts = Json::array();
    for (const auto& c : scenario.contexts()) {
        Json row = Json::array();
        for (const auto& site : scenario.sites()) {
            row.push_back(c.at(site));
        }
        contexts.push_back(std::move(row));
    }
    Json joint = Json::object();
    for (const auto& [c, d] : t.joint_dists()) {
        joint[prep_context_key(c)] = weights_to_json(d.weights(), [](const Assignment& a) { return a.str(); });
    }
    return Json{{"sites", labels_to_json(scenario.sites())},
                {"prep_contexts", std::move(contexts)},
                {"lambda", labels_to_json(scenario.ontic_states())},
                {"joint_dists", std::move(joint)}};
}

SteeringDocument steering_from_json(const Json& j) {
    SteeringDocument doc;
    for (const auto& [k, v] : object_at(field(j, "mu", ""), "/mu").items()) {
        doc.mu.emplace(k, label_distribution(v, child("/mu", k)));
    }
    const auto& ensembles = array_at(field(j, "ensembles", ""), "/ensembles");
    if (ensembles.size() != 2) {
        throw SchemaError("/ensembles", "expected exactly two ensembles");
    }
    for (std::size_t e = 0; e < 2; ++e) {
        const auto loc = child("/ensembles", e);
        const auto& arr = array_at(ensembles[e], loc);
        Ensemble& target = e == 0 ? doc.first : doc.second;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto iloc = child(loc, i);
            const auto& pair = array_at(arr[i], iloc);
            if (pair.size() != 2) {
                throw SchemaError(iloc, "expected [coefficient, state]");
            }
            target.emplace_back(rational_from_json(pair[0], child(iloc, 0)), label_from(pair[1], child(iloc, 1)));
        }
    }
    return doc;
}

Json to_json(const SteeringDocument& doc) {
    Json mu = Json::object();
    for (const auto& [k, d] : doc.mu) {
        mu[k] = weights_to_json(d.weights(), [](const Label& l) { return l; });
    }
    Json ensembles = Json::array();
    for (const auto* e : {&doc.first, &doc.second}) {
        Json arr = Json::array();
        for (const auto& [c, l] : *e) {
            arr.push_back(Json::array({to_json(c), l}));
        }
        ensembles.push_back(std::move(arr));
    }
    return Json{{"mu", std::move(mu)}, {"ensembles", std::move(ensembles)}};
}

OntologicalModel any_model_from_json(const Json& j) {
    if (j.is_object() && j.contains("states") && j.contains("measurements")) {
        return quantum_model_from_json(j);
    }
    return model_from_json(j);
}

EmpiricalModel any_empirical_from_json(const Json& j) {
    if (j.is_object() && j.contains("tables")) {
        return empirical_from_json(j);
    }
    return from_ontological(any_model_from_json(j));
}

Json to_json(const Distribution<Assignment>& d) {
    return weights_to_json(d.weights(), [](const Assignment& a) { return a.str(); });
}

Json to_json(const SignedWeights<Assignment>& w) {
    return weights_to_json(w.weights(), [](const Assignment& a) { return a.str(); });
}

Json to_json(const Certificate& c) {
    Json coefficients = Json::object();
    for (const auto& [key, v] : c.coefficients) {
        coefficients[context_key(key.first) + "|" + key.second.str()] = to_json(v);
    }
    return Json{{"coefficients", std::move(coefficients)}, {"table_value", to_json(c.table_value)}};
}

}  // namespace ontolab::io
