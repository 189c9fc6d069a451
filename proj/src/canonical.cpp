#include "ontolab/canonical.hpp"

#include <set>

namespace ontolab {

namespace {

std::string describe(const LocalityVerdict& v) {
    if (v.failure == LocalityVerdict::Failure::NotDeterministic) {
        const auto& w = std::get<StochasticResponse>(v.witness);
        return "model is not local: response of '" + w.state + "' to {" + context_key(w.context) +
               "} is not deterministic";
    }
    const auto& w = std::get<MarginalDisagreement>(v.witness);
    return "model is not local: marginal of '" + w.measurement + "' at '" + w.state + "' differs between {" +
           context_key(w.first) + "} and {" + context_key(w.second) + "}";
}

}  // namespace

NotLocalError::NotLocalError(LocalityVerdict verdict)
    : std::invalid_argument(describe(verdict)), verdict_(std::move(verdict)) {}

std::map<Assignment, Rational> CanonicalModel::weights(const Label& preparation) const {
    std::map<Assignment, Rational> out;
    for (const auto& [omega, w] : model.preparation(preparation).weights()) {
        if (w.is_positive()) {
            out.emplace(Assignment::parse(omega), w);
        }
    }
    return out;
}

Distribution<Assignment> delta_product_response(const Assignment& global, const Context& context) {
    return Distribution<Assignment>::delta(global.restrict(context));
}

CanonicalModel canonicalize(const OntologicalModel& h) {
    const auto verdict = is_local(h);
    if (!verdict.holds()) {
        throw NotLocalError(verdict);
    }
    const auto observables = extract_observable_properties(h);
    std::map<Label, std::map<Label, Label>> generators;
    for (const auto& [m, f] : observables.properties) {
        generators.emplace(m, classify_property(f).generator);
    }

    std::map<Label, Assignment> collapse;
    std::set<Assignment> live;
    for (const auto& s : h.states()) {
        std::map<Label, Label> omega;
        for (const auto& [m, gen] : generators) {
            omega.emplace(m, gen.at(s));
        }
        Assignment a(std::move(omega));
        collapse.emplace(s, a);
        live.insert(a);
    }

    std::vector<Label> omega_labels;
    for (const auto& a : live) {
        omega_labels.push_back(a.str());
    }

    std::map<Label, Distribution<Label>> prep_dists;
    for (const auto& p : h.preparations()) {
        prep_dists.emplace(p, h.preparation(p).marginal([&](const Label& s) { return collapse.at(s).str(); }));
    }

    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    for (const auto& a : live) {
        for (const auto& c : h.scenario().contexts()) {
            responses.emplace(OntologicalModel::ResponseKey{a.str(), c}, delta_product_response(a, c));
        }
    }

    CanonicalModel out{OntologicalModel(h.scenario(), h.preparations(), std::move(omega_labels),
                                        std::move(prep_dists), std::move(responses)),
                       std::move(collapse)};

    for (const auto& p : h.preparations()) {
        for (const auto& c : h.scenario().contexts()) {
            if (operational_probabilities(out.model, p, c) != operational_probabilities(h, p, c)) {
                throw std::logic_error("canonical model changes the operational table of '" + p + "' on {" +
                                       context_key(c) + "}");
            }
        }
    }
    return out;
}

}  // namespace ontolab
