#include "ontolab/ontology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ontolab {

namespace {

Distribution<Label> single_marginal(const Distribution<Assignment>& d, const Label& m) {
    return d.marginal([&](const Assignment& a) { return a.at(m); });
}

}  // namespace

Property::Property(std::vector<Label> states, std::vector<Label> values, std::map<Label, Distribution<Label>> f)
    : states_(std::move(states)), values_(std::move(values)), f_(std::move(f)) {
    const std::set<Label> state_set(states_.begin(), states_.end());
    const std::set<Label> value_set(values_.begin(), values_.end());
    if (state_set.size() != states_.size() || value_set.size() != values_.size()) {
        throw std::invalid_argument("property with duplicate states or values");
    }
    if (states_.empty()) {
        throw std::invalid_argument("property over an empty state space");
    }
    for (const auto& s : states_) {
        if (!f_.contains(s)) {
            throw std::invalid_argument("property undefined on state '" + s + "'");
        }
    }
    for (const auto& [s, d] : f_) {
        if (!state_set.contains(s)) {
            throw std::invalid_argument("property defined on unknown state '" + s + "'");
        }
        for (const auto& [v, _] : d.weights()) {
            if (!value_set.contains(v)) {
                throw std::invalid_argument("property takes unknown value '" + v + "' at state '" + s + "'");
            }
        }
    }
}

const Distribution<Label>& Property::at(const Label& state) const {
    const auto it = f_.find(state);
    if (it == f_.end()) {
        throw std::out_of_range("property undefined on state '" + state + "'");
    }
    return it->second;
}

Classification classify_property(const Property& f) {
    Classification out;
    for (const auto& s : f.states()) {
        const auto& d = f.at(s);
        if (auto v = is_delta(d)) {
            out.generator.emplace(s, *v);
            continue;
        }
        const auto support = d.support();
        auto it = support.begin();
        const Label first = *it++;
        out.kind = Classification::Kind::Epistemic;
        out.witness = EpistemicWitness{s, first, *it};
        out.generator.clear();
        return out;
    }
    return out;
}

BayesianInversion bayesian_inversion(const Property& f, const Distribution<Label>& prior) {
    for (const auto& [s, _] : prior.weights()) {
        if (std::find(f.states().begin(), f.states().end(), s) == f.states().end()) {
            throw std::invalid_argument("prior weights unknown state '" + s + "'");
        }
    }
    BayesianInversion out;
    for (const auto& v : f.values()) {
        Rational normalizer;
        for (const auto& s : f.states()) {
            normalizer += f.at(s)(v) * prior(s);
        }
        out.normalizers.emplace(v, normalizer);
        if (normalizer.is_zero()) {
            out.posteriors.emplace(v, std::nullopt);
            continue;
        }
        Distribution<Label>::Weights mu;
        for (const auto& s : f.states()) {
            mu.emplace(s, f.at(s)(v) * prior(s) / normalizer);
        }
        out.posteriors.emplace(v, Distribution<Label>(std::move(mu)));
    }
    return out;
}

Verdict<EpistemicWitness> hs_ontic_by_supports(const Property& f, const Distribution<Label>& prior) {
    for (const auto& s : f.states()) {
        if (!prior(s).is_positive()) {
            throw std::invalid_argument("prior lacks full support: state '" + s + "' has zero weight");
        }
    }
    const auto inversion = bayesian_inversion(f, prior);
    std::vector<std::pair<Label, const Distribution<Label>*>> defined;
    for (const auto& [v, mu] : inversion.posteriors) {
        if (mu) {
            defined.emplace_back(v, &*mu);
        }
    }
    for (std::size_t i = 0; i < defined.size(); ++i) {
        for (std::size_t j = i + 1; j < defined.size(); ++j) {
            const auto overlap = supports_disjoint(*defined[i].second, *defined[j].second);
            if (!overlap.disjoint()) {
                return {EpistemicWitness{*overlap.witness, defined[i].first, defined[j].first}};
            }
        }
    }
    return {};
}

OntologicalModel::OntologicalModel(MeasurementScenario scenario, std::vector<Label> preparations,
                                   std::vector<Label> states, std::map<Label, Distribution<Label>> prep_dists,
                                   std::map<ResponseKey, Distribution<Assignment>> responses)
    : scenario_(std::move(scenario)),
      preparations_(std::move(preparations)),
      states_(std::move(states)),
      prep_dists_(std::move(prep_dists)),
      responses_(std::move(responses)) {
    const std::set<Label> state_set(states_.begin(), states_.end());
    const std::set<Label> prep_set(preparations_.begin(), preparations_.end());
    if (state_set.size() != states_.size()) {
        throw std::invalid_argument("duplicate ontic state label");
    }
    if (prep_set.size() != preparations_.size()) {
        throw std::invalid_argument("duplicate preparation label");
    }
    if (states_.empty()) {
        throw std::invalid_argument("empty ontic state space");
    }
    for (const auto& s : states_) {
        if (s.empty() || s.find('|') != Label::npos) {
            throw std::invalid_argument("ontic state label '" + s + "' is empty or contains '|'");
        }
    }
    for (const auto& p : preparations_) {
        if (p.empty() || p.find('|') != Label::npos) {
            throw std::invalid_argument("preparation label '" + p + "' is empty or contains '|'");
        }
        if (!prep_dists_.contains(p)) {
            throw std::invalid_argument("no distribution for preparation '" + p + "'");
        }
    }
    for (const auto& [p, d] : prep_dists_) {
        if (!prep_set.contains(p)) {
            throw std::invalid_argument("distribution given for unknown preparation '" + p + "'");
        }
        for (const auto& [s, _] : d.weights()) {
            if (!state_set.contains(s)) {
                throw std::invalid_argument("preparation '" + p + "' weights unknown state '" + s + "'");
            }
        }
    }
    for (const auto& s : states_) {
        for (const auto& c : scenario_.contexts()) {
            if (!responses_.contains({s, c})) {
                throw std::invalid_argument("no response for state '" + s + "' in context {" + context_key(c) + "}");
            }
        }
    }
    for (const auto& [key, d] : responses_) {
        const auto& [s, c] = key;
        if (!state_set.contains(s) || !scenario_.has_context(c)) {
            throw std::invalid_argument("response for unknown pair '" + s + "|" + context_key(c) + "'");
        }
        for (const auto& [a, _] : d.weights()) {
            if (!scenario_.is_assignment_on(a, c)) {
                throw std::invalid_argument("response '" + s + "|" + context_key(c) + "' has joint outcome '" +
                                            a.str() + "' outside E(m̄)");
            }
        }
    }
}

const Distribution<Label>& OntologicalModel::preparation(const Label& p) const {
    const auto it = prep_dists_.find(p);
    if (it == prep_dists_.end()) {
        throw std::invalid_argument("unknown preparation '" + p + "'");
    }
    return it->second;
}

const Distribution<Assignment>& OntologicalModel::response(const Label& state, const Context& c) const {
    const auto it = responses_.find({state, c});
    if (it == responses_.end()) {
        throw std::invalid_argument("no response for '" + state + "|" + context_key(c) + "'");
    }
    return it->second;
}

Distribution<Assignment> operational_probabilities(const OntologicalModel& h, const Label& preparation,
                                                   const Context& context) {
    if (!h.scenario().has_context(context)) {
        throw std::invalid_argument("unknown context {" + context_key(context) + "}");
    }
    const auto& prep = h.preparation(preparation);
    std::vector<std::pair<Rational, Distribution<Assignment>>> parts;
    for (const auto& [s, w] : prep.weights()) {
        if (w.is_positive()) {
            parts.emplace_back(w, h.response(s, context));
        }
    }
    return mixture(parts);
}

ObservableProperties extract_observable_properties(const OntologicalModel& h) {
    ObservableProperties out;
    const auto& scenario = h.scenario();
    for (const auto& m : scenario.measurements()) {
        const auto contexts = scenario.contexts_containing(m);
        std::map<Label, Distribution<Label>> f;
        std::optional<MarginalDisagreement> bad;
        for (const auto& s : h.states()) {
            const auto reference = single_marginal(h.response(s, contexts.front()), m);
            for (std::size_t i = 1; i < contexts.size() && !bad; ++i) {
                if (single_marginal(h.response(s, contexts[i]), m) != reference) {
                    bad = MarginalDisagreement{m, s, contexts.front(), contexts[i]};
                }
            }
            if (bad) {
                break;
            }
            f.emplace(s, reference);
        }
        if (bad) {
            if (!out.disagreement) {
                out.disagreement = std::move(bad);
            }
            continue;
        }
        out.properties.emplace(m, Property(h.states(), scenario.outcomes(), std::move(f)));
    }
    return out;
}

Verdict<StochasticResponse> is_deterministic(const OntologicalModel& h) {
    for (const auto& [key, d] : h.responses()) {
        if (!is_delta(d)) {
            return {StochasticResponse{key.first, key.second}};
        }
    }
    return {};
}

Verdict<MarginalDisagreement> is_parameter_independent(const OntologicalModel& h) {
    return {extract_observable_properties(h).disagreement};
}

LocalityVerdict is_local(const OntologicalModel& h) {
    LocalityVerdict out;
    const auto det = is_deterministic(h);
    const auto observables = extract_observable_properties(h);
    if (!det.holds()) {
        out.failure = LocalityVerdict::Failure::NotDeterministic;
        out.witness = *det.witness;
    } else if (!observables.complete()) {
        out.failure = LocalityVerdict::Failure::NotParameterIndependent;
        out.witness = *observables.disagreement;
    }

    bool all_ontic = observables.complete();
    for (const auto& [_, f] : observables.properties) {
        all_ontic = all_ontic && classify_property(f).ontic();
    }
    if (all_ontic != out.holds()) {
        throw std::logic_error("locality routes disagree: deterministic+parameter-independent is " +
                               std::string(out.holds() ? "true" : "false") +
                               " but observable-properties-ontic is " + (all_ontic ? "true" : "false"));
    }
    return out;
}

Verdict<FactorisationFailure> is_factorisable(const OntologicalModel& h) {
    const auto observables = extract_observable_properties(h);
    if (!observables.complete()) {
        throw std::invalid_argument("factorisability needs a parameter-independent model; marginal of '" +
                                    observables.disagreement->measurement + "' is context-dependent");
    }
    const auto& scenario = h.scenario();
    for (const auto& s : h.states()) {
        for (const auto& c : scenario.contexts()) {
            const auto& d = h.response(s, c);
            std::optional<FactorisationFailure> bad;
            scenario.for_each_assignment(c, [&](const Assignment& a) {
                if (bad) {
                    return;
                }
                Rational product(1);
                for (const auto& [m, o] : a.values()) {
                    product *= observables.properties.at(m).at(s)(o);
                }
                if (product != d(a)) {
                    bad = FactorisationFailure{s, c, a};
                }
            });
            if (bad) {
                return {std::move(bad)};
            }
        }
    }
    return {};
}

}  // namespace ontolab
