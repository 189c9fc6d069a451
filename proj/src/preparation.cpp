#include "ontolab/preparation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ontolab {

PreparationTheory::PreparationTheory(PreparationScenario scenario,
                                     std::map<PrepContext, Distribution<Assignment>> joint_dists)
    : scenario_(std::move(scenario)), joint_dists_(std::move(joint_dists)) {
    const Context sites(scenario_.sites().begin(), scenario_.sites().end());
    const std::set<Label> lambda(scenario_.ontic_states().begin(), scenario_.ontic_states().end());
    for (const auto& c : scenario_.contexts()) {
        if (!joint_dists_.contains(c)) {
            throw std::invalid_argument("no joint distribution for preparation context '" + prep_context_key(c) + "'");
        }
    }
    for (const auto& [c, d] : joint_dists_) {
        if (!scenario_.has_context(c)) {
            throw std::invalid_argument("joint distribution for unknown preparation context '" + prep_context_key(c) +
                                        "'");
        }
        for (const auto& [state, _] : d.weights()) {
            if (state.domain() != sites) {
                throw std::invalid_argument("joint ontic state '" + state.str() + "' must assign every site");
            }
            for (const auto& [site, l] : state.values()) {
                if (!lambda.contains(l)) {
                    throw std::invalid_argument("joint ontic state '" + state.str() + "' uses unknown ontic state '" +
                                                l + "'");
                }
            }
        }
    }
}

const Distribution<Assignment>& PreparationTheory::joint(const PrepContext& c) const {
    const auto it = joint_dists_.find(c);
    if (it == joint_dists_.end()) {
        throw std::invalid_argument("unknown preparation context '" + prep_context_key(c) + "'");
    }
    return it->second;
}

Distribution<Label> PreparationTheory::site_marginal(const PrepContext& c, const Label& site) const {
    return joint(c).marginal([&](const Assignment& a) { return a.at(site); });
}

Verdict<FactorisationGap> is_preparation_independent(const PreparationTheory& t) {
    const auto& scenario = t.scenario();
    const auto joint_states = scenario.joint_ontic_states();
    // h(λ_site|p) is read off the first context selecting p; every context
    // must then equal the product of these factors, which also forces its
    // marginals to agree with them.
    std::map<std::pair<Label, Label>, Distribution<Label>> factors;
    for (const auto& c : scenario.contexts()) {
        for (const auto& [site, p] : c) {
            if (!factors.contains({site, p})) {
                factors.emplace(std::pair{site, p}, t.site_marginal(c, site));
            }
        }
    }
    for (const auto& c : scenario.contexts()) {
        const auto& d = t.joint(c);
        // Every λ̄, including those outside the support: a product of
        // marginals can be positive where the joint vanishes.
        for (const auto& state : joint_states) {
            Rational product(1);
            for (const auto& [site, l] : state.values()) {
                product *= factors.at({site, c.at(site)})(l);
            }
            if (product != d(state)) {
                return {FactorisationGap{c, state}};
            }
        }
    }
    return {};
}

Verdict<PreparationSignal> is_no_preparation_signalling(const PreparationTheory& t) {
    const auto& scenario = t.scenario();
    for (const auto& site : scenario.sites()) {
        for (const auto& p : scenario.preparations().at(site)) {
            std::optional<PrepContext> reference;
            std::optional<Distribution<Label>> reference_marginal;
            for (const auto& c : scenario.contexts()) {
                if (c.at(site) != p) {
                    continue;
                }
                auto marginal = t.site_marginal(c, site);
                if (!reference) {
                    reference = c;
                    reference_marginal = std::move(marginal);
                } else if (marginal != *reference_marginal) {
                    return {PreparationSignal{site, p, *reference, c}};
                }
            }
        }
    }
    return {};
}

std::string SteeringAnalysis::reason() const {
    if (outcome == Outcome::Consistent) {
        return "consistent";
    }
    return supports_disjoint ? "mixture-equality-impossible" : "mixtures-differ";
}

namespace {

Distribution<Label> ensemble_mixture(const std::map<Label, Distribution<Label>>& mu, const Ensemble& ensemble) {
    Rational total;
    std::vector<std::pair<Rational, Distribution<Label>>> parts;
    for (const auto& [coeff, label] : ensemble) {
        const auto it = mu.find(label);
        if (it == mu.end()) {
            throw std::invalid_argument("ensemble names state '" + label + "' with no ontic distribution");
        }
        if (coeff.is_negative()) {
            throw std::invalid_argument("ensemble coefficient " + coeff.str() + " is negative");
        }
        total += coeff;
        parts.emplace_back(coeff, it->second);
    }
    if (total != Rational(1)) {
        throw std::invalid_argument("ensemble coefficients sum to " + total.str() + ", not 1");
    }
    return mixture(parts);
}

}  // namespace

SteeringAnalysis steering_incompatibility(const std::map<Label, Distribution<Label>>& mu, const Ensemble& first,
                                          const Ensemble& second) {
    const auto mix_first = ensemble_mixture(mu, first);
    const auto mix_second = ensemble_mixture(mu, second);

    SteeringAnalysis out;
    std::vector<Label> listed;
    for (const auto* ensemble : {&first, &second}) {
        for (const auto& [_, label] : *ensemble) {
            if (std::find(listed.begin(), listed.end(), label) == listed.end()) {
                listed.push_back(label);
            }
        }
    }
    for (std::size_t i = 0; i < listed.size() && out.supports_disjoint; ++i) {
        for (std::size_t j = i + 1; j < listed.size(); ++j) {
            const auto overlap = supports_disjoint(mu.at(listed[i]), mu.at(listed[j]));
            if (!overlap.disjoint()) {
                out.supports_disjoint = false;
                out.overlapping_states = std::pair{listed[i], listed[j]};
                out.shared_ontic_state = overlap.witness;
                break;
            }
        }
    }

    std::set<Label> carrier;
    for (const auto* d : {&mix_first, &mix_second}) {
        for (const auto& [l, _] : d->weights()) {
            carrier.insert(l);
        }
    }
    for (const auto& l : carrier) {
        if (mix_first(l) != mix_second(l)) {
            out.mixtures_equal = false;
            out.mixture_difference = l;
            break;
        }
    }
    if (!out.mixtures_equal) {
        out.outcome = SteeringAnalysis::Outcome::Contradiction;
    }
    return out;
}

namespace {

PreparationScenario two_site_scenario() {
    std::vector<PrepContext> contexts;
    for (const auto& a : {"a0", "a1"}) {
        for (const auto& b : {"b0", "b1"}) {
            contexts.push_back({{"A", a}, {"B", b}});
        }
    }
    return PreparationScenario({"A", "B"}, std::move(contexts), {"0", "1"});
}

}  // namespace

PreparationTheory correlated_preparation_theory() {
    auto scenario = two_site_scenario();
    std::map<PrepContext, Distribution<Assignment>> joint;
    for (const auto& c : scenario.contexts()) {
        joint.emplace(c, Distribution<Assignment>({{Assignment::parse("A:0,B:0"), Rational(1, 2)},
                                                   {Assignment::parse("A:1,B:1"), Rational(1, 2)}}));
    }
    return PreparationTheory(std::move(scenario), std::move(joint));
}

PreparationTheory product_preparation_theory() {
    const std::map<Label, Distribution<Label>> local{
        {"a0", Distribution<Label>::delta("0")},
        {"a1", Distribution<Label>({{"0", Rational(1, 3)}, {"1", Rational(2, 3)}})},
        {"b0", Distribution<Label>({{"0", Rational(1, 2)}, {"1", Rational(1, 2)}})},
        {"b1", Distribution<Label>::delta("1")},
    };
    auto scenario = two_site_scenario();
    std::map<PrepContext, Distribution<Assignment>> joint;
    for (const auto& c : scenario.contexts()) {
        Distribution<Assignment>::Weights w;
        for (const auto& [la, wa] : local.at(c.at("A")).weights()) {
            for (const auto& [lb, wb] : local.at(c.at("B")).weights()) {
                w.emplace(Assignment({{"A", la}, {"B", lb}}), wa * wb);
            }
        }
        joint.emplace(c, Distribution<Assignment>(std::move(w)));
    }
    return PreparationTheory(std::move(scenario), std::move(joint));
}

}  // namespace ontolab
