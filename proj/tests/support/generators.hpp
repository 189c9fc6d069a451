#pragma once

// Random instances for property tests and the acceptance suite.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ontolab/ontology.hpp"
#include "ontolab/scenario.hpp"

namespace ontolab::testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

inline std::vector<Label> numbered(const std::string& prefix, int n) {
    std::vector<Label> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(prefix + std::to_string(i));
    }
    return out;
}

// Weights k_i/d with d ≤ max_den; some entries may be stored as explicit zeros.
template <class S>
Distribution<S> random_distribution(Rng& rng, const std::vector<S>& carrier, int max_den = 12) {
    const int d = uniform_int(rng, 1, max_den);
    std::vector<int> units(carrier.size(), 0);
    for (int i = 0; i < d; ++i) {
        ++units[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(carrier.size()) - 1))];
    }
    std::map<S, Rational> w;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
        if (units[i] > 0 || coin(rng, 0.2)) {
            w[carrier[i]] = Rational(units[i], d);
        }
    }
    return Distribution<S>(std::move(w));
}

template <class S>
S pick(Rng& rng, const std::vector<S>& v) {
    return v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 1))];
}

// |Λ| ≤ 6, |V| ≤ 4; roughly half the instances are generated from a function.
inline Property random_property(Rng& rng) {
    const auto states = numbered("l", uniform_int(rng, 1, 6));
    const auto values = numbered("v", uniform_int(rng, 1, 4));
    const bool functional = coin(rng);
    std::map<Label, Distribution<Label>> f;
    for (const auto& s : states) {
        f.emplace(s, functional ? Distribution<Label>::delta(pick(rng, values)) : random_distribution(rng, values));
    }
    return Property(states, values, std::move(f));
}

inline Distribution<Assignment> product_of(const std::map<Label, Distribution<Label>>& factors,
                                           const MeasurementScenario& scenario, const Context& c) {
    std::map<Assignment, Rational> w;
    scenario.for_each_assignment(c, [&](const Assignment& a) {
        Rational p(1);
        for (const auto& m : c) {
            p *= factors.at(m)(a.at(m));
        }
        if (!p.is_zero()) {
            w.emplace(a, p);
        }
    });
    return Distribution<Assignment>(std::move(w));
}

enum class ModelKind { DeterministicLocal, DeterministicDependent, StochasticProduct, StochasticArbitrary };

inline const char* kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::DeterministicLocal: return "deterministic-local";
        case ModelKind::DeterministicDependent: return "deterministic-dependent";
        case ModelKind::StochasticProduct: return "stochastic-product";
        case ModelKind::StochasticArbitrary: return "stochastic-arbitrary";
    }
    return "?";
}

// One global assignment per state: h(ō|m̄,λ) = δ(ō, g_λ|m̄).
inline OntologicalModel deterministic_model(Rng& rng, const MeasurementScenario& scenario,
                                            const std::vector<Assignment>& generators) {
    const auto states = numbered("s", static_cast<int>(generators.size()));
    const auto preps = numbered("p", uniform_int(rng, 1, 3));
    std::map<Label, Distribution<Label>> prep_dists;
    for (const auto& p : preps) {
        prep_dists.emplace(p, random_distribution(rng, states));
    }
    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (const auto& c : scenario.contexts()) {
            responses.emplace(std::pair{states[i], c}, Distribution<Assignment>::delta(generators[i].restrict(c)));
        }
    }
    return OntologicalModel(scenario, preps, states, std::move(prep_dists), std::move(responses));
}

inline Assignment random_global(Rng& rng, const MeasurementScenario& scenario) {
    std::map<Label, Label> values;
    for (const auto& m : scenario.measurements()) {
        values.emplace(m, pick(rng, scenario.outcomes()));
    }
    return Assignment(std::move(values));
}

// A local model; generators repeat often so that canonical merging is exercised.
inline OntologicalModel random_local_model(Rng& rng, const MeasurementScenario& scenario) {
    const int n = uniform_int(rng, 1, 5);
    std::vector<Assignment> generators;
    for (int i = 0; i < n; ++i) {
        generators.push_back(!generators.empty() && coin(rng, 0.3) ? pick(rng, generators)
                                                                     : random_global(rng, scenario));
    }
    return deterministic_model(rng, scenario, generators);
}

inline OntologicalModel random_model(Rng& rng, const MeasurementScenario& scenario, ModelKind kind) {
    if (kind == ModelKind::DeterministicLocal) {
        return random_local_model(rng, scenario);
    }
    const auto states = numbered("s", uniform_int(rng, 1, 3));
    const auto preps = numbered("p", uniform_int(rng, 1, 2));
    std::map<Label, Distribution<Label>> prep_dists;
    for (const auto& p : preps) {
        prep_dists.emplace(p, random_distribution(rng, states));
    }
    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    const auto& contexts = scenario.contexts();
    // For the parameter-dependent kind, one (state, context, measurement) answers differently.
    const Label odd_state = pick(rng, states);
    const Context odd_context = pick(rng, contexts);
    const Label odd_measurement = pick(rng, std::vector<Label>(odd_context.begin(), odd_context.end()));
    for (const auto& s : states) {
        const auto g = random_global(rng, scenario);
        std::map<Label, Distribution<Label>> factors;
        for (const auto& m : scenario.measurements()) {
            factors.emplace(m, random_distribution(rng, scenario.outcomes(), 6));
        }
        for (const auto& c : contexts) {
            Distribution<Assignment> r = Distribution<Assignment>::delta(g.restrict(c));
            if (kind == ModelKind::DeterministicDependent) {
                if (s == odd_state && c == odd_context) {
                    auto values = g.restrict(c).values();
                    const auto& outs = scenario.outcomes();
                    const auto it = std::find(outs.begin(), outs.end(), values.at(odd_measurement));
                    values[odd_measurement] = outs[static_cast<std::size_t>((it - outs.begin() + 1)) % outs.size()];
                    r = Distribution<Assignment>::delta(Assignment(values));
                }
            } else if (kind == ModelKind::StochasticProduct) {
                r = product_of(factors, scenario, c);
            } else {
                r = random_distribution(rng, scenario.event_sheaf(c));
            }
            responses.emplace(std::pair{s, c}, std::move(r));
        }
    }
    return OntologicalModel(scenario, preps, states, std::move(prep_dists), std::move(responses));
}

}  // namespace ontolab::testing
