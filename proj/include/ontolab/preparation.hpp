#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ontolab/ontology.hpp"

namespace ontolab {

/// Joint ontic-state distributions h(λ̄|p̄) for every preparation context of
/// a preparation scenario. A joint ontic state λ̄ is an Assignment site → Λ.
class PreparationTheory {
public:
    PreparationTheory(PreparationScenario scenario, std::map<PrepContext, Distribution<Assignment>> joint_dists);

    [[nodiscard]] const PreparationScenario& scenario() const { return scenario_; }
    [[nodiscard]] const Distribution<Assignment>& joint(const PrepContext& c) const;
    [[nodiscard]] const std::map<PrepContext, Distribution<Assignment>>& joint_dists() const { return joint_dists_; }

    /// h(λ_site | p̄).
    [[nodiscard]] Distribution<Label> site_marginal(const PrepContext& c, const Label& site) const;

private:
    PreparationScenario scenario_;
    std::map<PrepContext, Distribution<Assignment>> joint_dists_;
};

struct FactorisationGap {
    PrepContext context;
    Assignment joint_state;
};

/// h(λ̄|p̄) = Π_site h(λ_site|p̄(site)) for every p̄ and every λ̄, with factors
/// that depend on the local preparation only.
Verdict<FactorisationGap> is_preparation_independent(const PreparationTheory& t);

struct PreparationSignal {
    Label site;
    Label preparation;
    PrepContext first;
    PrepContext second;
};

/// The marginal of λ_site given p̄ depends only on the preparation at that site.
Verdict<PreparationSignal> is_no_preparation_signalling(const PreparationTheory& t);

/// Sites A, B with preparations {a0, a1} and {b0, b1}, Λ = {0, 1}, and the
/// perfectly correlated joint {A:0,B:0: 1/2, A:1,B:1: 1/2} in all four
/// contexts: no-preparation-signalling but not preparation independent.
PreparationTheory correlated_preparation_theory();

/// Same scenario with joint distributions that are products of per-site
/// factors depending only on the local preparation.
PreparationTheory product_preparation_theory();

using Ensemble = std::vector<std::pair<Rational, Label>>;

struct SteeringAnalysis {
    enum class Outcome { Consistent, Contradiction };

    Outcome outcome = Outcome::Consistent;
    /// Pairwise disjointness of the supports of every listed state.
    bool supports_disjoint = true;
    /// First two listed states found sharing an ontic state, and that state.
    std::optional<std::pair<Label, Label>> overlapping_states;
    std::optional<Label> shared_ontic_state;
    /// Whether both ensembles induce the same distribution over Λ.
    bool mixtures_equal = true;
    /// An ontic state on which the two mixtures differ.
    std::optional<Label> mixture_difference;

    [[nodiscard]] bool contradiction() const { return outcome == Outcome::Contradiction; }
    [[nodiscard]] std::string reason() const;
};

/// Remote preparation must leave the distant ontic-state distribution
/// independent of the basis chosen, i.e. the two ensemble mixtures must agree.
/// Contradiction is reported exactly when they differ. The reason is
/// "mixture-equality-impossible" when the listed states have pairwise disjoint
/// supports (an ontic wavefunction), otherwise "mixtures-differ".
SteeringAnalysis steering_incompatibility(const std::map<Label, Distribution<Label>>& mu, const Ensemble& first,
                                          const Ensemble& second);

}  // namespace ontolab
