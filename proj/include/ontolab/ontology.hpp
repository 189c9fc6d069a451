#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ontolab/distribution.hpp"
#include "ontolab/scenario.hpp"

namespace ontolab {

/// Outcome of a yes/no check. A negative verdict always carries a witness.
template <class W>
struct Verdict {
    std::optional<W> witness;

    [[nodiscard]] bool holds() const { return !witness.has_value(); }
    explicit operator bool() const { return holds(); }
};

/// A V-valued property over a finite ontic state space: λ ↦ f(λ) ∈ D(V).
class Property {
public:
    Property(std::vector<Label> states, std::vector<Label> values, std::map<Label, Distribution<Label>> f);

    [[nodiscard]] const std::vector<Label>& states() const { return states_; }
    [[nodiscard]] const std::vector<Label>& values() const { return values_; }
    [[nodiscard]] const Distribution<Label>& at(const Label& state) const;
    [[nodiscard]] const std::map<Label, Distribution<Label>>& map() const { return f_; }

private:
    std::vector<Label> states_;
    std::vector<Label> values_;
    std::map<Label, Distribution<Label>> f_;
};

/// An ontic state compatible with two distinct values.
struct EpistemicWitness {
    Label state;
    Label value;
    Label other_value;

    friend bool operator==(const EpistemicWitness&, const EpistemicWitness&) = default;
};

struct Classification {
    enum class Kind { Ontic, Epistemic };

    Kind kind = Kind::Ontic;
    /// Set iff Epistemic.
    std::optional<EpistemicWitness> witness;
    /// f̂ : Λ → V with f(λ) = δ_{f̂(λ)}; filled iff Ontic.
    std::map<Label, Label> generator;

    [[nodiscard]] bool ontic() const { return kind == Kind::Ontic; }
};

Classification classify_property(const Property& f);

struct BayesianInversion {
    /// μ_v for each value; nullopt when v has zero total weight under the prior.
    std::map<Label, std::optional<Distribution<Label>>> posteriors;
    /// Σ_λ f(λ)(v)·prior(λ) for each value.
    std::map<Label, Rational> normalizers;
};

/// μ_v(λ) = f(λ)(v)·prior(λ) / Σ_λ' f(λ')(v)·prior(λ').
BayesianInversion bayesian_inversion(const Property& f, const Distribution<Label>& prior);

/// Whether the defined μ_v have pairwise disjoint supports. The prior must
/// give positive weight to every state of f and nothing else.
Verdict<EpistemicWitness> hs_ontic_by_supports(const Property& f, const Distribution<Label>& prior);

/// Finite ontological model: h(λ|p) for each preparation and h(ō|m̄,λ) for
/// each state and context.
class OntologicalModel {
public:
    using ResponseKey = std::pair<Label, Context>;

    OntologicalModel(MeasurementScenario scenario, std::vector<Label> preparations, std::vector<Label> states,
                     std::map<Label, Distribution<Label>> prep_dists,
                     std::map<ResponseKey, Distribution<Assignment>> responses);

    [[nodiscard]] const MeasurementScenario& scenario() const { return scenario_; }
    [[nodiscard]] const std::vector<Label>& preparations() const { return preparations_; }
    [[nodiscard]] const std::vector<Label>& states() const { return states_; }
    [[nodiscard]] const Distribution<Label>& preparation(const Label& p) const;
    [[nodiscard]] const Distribution<Assignment>& response(const Label& state, const Context& c) const;
    [[nodiscard]] const std::map<Label, Distribution<Label>>& prep_dists() const { return prep_dists_; }
    [[nodiscard]] const std::map<ResponseKey, Distribution<Assignment>>& responses() const { return responses_; }

private:
    MeasurementScenario scenario_;
    std::vector<Label> preparations_;
    std::vector<Label> states_;
    std::map<Label, Distribution<Label>> prep_dists_;
    std::map<ResponseKey, Distribution<Assignment>> responses_;
};

/// h(ō|m̄,p) = Σ_λ h(ō|m̄,λ)·h(λ|p).
Distribution<Assignment> operational_probabilities(const OntologicalModel& h, const Label& preparation,
                                                   const Context& context);

struct StochasticResponse {
    Label state;
    Context context;
};

/// The marginal of measurement on `state` differs between two contexts.
struct MarginalDisagreement {
    Label measurement;
    Label state;
    Context first;
    Context second;
};

struct FactorisationFailure {
    Label state;
    Context context;
    Assignment outcome;
};

struct ObservableProperties {
    /// f_m for every measurement whose marginal is well-defined.
    std::map<Label, Property> properties;
    /// First measurement found without a well-defined marginal.
    std::optional<MarginalDisagreement> disagreement;

    [[nodiscard]] bool complete() const { return !disagreement.has_value(); }
};

ObservableProperties extract_observable_properties(const OntologicalModel& h);

Verdict<StochasticResponse> is_deterministic(const OntologicalModel& h);
Verdict<MarginalDisagreement> is_parameter_independent(const OntologicalModel& h);

struct LocalityVerdict {
    enum class Failure { None, NotDeterministic, NotParameterIndependent };

    Failure failure = Failure::None;
    std::variant<std::monostate, StochasticResponse, MarginalDisagreement> witness;

    [[nodiscard]] bool holds() const { return failure == Failure::None; }
};

/// Deterministic and parameter-independent. Cross-checked against the
/// observable-property route (every f_m defined and ontic); throws
/// std::logic_error if the two routes ever disagree.
LocalityVerdict is_local(const OntologicalModel& h);

/// h(ō|m̄,λ) = Π_{m∈m̄} h(ō(m)|m,λ). Throws std::invalid_argument when the
/// model is not parameter-independent.
Verdict<FactorisationFailure> is_factorisable(const OntologicalModel& h);

}  // namespace ontolab
