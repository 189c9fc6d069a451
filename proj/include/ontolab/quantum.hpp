#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ontolab/ontology.hpp"
#include "ontolab/preparation.hpp"

namespace ontolab::quantum {

using Amplitude = std::complex<double>;
using Vector = std::vector<Amplitude>;

/// Amplitude tolerance for normalization and orthogonality checks.
inline constexpr double kTolerance = 1e-9;
/// Denominator bound used when Born probabilities enter the exact core.
inline constexpr std::int64_t kMaxDenominator = 1'000'000;

/// Closest fraction to `x` with denominator at most `max_denominator`
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double x, std::int64_t max_denominator = kMaxDenominator);

class PureState {
public:
    PureState(Label label, Vector amplitudes);

    /// "ket0", "ket1", "ketplus", "ketminus", "phi_plus".
    static PureState named(const std::string& name);
    static bool is_named(const std::string& name);

    [[nodiscard]] const Label& label() const { return label_; }
    [[nodiscard]] const Vector& amplitudes() const { return amplitudes_; }
    [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }

private:
    Label label_;
    Vector amplitudes_;
};

Vector tensor(const Vector& a, const Vector& b);

/// Projective measurement given by an orthonormal basis; several basis vectors
/// may share an outcome label (a degenerate eigenspace).
class ProjectiveMeasurement {
public:
    struct Branch {
        Label outcome;
        Vector vector;
    };

    ProjectiveMeasurement(Label label, std::vector<Branch> branches);

    /// "Z" ({0: ket0, 1: ket1}) or "X" ({0: ketplus, 1: ketminus}).
    static ProjectiveMeasurement named(const std::string& name);

    [[nodiscard]] const Label& label() const { return label_; }
    [[nodiscard]] const std::vector<Branch>& branches() const { return branches_; }
    [[nodiscard]] std::size_t dimension() const { return branches_.front().vector.size(); }
    [[nodiscard]] std::vector<Label> outcomes() const;

private:
    Label label_;
    std::vector<Branch> branches_;
};

/// Joint measurement of a context: local measurements tensored in the
/// context's sorted order, outcomes labelled by the joint assignment.
ProjectiveMeasurement product_measurement(const Context& context,
                                          const std::map<Label, ProjectiveMeasurement>& locals);

/// |⟨v_o|ψ⟩|² per outcome, rationalized and renormalized exactly. Throws
/// std::invalid_argument on a dimension mismatch and std::domain_error when
/// the float probabilities do not sum to 1 within tolerance.
Distribution<Label> born(const PureState& state, const ProjectiveMeasurement& m);

/// ψ-complete model: the ontic states are the given quantum states and each
/// response is the Born distribution of the context's joint measurement.
/// Without explicit preparations, each state is prepared by a preparation of
/// the same label.
OntologicalModel psi_complete_model(const std::vector<PureState>& states, const MeasurementScenario& scenario,
                                    const std::map<Context, ProjectiveMeasurement>& joint_measurements,
                                    std::optional<std::map<Label, Distribution<Label>>> preparations = std::nullopt);

/// classify_property of f_m; throws std::invalid_argument if f_m is undefined.
Classification check_observable_epistemicity(const OntologicalModel& model, const Label& measurement);

using DensityMatrix = std::array<std::array<Amplitude, 2>, 2>;

struct SteeringEnsembles {
    /// Remote preparations from measuring the first qubit of |φ⁺⟩ in Z and in X.
    Ensemble computational;
    Ensemble hadamard;
    DensityMatrix rho_computational{};
    DensityMatrix rho_hadamard{};

    [[nodiscard]] bool same_density(double tolerance = kTolerance) const;
};

SteeringEnsembles steering_ensembles();

/// {ket0, ket1, ketplus, ketminus} measured by Z and X (single contexts).
OntologicalModel qubit_psi_complete_model();

/// |φ⁺⟩ on the (2,2,2) scenario with a0 = b0 = Z and a1 = b1 = X.
OntologicalModel bell_psi_complete_model();

/// |φ⁺⟩ on the (2,2,2) scenario with a0 = Z, a1 = X and Bob measuring
/// (Z ± X)/√2: the CHSH-optimal settings.
OntologicalModel chsh_psi_complete_model();

}  // namespace ontolab::quantum
