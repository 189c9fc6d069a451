#include "ontolab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace ontolab::quantum {

namespace {

Amplitude inner(const Vector& a, const Vector& b) {
    Amplitude sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += std::conj(a[i]) * b[i];
    }
    return sum;
}

double norm2(const Vector& v) { return std::real(inner(v, v)); }

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Joint measurements label outcomes by assignment ("a0:0,b0:1"); a
// single-measurement context may also use the bare outcome.
Assignment as_joint_outcome(const Label& o, const Context& c, const MeasurementScenario& scenario,
                            const Label& measurement) {
    if (c.size() == 1 && scenario.has_outcome(o)) {
        return Assignment(std::map<Label, Label>{{*c.begin(), o}});
    }
    if (o.find(':') != Label::npos) {
        Assignment a = Assignment::parse(o);
        if (scenario.is_assignment_on(a, c)) {
            return a;
        }
    }
    throw std::invalid_argument("outcome '" + o + "' of measurement '" + measurement +
                                "' is not a joint outcome of {" + context_key(c) + "}");
}

}  // namespace

Rational rationalize(double x, std::int64_t max_denominator) {
    if (!std::isfinite(x)) {
        throw std::domain_error("cannot rationalize a non-finite value");
    }
    if (max_denominator < 1) {
        throw std::invalid_argument("denominator bound must be positive");
    }
    // The double is exactly representable as a fraction; approximate that.
    const mpq_class exact(x);
    const mpz_class bound(std::to_string(max_denominator));
    if (exact.get_den() <= bound) {
        return Rational(exact);
    }
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    mpz_class n = exact.get_num();
    mpz_class d = exact.get_den();
    while (true) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        const mpz_class q2 = q0 + a * q1;
        if (q2 > bound) {
            break;
        }
        const mpz_class p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const mpz_class r = n - a * d;
        n = d;
        d = r;
        if (d == 0) {
            break;
        }
    }
    mpz_class k;
    mpz_fdiv_q(k.get_mpz_t(), mpz_class(bound - q0).get_mpz_t(), q1.get_mpz_t());
    const mpq_class semi(mpz_class(p0 + k * p1), mpz_class(q0 + k * q1));
    const mpq_class conv(p1, q1);
    const mpq_class err_semi = abs(mpq_class(semi - exact));
    const mpq_class err_conv = abs(mpq_class(conv - exact));
    return Rational(err_conv <= err_semi ? conv : semi);
}

PureState::PureState(Label label, Vector amplitudes) : label_(std::move(label)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("state '" + label_ + "' has no amplitudes");
    }
    if (std::abs(norm2(amplitudes_) - 1.0) > kTolerance) {
        throw std::invalid_argument("state '" + label_ + "' is not normalized");
    }
}

bool PureState::is_named(const std::string& name) {
    return name == "ket0" || name == "ket1" || name == "ketplus" || name == "ketminus" || name == "phi_plus";
}

PureState PureState::named(const std::string& name) {
    if (name == "ket0") {
        return PureState(name, {1.0, 0.0});
    }
    if (name == "ket1") {
        return PureState(name, {0.0, 1.0});
    }
    if (name == "ketplus") {
        return PureState(name, {kInvSqrt2, kInvSqrt2});
    }
    if (name == "ketminus") {
        return PureState(name, {kInvSqrt2, -kInvSqrt2});
    }
    if (name == "phi_plus") {
        return PureState(name, {kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    }
    throw std::invalid_argument("unknown built-in state '" + name + "'");
}

Vector tensor(const Vector& a, const Vector& b) {
    Vector out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

ProjectiveMeasurement::ProjectiveMeasurement(Label label, std::vector<Branch> branches)
    : label_(std::move(label)), branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw std::invalid_argument("measurement '" + label_ + "' has no eigenvectors");
    }
    const std::size_t dim = branches_.front().vector.size();
    if (branches_.size() != dim) {
        throw std::invalid_argument("measurement '" + label_ + "' needs " + std::to_string(dim) +
                                    " eigenvectors for a complete basis, got " + std::to_string(branches_.size()));
    }
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        if (branches_[i].vector.size() != dim) {
            throw std::invalid_argument("measurement '" + label_ + "' mixes eigenvector dimensions");
        }
        for (std::size_t j = i; j < branches_.size(); ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(inner(branches_[i].vector, branches_[j].vector) - expected) > kTolerance) {
                throw std::invalid_argument("measurement '" + label_ + "' eigenvectors are not orthonormal");
            }
        }
    }
}

ProjectiveMeasurement ProjectiveMeasurement::named(const std::string& name) {
    if (name == "Z") {
        return ProjectiveMeasurement(name, {{"0", {1.0, 0.0}}, {"1", {0.0, 1.0}}});
    }
    if (name == "X") {
        return ProjectiveMeasurement(name, {{"0", {kInvSqrt2, kInvSqrt2}}, {"1", {kInvSqrt2, -kInvSqrt2}}});
    }
    throw std::invalid_argument("unknown built-in measurement '" + name + "'");
}

std::vector<Label> ProjectiveMeasurement::outcomes() const {
    std::vector<Label> out;
    for (const auto& b : branches_) {
        if (std::find(out.begin(), out.end(), b.outcome) == out.end()) {
            out.push_back(b.outcome);
        }
    }
    return out;
}

ProjectiveMeasurement product_measurement(const Context& context,
                                          const std::map<Label, ProjectiveMeasurement>& locals) {
    std::vector<ProjectiveMeasurement::Branch> branches{{"", Vector{1.0}}};
    std::vector<std::map<Label, Label>> outcome_maps{{}};
    for (const auto& m : context) {
        const auto it = locals.find(m);
        if (it == locals.end()) {
            throw std::invalid_argument("no local measurement for '" + m + "'");
        }
        std::vector<ProjectiveMeasurement::Branch> next;
        std::vector<std::map<Label, Label>> next_maps;
        for (std::size_t i = 0; i < branches.size(); ++i) {
            for (const auto& b : it->second.branches()) {
                auto values = outcome_maps[i];
                values.emplace(m, b.outcome);
                next.push_back({"", tensor(branches[i].vector, b.vector)});
                next_maps.push_back(std::move(values));
            }
        }
        branches = std::move(next);
        outcome_maps = std::move(next_maps);
    }
    for (std::size_t i = 0; i < branches.size(); ++i) {
        branches[i].outcome = Assignment(outcome_maps[i]).str();
    }
    return ProjectiveMeasurement(context_key(context), std::move(branches));
}

Distribution<Label> born(const PureState& state, const ProjectiveMeasurement& m) {
    if (state.dimension() != m.dimension()) {
        throw std::invalid_argument("state '" + state.label() + "' has dimension " +
                                    std::to_string(state.dimension()) + " but measurement '" + m.label() +
                                    "' has dimension " + std::to_string(m.dimension()));
    }
    std::map<Label, double> probs;
    double total = 0;
    for (const auto& b : m.branches()) {
        const double p = std::norm(inner(b.vector, state.amplitudes()));
        probs[b.outcome] += p;
        total += p;
    }
    if (std::abs(total - 1.0) > kTolerance) {
        throw std::domain_error("Born probabilities of '" + state.label() + "' under '" + m.label() + "' sum to " +
                                std::to_string(total));
    }
    std::map<Label, Rational> exact;
    Rational sum;
    for (const auto& [o, p] : probs) {
        Rational r = p < kTolerance ? Rational() : rationalize(p);
        sum += r;
        exact.emplace(o, std::move(r));
    }
    if (!sum.is_positive()) {
        throw std::domain_error("Born probabilities rationalize to zero");
    }
    for (auto& [_, r] : exact) {
        r /= sum;
    }
    return Distribution<Label>(std::move(exact));
}

OntologicalModel psi_complete_model(const std::vector<PureState>& states, const MeasurementScenario& scenario,
                                    const std::map<Context, ProjectiveMeasurement>& joint_measurements,
                                    std::optional<std::map<Label, Distribution<Label>>> preparations) {
    std::vector<Label> labels;
    for (const auto& s : states) {
        labels.push_back(s.label());
    }
    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    for (const auto& c : scenario.contexts()) {
        const auto it = joint_measurements.find(c);
        if (it == joint_measurements.end()) {
            throw std::invalid_argument("no joint measurement for context {" + context_key(c) + "}");
        }
        for (const auto& s : states) {
            const auto d = born(s, it->second);
            typename Distribution<Assignment>::Weights w;
            for (const auto& [o, p] : d.weights()) {
                Assignment a = as_joint_outcome(o, c, scenario, it->second.label());
                w.emplace(std::move(a), p);
            }
            responses.emplace(OntologicalModel::ResponseKey{s.label(), c}, Distribution<Assignment>(std::move(w)));
        }
    }
    std::vector<Label> prep_labels;
    std::map<Label, Distribution<Label>> prep_dists;
    if (preparations) {
        for (const auto& [p, d] : *preparations) {
            prep_labels.push_back(p);
        }
        prep_dists = std::move(*preparations);
    } else {
        prep_labels = labels;
        for (const auto& l : labels) {
            prep_dists.emplace(l, Distribution<Label>::delta(l));
        }
    }
    return OntologicalModel(scenario, std::move(prep_labels), std::move(labels), std::move(prep_dists),
                            std::move(responses));
}

Classification check_observable_epistemicity(const OntologicalModel& model, const Label& measurement) {
    if (!model.scenario().has_measurement(measurement)) {
        throw std::invalid_argument("unknown measurement '" + measurement + "'");
    }
    const auto observables = extract_observable_properties(model);
    const auto it = observables.properties.find(measurement);
    if (it == observables.properties.end()) {
        throw std::invalid_argument("observable property of '" + measurement + "' is not well-defined");
    }
    return classify_property(it->second);
}

bool SteeringEnsembles::same_density(double tolerance) const {
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            if (std::abs(rho_computational[i][j] - rho_hadamard[i][j]) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Measures the first qubit of a two-qubit state in `basis` and returns the
// ensemble of conditional second-qubit states, labelled by the matching
// built-in state.
Ensemble remote_preparation(const PureState& joint, const ProjectiveMeasurement& basis, DensityMatrix& rho) {
    static const std::vector<std::string> names{"ket0", "ket1", "ketplus", "ketminus"};
    Ensemble out;
    rho = {};
    const auto& psi = joint.amplitudes();
    for (const auto& b : basis.branches()) {
        Vector conditional(2);
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t i = 0; i < 2; ++i) {
                conditional[j] += std::conj(b.vector[i]) * psi[2 * i + j];
            }
        }
        const double p = norm2(conditional);
        if (p < kTolerance) {
            continue;
        }
        for (auto& a : conditional) {
            a /= std::sqrt(p);
        }
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                rho[i][j] += p * conditional[i] * std::conj(conditional[j]);
            }
        }
        std::optional<Label> match;
        for (const auto& n : names) {
            if (std::abs(std::norm(inner(PureState::named(n).amplitudes(), conditional)) - 1.0) < kTolerance) {
                match = n;
                break;
            }
        }
        if (!match) {
            throw std::logic_error("remote preparation produced a state outside the built-in set");
        }
        out.emplace_back(rationalize(p), *match);
    }
    return out;
}

}  // namespace

SteeringEnsembles steering_ensembles() {
    const auto phi = PureState::named("phi_plus");
    SteeringEnsembles out;
    out.computational = remote_preparation(phi, ProjectiveMeasurement::named("Z"), out.rho_computational);
    out.hadamard = remote_preparation(phi, ProjectiveMeasurement::named("X"), out.rho_hadamard);
    return out;
}

OntologicalModel qubit_psi_complete_model() {
    const MeasurementScenario scenario({"X", "Z"}, {"0", "1"}, {{"Z"}, {"X"}});
    std::map<Context, ProjectiveMeasurement> joint;
    for (const auto& m : {"Z", "X"}) {
        joint.emplace(Context{m}, product_measurement({m}, {{m, ProjectiveMeasurement::named(m)}}));
    }
    std::vector<PureState> states;
    for (const auto& n : {"ket0", "ket1", "ketplus", "ketminus"}) {
        states.push_back(PureState::named(n));
    }
    return psi_complete_model(states, scenario, joint);
}

namespace {

OntologicalModel bell_model_with(const std::map<Label, ProjectiveMeasurement>& locals) {
    const auto scenario = bell_scenario(2, 2, 2);
    std::map<Context, ProjectiveMeasurement> joint;
    for (const auto& c : scenario.contexts()) {
        joint.emplace(c, product_measurement(c, locals));
    }
    return psi_complete_model({PureState::named("phi_plus")}, scenario, joint);
}

}  // namespace

OntologicalModel bell_psi_complete_model() {
    return bell_model_with({{"a0", ProjectiveMeasurement::named("Z")},
                            {"a1", ProjectiveMeasurement::named("X")},
                            {"b0", ProjectiveMeasurement::named("Z")},
                            {"b1", ProjectiveMeasurement::named("X")}});
}

OntologicalModel chsh_psi_complete_model() {
    const double c = std::cos(std::numbers::pi / 8);
    const double s = std::sin(std::numbers::pi / 8);
    // Eigenbases of (Z + X)/√2 and (Z - X)/√2.
    const ProjectiveMeasurement plus("(Z+X)/sqrt2", {{"0", {c, s}}, {"1", {-s, c}}});
    const ProjectiveMeasurement minus("(Z-X)/sqrt2", {{"0", {c, -s}}, {"1", {s, c}}});
    return bell_model_with({{"a0", ProjectiveMeasurement::named("Z")},
                            {"a1", ProjectiveMeasurement::named("X")},
                            {"b0", plus},
                            {"b1", minus}});
}

}  // namespace ontolab::quantum
