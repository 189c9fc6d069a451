#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "ontolab/empirical.hpp"
#include "ontolab/quantum.hpp"
#include "support/generators.hpp"

using namespace ontolab;
using namespace ontolab::quantum;

namespace {

using DL = Distribution<Label>;

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST_CASE("rationalization") {
    CHECK(rationalize(0.5) == q("1/2"));
    CHECK(rationalize(0.25) == q("1/4"));
    CHECK(rationalize(1.0 / 3.0) == q("1/3"));
    CHECK(rationalize(0.0) == q("0"));
    CHECK(rationalize(std::acos(-1.0)) == q("3126535/995207"));
}

TEST_CASE("born rule examples") {
    const auto plus = PureState::named("ketplus");
    CHECK(born(plus, ProjectiveMeasurement::named("Z")) == DL({{"0", q("1/2")}, {"1", q("1/2")}}));
    CHECK(born(plus, ProjectiveMeasurement::named("X")) == DL::delta("0"));
    CHECK(born(PureState::named("ketminus"), ProjectiveMeasurement::named("X")) == DL::delta("1"));
    const auto zz = product_measurement({"a", "b"}, {{"a", ProjectiveMeasurement::named("Z")},
                                                     {"b", ProjectiveMeasurement::named("Z")}});
    CHECK(born(PureState::named("phi_plus"), zz) == DL({{"a:0,b:0", q("1/2")}, {"a:1,b:1", q("1/2")}}));
    CHECK_THROWS_AS(born(PureState::named("phi_plus"), ProjectiveMeasurement::named("Z")), std::invalid_argument);
}

TEST_CASE("state and measurement validation") {
    CHECK_THROWS_AS(PureState("bad", {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PureState::named("ket2"), std::invalid_argument);
    CHECK_THROWS_AS(ProjectiveMeasurement("m", {{"0", {1.0, 0.0}}, {"1", {1.0, 0.0}}}), std::invalid_argument);
    CHECK_THROWS_AS(ProjectiveMeasurement("m", {{"0", {1.0, 0.0}}}), std::invalid_argument);
    const ProjectiveMeasurement trivial("I", {{"1", {1.0, 0.0}}, {"1", {0.0, 1.0}}});
    CHECK(trivial.outcomes() == std::vector<Label>{"1"});
}

TEST_CASE("psi-complete models") {
    const MeasurementScenario z({"Z"}, {"0", "1"}, {{"Z"}});
    const auto eig = psi_complete_model({PureState::named("ket0"), PureState::named("ket1")}, z,
                                        {{{"Z"}, ProjectiveMeasurement::named("Z")}});
    CHECK(is_deterministic(eig).holds());
    CHECK(is_local(eig).holds());
    CHECK(check_observable_epistemicity(eig, "Z").ontic());

    const auto qubit = qubit_psi_complete_model();
    CHECK_FALSE(is_deterministic(qubit).holds());
    const auto cz = check_observable_epistemicity(qubit, "Z");
    REQUIRE(cz.witness);
    CHECK(cz.witness->state == "ketplus");
    CHECK(cz.witness->value == "0");
    CHECK(cz.witness->other_value == "1");
    CHECK_FALSE(check_observable_epistemicity(qubit, "X").ontic());

    const MeasurementScenario id({"I"}, {"1"}, {{"I"}});
    const ProjectiveMeasurement trivial("I", {{"1", {1.0, 0.0}}, {"1", {0.0, 1.0}}});
    const auto idm = psi_complete_model({PureState::named("ketplus"), PureState::named("ket0")}, id, {{{"I"}, trivial}});
    CHECK(check_observable_epistemicity(idm, "I").ontic());

    const auto bell = bell_psi_complete_model();
    const auto props = extract_observable_properties(bell);
    CHECK(props.complete());
    const auto l = is_local(bell);
    CHECK(l.failure == LocalityVerdict::Failure::NotDeterministic);
}

TEST_CASE("bell tables") {
    const auto e = from_ontological(bell_psi_complete_model());
    CHECK(e.table("phi_plus", {"a0", "b0"}) == Distribution<Assignment>({{Assignment::parse("a0:0,b0:0"), q("1/2")},
                                                                          {Assignment::parse("a0:1,b0:1"), q("1/2")}}));
    CHECK(e.table("phi_plus", {"a0", "b1"}) == Distribution<Assignment>::uniform(e.scenario().event_sheaf({"a0", "b1"})));
    CHECK(is_no_signalling(e).holds());
    CHECK(local_realizability(e, "phi_plus").feasible());

    const auto chsh = from_ontological(chsh_psi_complete_model());
    CHECK(is_no_signalling(chsh).holds());
    const auto lr = local_realizability(chsh, "phi_plus");
    CHECK_FALSE(lr.feasible());
    const auto qd = quasi_local_decomposition(chsh, "phi_plus");
    REQUIRE(qd.weights);
    CHECK(qd.weights->has_negative());
}

TEST_CASE("steering ensembles") {
    const auto ens = steering_ensembles();
    REQUIRE(ens.computational.size() == 2);
    REQUIRE(ens.hadamard.size() == 2);
    for (const auto& [c, l] : ens.computational) {
        CHECK(c == q("1/2"));
    }
    for (const auto& [c, l] : ens.hadamard) {
        CHECK(c == q("1/2"));
    }
    CHECK(ens.computational[0].second == "ket0");
    CHECK(ens.computational[1].second == "ket1");
    CHECK(ens.hadamard[0].second == "ketplus");
    CHECK(ens.hadamard[1].second == "ketminus");
    CHECK(ens.same_density());
    CHECK(std::abs(ens.rho_computational[0][0] - 0.5) < kTolerance);
    CHECK(std::abs(ens.rho_hadamard[0][1]) < kTolerance);
    const std::map<Label, DL> mu{{"ket0", DL::delta("a")}, {"ket1", DL::delta("b")},
                                 {"ketplus", DL::delta("c")}, {"ketminus", DL::delta("d")}};
    CHECK(steering_incompatibility(mu, ens.computational, ens.hadamard).contradiction());
}

TEST_CASE("property: born output is normalized and overlapping states are epistemic") {
    testing::Rng rng(51);
    std::normal_distribution<double> gauss;
    const MeasurementScenario z({"Z"}, {"0", "1"}, {{"Z"}});
    for (int trial = 0; trial < 100; ++trial) {
        Vector v{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
        const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        v[0] /= n;
        v[1] /= n;
        const PureState psi("psi", v);
        const auto d = born(psi, ProjectiveMeasurement::named("Z"));
        Rational total(0);
        for (const auto& [o, w] : d.weights()) {
            total += w;
        }
        CHECK(total == Rational(1));
        const auto model = psi_complete_model({psi, PureState::named("ket0")}, z, {{{"Z"}, ProjectiveMeasurement::named("Z")}});
        const bool overlaps = d("0").is_positive() && d("1").is_positive();
        CHECK(check_observable_epistemicity(model, "Z").ontic() == !overlaps);
    }
}
