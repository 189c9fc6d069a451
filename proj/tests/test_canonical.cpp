#include <stdexcept>

#include <doctest.h>

#include "ontolab/canonical.hpp"
#include "ontolab/empirical.hpp"
#include "support/generators.hpp"

using namespace ontolab;

namespace {

using DL = Distribution<Label>;

OntologicalModel from_generators(const MeasurementScenario& s, const std::vector<Assignment>& gens, const DL& prep) {
    std::vector<Label> states;
    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        states.push_back("s" + std::to_string(i));
        for (const auto& c : s.contexts()) {
            responses.emplace(std::pair{states.back(), c}, Distribution<Assignment>::delta(gens[i].restrict(c)));
        }
    }
    return OntologicalModel(s, {"p"}, states, {{"p", prep}}, std::move(responses));
}

}  // namespace

TEST_CASE("single deterministic state") {
    const auto bell = bell_scenario(2, 2, 2);
    const auto g = Assignment::parse("a0:1,a1:0,b0:1,b1:1");
    const auto c = canonicalize(from_generators(bell, {g}, DL::delta("s0")));
    const auto w = c.weights("p");
    REQUIRE(w.size() == 1);
    CHECK(w.begin()->first == g);
    CHECK(w.begin()->second == Rational(1));
    CHECK(c.collapse.at("s0") == g);
}

TEST_CASE("states with equal generators merge") {
    const auto bell = bell_scenario(2, 2, 2);
    const auto g = Assignment::parse("a0:0,a1:1,b0:1,b1:0");
    const auto c = canonicalize(
        from_generators(bell, {g, g}, DL({{"s0", Rational(1, 3)}, {"s1", Rational(2, 3)}})));
    const auto w = c.weights("p");
    REQUIRE(w.size() == 1);
    CHECK(w.at(g) == Rational(1));
    CHECK(c.collapse.at("s0") == c.collapse.at("s1"));
}

TEST_CASE("explicit mixture of the 16 global assignments") {
    const auto bell = bell_scenario(2, 2, 2);
    const auto globals = bell.global_assignments();
    REQUIRE(globals.size() == 16);
    std::map<Label, Rational> w;
    for (std::size_t i = 0; i < 16; ++i) {
        w["s" + std::to_string(i)] = Rational(static_cast<std::int64_t>(i + 1), 136);
    }
    const auto h = from_generators(bell, globals, DL(w));
    const auto c = canonicalize(h);
    const auto live = c.weights("p");
    CHECK(live.size() == 16);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(live.at(globals[i]) == Rational(static_cast<std::int64_t>(i + 1), 136));
    }
    const auto e = from_ontological(h);
    const auto lr = local_realizability(e, "p");
    REQUIRE(lr.feasible());
    for (const auto& ctx : bell.contexts()) {
        CHECK(context_marginal(*lr.realization, ctx) == e.table("p", ctx));
    }
}

TEST_CASE("canonical form rejects non-local models") {
    const auto bell = bell_scenario(2, 2, 2);
    std::map<OntologicalModel::ResponseKey, Distribution<Assignment>> responses;
    for (const auto& c : bell.contexts()) {
        responses.emplace(std::pair{Label("s"), c}, Distribution<Assignment>::uniform(bell.event_sheaf(c)));
    }
    const OntologicalModel h(bell, {"p"}, {"s"}, {{"p", DL::delta("s")}}, responses);
    try {
        (void)canonicalize(h);
        FAIL("expected NotLocalError");
    } catch (const NotLocalError& e) {
        CHECK(e.verdict().failure == LocalityVerdict::Failure::NotDeterministic);
    }
}

TEST_CASE("property: canonical form is equivalent, local, factorisable and idempotent") {
    testing::Rng rng(21);
    const auto bell = bell_scenario(2, 2, 2);
    const MeasurementScenario triangle({"x", "y", "z"}, {"0", "1", "2"}, {{"x", "y"}, {"y", "z"}, {"x", "z"}});
    for (int trial = 0; trial < 100; ++trial) {
        const auto& s = trial % 2 == 0 ? bell : triangle;
        const auto h = testing::random_local_model(rng, s);
        const auto c = canonicalize(h);
        for (const auto& p : h.preparations()) {
            for (const auto& ctx : s.contexts()) {
                CHECK(operational_probabilities(c.model, p, ctx) == operational_probabilities(h, p, ctx));
            }
        }
        CHECK(is_local(c.model).holds());
        CHECK(is_factorisable(c.model).holds());
        for (const auto& [m, f] : extract_observable_properties(c.model).properties) {
            CHECK(classify_property(f).ontic());
        }
        const auto again = canonicalize(c.model);
        for (const auto& p : h.preparations()) {
            CHECK(again.weights(p) == c.weights(p));
        }
        for (const auto& [l, g] : c.collapse) {
            for (const auto& m : s.measurements()) {
                const auto props = extract_observable_properties(h);
                CHECK(*is_delta(props.properties.at(m).at(l)) == g.at(m));
            }
        }
    }
}
