#include <stdexcept>

#include <doctest.h>

#include "ontolab/canonical.hpp"
#include "ontolab/io.hpp"
#include "support/generators.hpp"

using namespace ontolab;
using io::Json;

TEST_CASE("rationals in JSON") {
    CHECK(io::rational_from_json(Json("2/4")) == Rational(1, 2));
    CHECK(io::rational_from_json(Json(3)) == Rational(3));
    CHECK_THROWS_AS(io::rational_from_json(Json(0.5)), io::SchemaError);
    CHECK_THROWS_AS(io::rational_from_json(Json("x")), io::SchemaError);
    CHECK(io::to_json(Rational(-3, 6)) == Json("-1/2"));
    CHECK(io::to_json(Rational(4)) == Json("4"));
}

TEST_CASE("schema errors carry a location") {
    const Json bad_scenario = Json::parse(R"({"scenario": {"measurements": ["a"], "outcomes": ["0"], "contexts": [["a", "b"]]},
        "preparations": ["p"], "lambda": ["l"], "prep_dists": {"p": {"l": "1"}}, "response": {}})");
    try {
        (void)io::model_from_json(bad_scenario);
        FAIL("expected SchemaError");
    } catch (const io::SchemaError& e) {
        CHECK(e.location().rfind("/scenario", 0) == 0);
    }
    const Json missing = Json::parse(R"({"lambda": ["a"], "values": ["v"]})");
    try {
        (void)io::property_from_json(missing);
        FAIL("expected SchemaError");
    } catch (const io::SchemaError& e) {
        CHECK(e.location() == "/property");
    }
    const Json float_weight = Json::parse(R"({"lambda": ["a"], "values": ["v"], "property": {"a": {"v": 1.0}}})");
    try {
        (void)io::property_from_json(float_weight);
        FAIL("expected SchemaError");
    } catch (const io::SchemaError& e) {
        CHECK(e.location() == "/property/a/v");
    }
}

TEST_CASE("round trips are byte-stable") {
    testing::Rng rng(61);
    const auto bell = bell_scenario(2, 2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        const auto h = testing::random_model(rng, bell, trial % 2 ? testing::ModelKind::StochasticArbitrary
                                                                  : testing::ModelKind::DeterministicLocal);
        const auto j = io::to_json(h);
        const auto back = io::model_from_json(Json::parse(j.dump()));
        CHECK(io::to_json(back).dump() == j.dump());
        CHECK(back.responses() == h.responses());
        CHECK(back.prep_dists() == h.prep_dists());

        const auto e = from_ontological(h);
        const auto ej = io::to_json(e);
        const auto eback = io::empirical_from_json(Json::parse(ej.dump()));
        CHECK(eback == e);
        CHECK(io::to_json(eback).dump() == ej.dump());

        if (trial % 2 == 0) {
            const auto c = canonicalize(h);
            const auto cj = io::to_json(c);
            const auto cback = io::canonical_from_json(Json::parse(cj.dump()));
            CHECK(io::to_json(cback).dump() == cj.dump());
            CHECK(cback.collapse == c.collapse);
        }

        const auto f = testing::random_property(rng);
        const io::PropertyDocument doc{f, testing::random_distribution(rng, f.states())};
        const auto pj = io::to_json(doc);
        CHECK(io::to_json(io::property_from_json(Json::parse(pj.dump()))).dump() == pj.dump());
    }
    const auto t = correlated_preparation_theory();
    const auto tj = io::to_json(t);
    CHECK(io::to_json(io::theory_from_json(Json::parse(tj.dump()))).dump() == tj.dump());

    const io::SteeringDocument s{{{"a", Distribution<Label>::delta("x")}, {"b", Distribution<Label>::delta("y")}},
                                 {{Rational(1), "a"}},
                                 {{Rational(1, 2), "a"}, {Rational(1, 2), "b"}}};
    const auto sj = io::to_json(s);
    CHECK(io::to_json(io::steering_from_json(Json::parse(sj.dump()))).dump() == sj.dump());
}
