#include <stdexcept>

#include <doctest.h>

#include "ontolab/preparation.hpp"
#include "support/generators.hpp"

using namespace ontolab;

namespace {

using DL = Distribution<Label>;
using DA = Distribution<Assignment>;

Rational q(const char* s) { return Rational::parse(s); }

const std::vector<PrepContext> kContexts{{{"A", "a0"}, {"B", "b0"}},
                                         {{"A", "a0"}, {"B", "b1"}},
                                         {{"A", "a1"}, {"B", "b0"}},
                                         {{"A", "a1"}, {"B", "b1"}}};

PreparationScenario two_sites() { return PreparationScenario({"A", "B"}, kContexts, {"0", "1"}); }

DA joint(std::initializer_list<std::pair<const char*, const char*>> entries) {
    std::map<Assignment, Rational> w;
    for (const auto& [a, p] : entries) {
        w.emplace(Assignment::parse(a), q(p));
    }
    return DA(std::move(w));
}

DA product(const DL& a, const DL& b) {
    std::map<Assignment, Rational> w;
    for (const auto& [x, p] : a.weights()) {
        for (const auto& [y, r] : b.weights()) {
            w.emplace(Assignment(std::map<Label, Label>{{"A", x}, {"B", y}}), p * r);
        }
    }
    return DA(std::move(w));
}

}  // namespace

TEST_CASE("preparation independence examples") {
    CHECK(is_preparation_independent(product_preparation_theory()).holds());

    const auto corr = correlated_preparation_theory();
    const auto v = is_preparation_independent(corr);
    REQUIRE(v.witness);
    CHECK(v.witness->context == kContexts[0]);
    CHECK(v.witness->joint_state.str() == "A:0,B:0");

    const PreparationScenario single({"A"}, {{{"A", "a0"}}, {{"A", "a1"}}}, {"0", "1", "2"});
    const PreparationTheory one(single, {{{{"A", "a0"}}, joint({{"A:0", "1/3"}, {"A:2", "2/3"}})},
                                         {{{"A", "a1"}}, joint({{"A:1", "1"}})}});
    CHECK(is_preparation_independent(one).holds());
}

TEST_CASE("no-preparation-signalling examples") {
    CHECK(is_no_preparation_signalling(correlated_preparation_theory()).holds());
    CHECK(is_no_preparation_signalling(product_preparation_theory()).holds());

    std::map<PrepContext, DA> flips;
    for (const auto& c : kContexts) {
        flips.emplace(c, c.at("B") == "b0" ? joint({{"A:0,B:0", "1"}}) : joint({{"A:1,B:0", "1"}}));
    }
    const PreparationTheory t(two_sites(), flips);
    const auto v = is_no_preparation_signalling(t);
    REQUIRE(v.witness);
    CHECK(v.witness->site == "A");
    CHECK(v.witness->preparation == "a0");
    CHECK(v.witness->first == kContexts[0]);
    CHECK(v.witness->second == kContexts[1]);
    CHECK(t.site_marginal(kContexts[0], "A") == DL::delta("0"));
    // Each joint is a product, but A's factor depends on B's preparation.
    const auto pi = is_preparation_independent(t);
    REQUIRE(pi.witness);
    CHECK(pi.witness->context == kContexts[1]);
}

TEST_CASE("theory validation") {
    std::map<PrepContext, DA> missing{{kContexts[0], joint({{"A:0,B:0", "1"}})}};
    CHECK_THROWS_AS(PreparationTheory(two_sites(), missing), std::invalid_argument);
    std::map<PrepContext, DA> wrong;
    for (const auto& c : kContexts) {
        wrong.emplace(c, joint({{"A:0,C:0", "1"}}));
    }
    CHECK_THROWS_AS(PreparationTheory(two_sites(), wrong), std::invalid_argument);
}

TEST_CASE("property: preparation independence implies no-preparation-signalling, strictly") {
    testing::Rng rng(41);
    const std::vector<Label> lambda{"0", "1"};
    int independent = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::map<PrepContext, DA> joints;
        if (trial % 2 == 0) {
            std::map<Label, DL> factor;
            for (const auto& p : {"a0", "a1", "b0", "b1"}) {
                factor.emplace(p, testing::random_distribution(rng, lambda, 6));
            }
            for (const auto& c : kContexts) {
                joints.emplace(c, product(factor.at(c.at("A")), factor.at(c.at("B"))));
            }
        } else {
            const auto states = two_sites().joint_ontic_states();
            for (const auto& c : kContexts) {
                joints.emplace(c, testing::random_distribution(rng, states, 4));
            }
        }
        const PreparationTheory t(two_sites(), joints);
        const bool pi = is_preparation_independent(t).holds();
        if (trial % 2 == 0) {
            CHECK(pi);
        }
        if (pi) {
            ++independent;
            CHECK(is_no_preparation_signalling(t).holds());
        }
    }
    CHECK(independent >= 100);
    const auto corr = correlated_preparation_theory();
    CHECK(is_no_preparation_signalling(corr).holds());
    CHECK_FALSE(is_preparation_independent(corr).holds());
}

TEST_CASE("steering examples") {
    const Ensemble comp{{q("1/2"), "ket0"}, {q("1/2"), "ket1"}};
    const Ensemble had{{q("1/2"), "ketplus"}, {q("1/2"), "ketminus"}};
    const std::map<Label, DL> disjoint{{"ket0", DL::delta("l0")},
                                       {"ket1", DL::delta("l1")},
                                       {"ketplus", DL::delta("l2")},
                                       {"ketminus", DL::delta("l3")}};
    const auto c = steering_incompatibility(disjoint, comp, had);
    CHECK(c.contradiction());
    CHECK(c.reason() == "mixture-equality-impossible");
    CHECK(c.supports_disjoint);

    const DL half({{"x", q("1/2")}, {"y", q("1/2")}});
    const std::map<Label, DL> overlapping{
        {"ket0", DL::delta("x")}, {"ket1", DL::delta("y")}, {"ketplus", half}, {"ketminus", half}};
    const auto o = steering_incompatibility(overlapping, comp, had);
    CHECK_FALSE(o.contradiction());
    CHECK(o.reason() == "consistent");
    CHECK_FALSE(o.supports_disjoint);

    // Identical ensembles always give equal mixtures.
    CHECK_FALSE(steering_incompatibility(disjoint, comp, comp).contradiction());
    CHECK_FALSE(steering_incompatibility(overlapping, had, had).contradiction());

    const std::map<Label, DL> skewed{{"ket0", DL::delta("x")},
                                     {"ket1", DL::delta("y")},
                                     {"ketplus", DL({{"x", q("1/3")}, {"y", q("2/3")}})},
                                     {"ketminus", half}};
    const auto s = steering_incompatibility(skewed, comp, had);
    CHECK(s.contradiction());
    CHECK(s.reason() == "mixtures-differ");

    CHECK_THROWS_AS(steering_incompatibility(disjoint, {{q("1/2"), "ket0"}}, had), std::invalid_argument);
    CHECK_THROWS_AS(steering_incompatibility(disjoint, {{q("1"), "nope"}}, had), std::invalid_argument);
}

TEST_CASE("property: disjoint families always contradict") {
    testing::Rng rng(42);
    const Ensemble comp{{q("1/2"), "ket0"}, {q("1/2"), "ket1"}};
    const Ensemble had{{q("1/2"), "ketplus"}, {q("1/2"), "ketminus"}};
    for (int trial = 0; trial < 100; ++trial) {
        auto pool = testing::numbered("l", 12);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::map<Label, DL> mu;
        std::size_t next = 0;
        for (const auto& name : {"ket0", "ket1", "ketplus", "ketminus"}) {
            const auto n = static_cast<std::size_t>(testing::uniform_int(rng, 1, 3));
            std::vector<Label> block(pool.begin() + static_cast<std::ptrdiff_t>(next),
                                     pool.begin() + static_cast<std::ptrdiff_t>(next + n));
            next += n;
            mu.emplace(name, testing::random_distribution(rng, block));
        }
        CHECK(steering_incompatibility(mu, comp, had).contradiction());
    }
}
