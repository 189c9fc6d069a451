#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ontolab/ontology.hpp"

namespace ontolab {

/// Operational tables e(ō|m̄,p) for every preparation and context.
class EmpiricalModel {
public:
    using TableKey = std::pair<Label, Context>;

    EmpiricalModel(MeasurementScenario scenario, std::vector<Label> preparations,
                   std::map<TableKey, Distribution<Assignment>> tables);

    [[nodiscard]] const MeasurementScenario& scenario() const { return scenario_; }
    [[nodiscard]] const std::vector<Label>& preparations() const { return preparations_; }
    [[nodiscard]] const Distribution<Assignment>& table(const Label& preparation, const Context& c) const;
    [[nodiscard]] const std::map<TableKey, Distribution<Assignment>>& tables() const { return tables_; }
    [[nodiscard]] bool has_preparation(const Label& p) const;

    friend bool operator==(const EmpiricalModel& a, const EmpiricalModel& b) {
        return a.scenario_ == b.scenario_ && a.preparations_ == b.preparations_ && a.tables_ == b.tables_;
    }

private:
    MeasurementScenario scenario_;
    std::vector<Label> preparations_;
    std::map<TableKey, Distribution<Assignment>> tables_;
};

EmpiricalModel from_ontological(const OntologicalModel& h);

/// Two contexts whose marginals on their shared measurements differ.
struct SignallingWitness {
    Label preparation;
    Context shared;
    Context first;
    Context second;
};

Verdict<SignallingWitness> is_no_signalling(const EmpiricalModel& e);
Verdict<SignallingWitness> is_no_signalling_at(const EmpiricalModel& e, const Label& preparation);

/// Linear functional on tables, one coefficient per (context, joint outcome).
/// A certificate of non-locality pairs negatively with the table and
/// non-negatively with every deterministic global assignment.
struct Certificate {
    std::map<std::pair<Context, Assignment>, Rational> coefficients;
    /// Pairing with the refuted table; strictly negative.
    Rational table_value;
};

Rational pair_with_table(const Certificate& cert, const MeasurementScenario& scenario,
                         const std::function<Rational(const Context&, const Assignment&)>& table);

struct LocalRealizability {
    /// Weights over E(X) reproducing the table; set iff feasible.
    std::optional<Distribution<Assignment>> realization;
    /// Set iff infeasible.
    std::optional<Certificate> certificate;

    [[nodiscard]] bool feasible() const { return realization.has_value(); }
};

/// Exact decision of whether the tables of `preparation` are a mixture of
/// global assignments. Both outcomes are verified before returning.
LocalRealizability local_realizability(const EmpiricalModel& e, const Label& preparation,
                                       std::size_t limit = global_assignment_limit());

struct QuasiDecomposition {
    /// Signed weights over E(X) with exact context marginals; set iff no-signalling.
    std::optional<SignedWeights<Assignment>> weights;
    std::optional<SignallingWitness> signalling;
};

/// Signed weights over global assignments reproducing the table. Non-negative
/// weights are returned when they exist; otherwise one exact solution of the
/// marginal equations (not unique in general).
QuasiDecomposition quasi_local_decomposition(const EmpiricalModel& e, const Label& preparation,
                                             std::size_t limit = global_assignment_limit());

/// Marginal on a context of weights over global assignments.
Distribution<Assignment> context_marginal(const Distribution<Assignment>& global, const Context& c);
SignedWeights<Assignment> context_marginal(const SignedWeights<Assignment>& global, const Context& c);

/// v·PR + (1-v)·uniform on the (2,2,2) scenario, single preparation "p".
EmpiricalModel noisy_pr_box(const Rational& visibility);

}  // namespace ontolab
