#include "ontolab/empirical.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "ontolab/lp.hpp"

namespace ontolab {

namespace {

// Rows of the marginal system: one per (context, joint outcome), contexts in
// scenario order, outcomes in event-sheaf order. Columns: E(X) in the same
// stable order.
struct MarginalSystem {
    std::vector<std::pair<Context, Assignment>> row_keys;
    std::vector<Assignment> globals;
    lp::EqualitySystem system;
};

MarginalSystem build_system(const EmpiricalModel& e, const Label& preparation, std::size_t limit) {
    const auto& scenario = e.scenario();
    MarginalSystem out;
    out.globals = scenario.global_assignments(limit);
    std::map<std::pair<Context, Assignment>, std::size_t> row_index;
    for (const auto& c : scenario.contexts()) {
        for (const auto& a : scenario.event_sheaf(c)) {
            row_index.emplace(std::pair{c, a}, out.row_keys.size());
            out.row_keys.emplace_back(c, a);
            out.system.rhs.push_back(e.table(preparation, c)(a));
        }
    }
    out.system.columns = out.globals.size();
    out.system.rows.assign(out.row_keys.size(), std::vector<Rational>(out.globals.size()));
    for (std::size_t j = 0; j < out.globals.size(); ++j) {
        for (const auto& c : scenario.contexts()) {
            out.system.rows[row_index.at({c, out.globals[j].restrict(c)})][j] = Rational(1);
        }
    }
    return out;
}

template <class Weights>
void check_marginals(const EmpiricalModel& e, const Label& preparation, const Weights& w) {
    for (const auto& c : e.scenario().contexts()) {
        const auto marginal = context_marginal(w, c);
        for (const auto& a : e.scenario().event_sheaf(c)) {
            if (marginal(a) != e.table(preparation, c)(a)) {
                throw std::logic_error("decomposition does not reproduce the table of '" + preparation + "' on {" +
                                       context_key(c) + "} at '" + a.str() + "'");
            }
        }
    }
}

}  // namespace

EmpiricalModel::EmpiricalModel(MeasurementScenario scenario, std::vector<Label> preparations,
                               std::map<TableKey, Distribution<Assignment>> tables)
    : scenario_(std::move(scenario)), preparations_(std::move(preparations)), tables_(std::move(tables)) {
    const std::set<Label> prep_set(preparations_.begin(), preparations_.end());
    if (prep_set.size() != preparations_.size()) {
        throw std::invalid_argument("duplicate preparation label");
    }
    if (preparations_.empty()) {
        throw std::invalid_argument("empirical model without preparations");
    }
    for (const auto& p : preparations_) {
        if (p.empty() || p.find('|') != Label::npos) {
            throw std::invalid_argument("preparation label '" + p + "' is empty or contains '|'");
        }
        for (const auto& c : scenario_.contexts()) {
            if (!tables_.contains({p, c})) {
                throw std::invalid_argument("no table for preparation '" + p + "' in context {" + context_key(c) +
                                            "}");
            }
        }
    }
    for (const auto& [key, d] : tables_) {
        const auto& [p, c] = key;
        if (!prep_set.contains(p) || !scenario_.has_context(c)) {
            throw std::invalid_argument("table for unknown pair '" + p + "|" + context_key(c) + "'");
        }
        for (const auto& [a, _] : d.weights()) {
            if (!scenario_.is_assignment_on(a, c)) {
                throw std::invalid_argument("table '" + p + "|" + context_key(c) + "' has joint outcome '" + a.str() +
                                            "' outside E(m̄)");
            }
        }
    }
}

const Distribution<Assignment>& EmpiricalModel::table(const Label& preparation, const Context& c) const {
    const auto it = tables_.find({preparation, c});
    if (it == tables_.end()) {
        throw std::invalid_argument("no table for '" + preparation + "|" + context_key(c) + "'");
    }
    return it->second;
}

bool EmpiricalModel::has_preparation(const Label& p) const {
    return std::find(preparations_.begin(), preparations_.end(), p) != preparations_.end();
}

EmpiricalModel from_ontological(const OntologicalModel& h) {
    std::map<EmpiricalModel::TableKey, Distribution<Assignment>> tables;
    for (const auto& p : h.preparations()) {
        for (const auto& c : h.scenario().contexts()) {
            tables.emplace(EmpiricalModel::TableKey{p, c}, operational_probabilities(h, p, c));
        }
    }
    return EmpiricalModel(h.scenario(), h.preparations(), std::move(tables));
}

Verdict<SignallingWitness> is_no_signalling_at(const EmpiricalModel& e, const Label& preparation) {
    if (!e.has_preparation(preparation)) {
        throw std::invalid_argument("unknown preparation '" + preparation + "'");
    }
    const auto& contexts = e.scenario().contexts();
    for (std::size_t i = 0; i < contexts.size(); ++i) {
        for (std::size_t j = i + 1; j < contexts.size(); ++j) {
            Context shared;
            std::set_intersection(contexts[i].begin(), contexts[i].end(), contexts[j].begin(), contexts[j].end(),
                                  std::inserter(shared, shared.begin()));
            if (shared.empty()) {
                continue;
            }
            auto project = [&](const Assignment& a) { return a.restrict(shared); };
            if (e.table(preparation, contexts[i]).marginal(project) !=
                e.table(preparation, contexts[j]).marginal(project)) {
                return {SignallingWitness{preparation, shared, contexts[i], contexts[j]}};
            }
        }
    }
    return {};
}

Verdict<SignallingWitness> is_no_signalling(const EmpiricalModel& e) {
    for (const auto& p : e.preparations()) {
        auto v = is_no_signalling_at(e, p);
        if (!v.holds()) {
            return v;
        }
    }
    return {};
}

Rational pair_with_table(const Certificate& cert, const MeasurementScenario& scenario,
                         const std::function<Rational(const Context&, const Assignment&)>& table) {
    Rational total;
    for (const auto& [key, coeff] : cert.coefficients) {
        if (!scenario.has_context(key.first)) {
            throw std::invalid_argument("certificate names unknown context {" + context_key(key.first) + "}");
        }
        total += coeff * table(key.first, key.second);
    }
    return total;
}

Distribution<Assignment> context_marginal(const Distribution<Assignment>& global, const Context& c) {
    return global.marginal([&](const Assignment& a) { return a.restrict(c); });
}

SignedWeights<Assignment> context_marginal(const SignedWeights<Assignment>& global, const Context& c) {
    return global.marginal([&](const Assignment& a) { return a.restrict(c); });
}

LocalRealizability local_realizability(const EmpiricalModel& e, const Label& preparation, std::size_t limit) {
    if (!e.has_preparation(preparation)) {
        throw std::invalid_argument("unknown preparation '" + preparation + "'");
    }
    const auto ms = build_system(e, preparation, limit);
    const auto result = lp::phase_one(ms.system);
    LocalRealizability out;
    if (result.feasible) {
        Distribution<Assignment>::Weights w;
        for (std::size_t j = 0; j < ms.globals.size(); ++j) {
            if (result.solution[j].is_positive()) {
                w.emplace(ms.globals[j], result.solution[j]);
            }
        }
        out.realization = Distribution<Assignment>(std::move(w));
        check_marginals(e, preparation, *out.realization);
        return out;
    }

    Certificate cert;
    for (std::size_t i = 0; i < ms.row_keys.size(); ++i) {
        if (!result.farkas[i].is_zero()) {
            cert.coefficients.emplace(ms.row_keys[i], result.farkas[i]);
        }
    }
    const auto& scenario = e.scenario();
    cert.table_value = pair_with_table(
        cert, scenario, [&](const Context& c, const Assignment& a) { return e.table(preparation, c)(a); });
    if (!cert.table_value.is_negative()) {
        throw std::logic_error("certificate does not separate the table: pairing is " + cert.table_value.str());
    }
    for (const auto& omega : ms.globals) {
        const Rational v = pair_with_table(cert, scenario, [&](const Context& c, const Assignment& a) {
            return omega.restrict(c) == a ? Rational(1) : Rational(0);
        });
        if (v.is_negative()) {
            throw std::logic_error("certificate is negative on global assignment '" + omega.str() + "'");
        }
    }
    out.certificate = std::move(cert);
    return out;
}

QuasiDecomposition quasi_local_decomposition(const EmpiricalModel& e, const Label& preparation, std::size_t limit) {
    QuasiDecomposition out;
    const auto ns = is_no_signalling_at(e, preparation);
    if (!ns.holds()) {
        out.signalling = ns.witness;
        return out;
    }
    const auto local = local_realizability(e, preparation, limit);
    if (local.feasible()) {
        out.weights = SignedWeights<Assignment>(local.realization->weights());
        return out;
    }
    const auto ms = build_system(e, preparation, limit);
    const auto x = lp::solve_affine(ms.system);
    if (!x) {
        throw std::logic_error("no-signalling table of '" + preparation +
                               "' has no signed decomposition over global assignments");
    }
    SignedWeights<Assignment>::Weights w;
    for (std::size_t j = 0; j < ms.globals.size(); ++j) {
        if (!(*x)[j].is_zero()) {
            w.emplace(ms.globals[j], (*x)[j]);
        }
    }
    out.weights = SignedWeights<Assignment>(std::move(w));
    check_marginals(e, preparation, *out.weights);
    return out;
}

EmpiricalModel noisy_pr_box(const Rational& visibility) {
    if (visibility.is_negative() || visibility > Rational(1)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
    auto scenario = bell_scenario(2, 2, 2);
    const Rational noise = Rational(1) - visibility;
    std::map<EmpiricalModel::TableKey, Distribution<Assignment>> tables;
    for (const auto& c : scenario.contexts()) {
        const Label& alice = *c.begin();
        const Label& bob = *std::next(c.begin());
        const int x = alice.back() - '0';
        const int y = bob.back() - '0';
        Distribution<Assignment>::Weights w;
        for (const auto& a : scenario.event_sheaf(c)) {
            const int oa = a.at(alice) == "1" ? 1 : 0;
            const int ob = a.at(bob) == "1" ? 1 : 0;
            const Rational pr = (oa ^ ob) == (x & y) ? Rational(1, 2) : Rational(0);
            w.emplace(a, visibility * pr + noise * Rational(1, 4));
        }
        tables.emplace(EmpiricalModel::TableKey{"p", c}, Distribution<Assignment>(std::move(w)));
    }
    return EmpiricalModel(std::move(scenario), {"p"}, std::move(tables));
}

}  // namespace ontolab
