#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ontolab {

using Label = std::string;

/// A set of jointly performable measurements (or, in a preparation scenario,
/// a set of sites). Kept sorted so that equal sets compare equal.
using Context = std::set<Label>;

std::string context_key(const Context& c);
Context parse_context_key(std::string_view key);
bool is_subset(const Context& small, const Context& big);

/// A total function from a finite label set to labels: a joint outcome
/// ō : C → O, or a joint ontic state λ̄ : p̄ → Λ.
///
/// Serialized as "m1:o1,m2:o2" with keys in lexicographic order.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(std::map<Label, Label> values) : values_(std::move(values)) {}

    static Assignment parse(std::string_view text);

    [[nodiscard]] Context domain() const;
    [[nodiscard]] const Label& at(const Label& key) const;
    [[nodiscard]] const std::map<Label, Label>& values() const { return values_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }

    /// Restriction to a subset of the domain (the event-sheaf structure map).
    [[nodiscard]] Assignment restrict(const Context& subset) const;

    [[nodiscard]] std::string str() const;

    friend auto operator<=>(const Assignment&, const Assignment&) = default;
    friend bool operator==(const Assignment&, const Assignment&) = default;

private:
    std::map<Label, Label> values_;
};

/// Upper bound on |E(X)| before global assignments are materialized. Reads
/// ONTOLAB_MAX_GLOBAL_ASSIGNMENTS, defaulting to 100000.
std::size_t global_assignment_limit();

/// Finite measurement scenario: measurements X, outcomes O and the
/// compatibility cover M of X.
class MeasurementScenario {
public:
    MeasurementScenario(std::vector<Label> measurements, std::vector<Label> outcomes, std::vector<Context> contexts);

    [[nodiscard]] const std::vector<Label>& measurements() const { return measurements_; }
    [[nodiscard]] const std::vector<Label>& outcomes() const { return outcomes_; }
    [[nodiscard]] const std::vector<Context>& contexts() const { return contexts_; }
    [[nodiscard]] Context all_measurements() const { return {measurements_.begin(), measurements_.end()}; }
    [[nodiscard]] bool has_measurement(const Label& m) const;
    [[nodiscard]] bool has_outcome(const Label& o) const;
    [[nodiscard]] bool has_context(const Context& c) const;

    /// Contexts that contain measurement m.
    [[nodiscard]] std::vector<Context> contexts_containing(const Label& m) const;

    /// M closed under non-empty subsets.
    [[nodiscard]] std::set<Context> downward_closure() const;

    /// All |O|^|C| assignments on C, in lexicographic order: measurements in
    /// sorted order (first most significant), outcomes in declaration order.
    [[nodiscard]] std::vector<Assignment> event_sheaf(const Context& c) const;

    /// Streams E(C) in the same order as event_sheaf without materializing it.
    void for_each_assignment(const Context& c, const std::function<void(const Assignment&)>& visit) const;

    /// |O|^|X|, saturating at SIZE_MAX.
    [[nodiscard]] std::size_t global_assignment_count() const;

    /// E(X); throws std::length_error when |E(X)| exceeds `limit`.
    [[nodiscard]] std::vector<Assignment> global_assignments(std::size_t limit = global_assignment_limit()) const;

    /// Checks that `a` is an assignment on exactly `c` with outcomes in O.
    [[nodiscard]] bool is_assignment_on(const Assignment& a, const Context& c) const;

    friend bool operator==(const MeasurementScenario&, const MeasurementScenario&) = default;

private:
    std::vector<Label> measurements_;
    std::vector<Label> outcomes_;
    std::vector<Context> contexts_;
};

/// n parties, k settings each, l outcomes. Measurements are named by party
/// letter and setting ("a0", "a1", "b0", ...), outcomes "0".."l-1".
MeasurementScenario bell_scenario(int parties, int settings, int outcomes);

/// A choice of one preparation per site, keyed by site.
using PrepContext = std::map<Label, Label>;

std::string prep_context_key(const PrepContext& c);

/// Preparation scenario: sites, per-site preparations, the admissible joint
/// preparations and a shared ontic state space Λ for every site.
class PreparationScenario {
public:
    PreparationScenario(std::vector<Label> sites, std::vector<PrepContext> contexts, std::vector<Label> ontic_states);

    [[nodiscard]] const std::vector<Label>& sites() const { return sites_; }
    [[nodiscard]] const std::vector<PrepContext>& contexts() const { return contexts_; }
    [[nodiscard]] const std::vector<Label>& ontic_states() const { return ontic_states_; }
    [[nodiscard]] const std::map<Label, std::set<Label>>& preparations() const { return preparations_; }
    [[nodiscard]] bool has_context(const PrepContext& c) const;

    /// Every λ̄ : sites → Λ, in lexicographic order.
    [[nodiscard]] std::vector<Assignment> joint_ontic_states() const;

private:
    std::vector<Label> sites_;
    std::vector<PrepContext> contexts_;
    std::vector<Label> ontic_states_;
    std::map<Label, std::set<Label>> preparations_;
};

}  // namespace ontolab
