#include "ontolab/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace ontolab {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

void require_unique(const std::vector<Label>& labels, const char* what) {
    std::set<Label> seen;
    for (const auto& l : labels) {
        if (l.empty()) {
            throw std::invalid_argument(std::string("empty ") + what + " label");
        }
        if (!seen.insert(l).second) {
            throw std::invalid_argument(std::string("duplicate ") + what + " '" + l + "'");
        }
    }
}

}  // namespace

std::string context_key(const Context& c) {
    std::string out;
    for (const auto& m : c) {
        if (!out.empty()) {
            out += ',';
        }
        out += m;
    }
    return out;
}

Context parse_context_key(std::string_view key) {
    Context out;
    if (key.empty()) {
        return out;
    }
    for (auto part : split(key, ',')) {
        if (part.empty() || !out.insert(Label(part)).second) {
            throw std::invalid_argument("malformed context '" + std::string(key) + "'");
        }
    }
    return out;
}

bool is_subset(const Context& small, const Context& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Assignment Assignment::parse(std::string_view text) {
    std::map<Label, Label> values;
    if (text.empty()) {
        return Assignment{};
    }
    for (auto part : split(text, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string_view::npos || colon == 0 || colon + 1 == part.size()) {
            throw std::invalid_argument("malformed assignment '" + std::string(text) + "'");
        }
        if (!values.emplace(Label(part.substr(0, colon)), Label(part.substr(colon + 1))).second) {
            throw std::invalid_argument("assignment '" + std::string(text) + "' repeats a key");
        }
    }
    return Assignment(std::move(values));
}

Context Assignment::domain() const {
    Context out;
    for (const auto& [k, _] : values_) {
        out.insert(k);
    }
    return out;
}

const Label& Assignment::at(const Label& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw std::out_of_range("assignment '" + str() + "' undefined at '" + key + "'");
    }
    return it->second;
}

Assignment Assignment::restrict(const Context& subset) const {
    std::map<Label, Label> out;
    for (const auto& k : subset) {
        const auto it = values_.find(k);
        if (it == values_.end()) {
            throw std::invalid_argument("cannot restrict '" + str() + "' to {" + context_key(subset) + "}");
        }
        out.emplace(k, it->second);
    }
    return Assignment(std::move(out));
}

std::string Assignment::str() const {
    std::string out;
    for (const auto& [k, v] : values_) {
        if (!out.empty()) {
            out += ',';
        }
        out += k;
        out += ':';
        out += v;
    }
    return out;
}

std::size_t global_assignment_limit() {
    constexpr std::size_t fallback = 100000;
    const char* env = std::getenv("ONTOLAB_MAX_GLOBAL_ASSIGNMENTS");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || parsed == 0) {
        return fallback;
    }
    return static_cast<std::size_t>(parsed);
}

MeasurementScenario::MeasurementScenario(std::vector<Label> measurements, std::vector<Label> outcomes,
                                         std::vector<Context> contexts)
    : measurements_(std::move(measurements)), outcomes_(std::move(outcomes)) {
    require_unique(measurements_, "measurement");
    require_unique(outcomes_, "outcome");
    if (measurements_.empty()) {
        throw std::invalid_argument("scenario without measurements");
    }
    if (outcomes_.empty()) {
        throw std::invalid_argument("scenario without outcomes");
    }
    for (const auto& m : measurements_) {
        if (m.find_first_of(",:|") != Label::npos) {
            throw std::invalid_argument("measurement label '" + m + "' contains a reserved character");
        }
    }
    for (const auto& o : outcomes_) {
        if (o.find_first_of(",:|") != Label::npos) {
            throw std::invalid_argument("outcome label '" + o + "' contains a reserved character");
        }
    }
    const Context all = all_measurements();
    std::set<Context> seen;
    Context covered;
    for (auto& c : contexts) {
        if (c.empty()) {
            throw std::invalid_argument("empty context");
        }
        if (!is_subset(c, all)) {
            throw std::invalid_argument("context {" + context_key(c) + "} is not a subset of the measurements");
        }
        if (!seen.insert(c).second) {
            continue;
        }
        covered.insert(c.begin(), c.end());
        contexts_.push_back(std::move(c));
    }
    for (const auto& m : measurements_) {
        if (!covered.contains(m)) {
            throw std::invalid_argument("measurement '" + m + "' appears in no context");
        }
    }
}

bool MeasurementScenario::has_measurement(const Label& m) const {
    return std::find(measurements_.begin(), measurements_.end(), m) != measurements_.end();
}

bool MeasurementScenario::has_outcome(const Label& o) const {
    return std::find(outcomes_.begin(), outcomes_.end(), o) != outcomes_.end();
}

bool MeasurementScenario::has_context(const Context& c) const {
    return std::find(contexts_.begin(), contexts_.end(), c) != contexts_.end();
}

std::vector<Context> MeasurementScenario::contexts_containing(const Label& m) const {
    std::vector<Context> out;
    for (const auto& c : contexts_) {
        if (c.contains(m)) {
            out.push_back(c);
        }
    }
    return out;
}

std::set<Context> MeasurementScenario::downward_closure() const {
    std::set<Context> out;
    for (const auto& c : contexts_) {
        const std::vector<Label> members(c.begin(), c.end());
        const std::size_t n = members.size();
        // Contexts are small; 2^n subsets per context.
        for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
            Context sub;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    sub.insert(members[i]);
                }
            }
            out.insert(std::move(sub));
        }
    }
    return out;
}

void MeasurementScenario::for_each_assignment(const Context& c,
                                              const std::function<void(const Assignment&)>& visit) const {
    if (!is_subset(c, all_measurements())) {
        throw std::invalid_argument("{" + context_key(c) + "} is not a subset of the measurements");
    }
    const std::vector<Label> keys(c.begin(), c.end());
    std::vector<std::size_t> digits(keys.size(), 0);
    while (true) {
        std::map<Label, Label> values;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            values.emplace(keys[i], outcomes_[digits[i]]);
        }
        visit(Assignment(std::move(values)));
        std::size_t pos = keys.size();
        while (pos > 0) {
            --pos;
            if (++digits[pos] < outcomes_.size()) {
                break;
            }
            digits[pos] = 0;
            if (pos == 0) {
                return;
            }
        }
        if (keys.empty()) {
            return;
        }
    }
}

std::vector<Assignment> MeasurementScenario::event_sheaf(const Context& c) const {
    std::vector<Assignment> out;
    for_each_assignment(c, [&](const Assignment& a) { out.push_back(a); });
    return out;
}

std::size_t MeasurementScenario::global_assignment_count() const {
    std::size_t count = 1;
    for (std::size_t i = 0; i < measurements_.size(); ++i) {
        if (count > std::numeric_limits<std::size_t>::max() / outcomes_.size()) {
            return std::numeric_limits<std::size_t>::max();
        }
        count *= outcomes_.size();
    }
    return count;
}

std::vector<Assignment> MeasurementScenario::global_assignments(std::size_t limit) const {
    const std::size_t count = global_assignment_count();
    if (count > limit) {
        throw std::length_error("|E(X)| = " + std::to_string(count) + " exceeds the limit of " + std::to_string(limit) +
                                " (ONTOLAB_MAX_GLOBAL_ASSIGNMENTS)");
    }
    return event_sheaf(all_measurements());
}

bool MeasurementScenario::is_assignment_on(const Assignment& a, const Context& c) const {
    if (a.domain() != c) {
        return false;
    }
    for (const auto& [_, o] : a.values()) {
        if (!has_outcome(o)) {
            return false;
        }
    }
    return true;
}

MeasurementScenario bell_scenario(int parties, int settings, int outcomes) {
    if (parties < 1 || settings < 1 || outcomes < 1) {
        throw std::invalid_argument("bell scenario needs parties, settings and outcomes >= 1");
    }
    auto party_name = [parties](int i) {
        if (parties <= 26) {
            return std::string(1, static_cast<char>('a' + i));
        }
        return "p" + std::to_string(i) + "_";
    };
    std::vector<Label> measurements;
    for (int i = 0; i < parties; ++i) {
        for (int j = 0; j < settings; ++j) {
            measurements.push_back(party_name(i) + std::to_string(j));
        }
    }
    std::vector<Label> outs;
    for (int o = 0; o < outcomes; ++o) {
        outs.push_back(std::to_string(o));
    }
    std::vector<Context> contexts;
    std::vector<int> choice(static_cast<std::size_t>(parties), 0);
    while (true) {
        Context c;
        for (int i = 0; i < parties; ++i) {
            c.insert(party_name(i) + std::to_string(choice[static_cast<std::size_t>(i)]));
        }
        contexts.push_back(std::move(c));
        int pos = parties - 1;
        while (pos >= 0 && ++choice[static_cast<std::size_t>(pos)] == settings) {
            choice[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
    }
    return MeasurementScenario(std::move(measurements), std::move(outs), std::move(contexts));
}

std::string prep_context_key(const PrepContext& c) {
    std::string out;
    for (const auto& [site, p] : c) {
        if (!out.empty()) {
            out += ',';
        }
        out += site;
        out += ':';
        out += p;
    }
    return out;
}

PreparationScenario::PreparationScenario(std::vector<Label> sites, std::vector<PrepContext> contexts,
                                         std::vector<Label> ontic_states)
    : sites_(std::move(sites)), ontic_states_(std::move(ontic_states)) {
    require_unique(sites_, "site");
    require_unique(ontic_states_, "ontic state");
    if (sites_.empty()) {
        throw std::invalid_argument("preparation scenario without sites");
    }
    if (ontic_states_.empty()) {
        throw std::invalid_argument("preparation scenario with empty ontic state space");
    }
    if (contexts.empty()) {
        throw std::invalid_argument("preparation scenario without preparation contexts");
    }
    const std::set<Label> site_set(sites_.begin(), sites_.end());
    for (auto& c : contexts) {
        if (c.size() != site_set.size()) {
            throw std::invalid_argument("preparation context '" + prep_context_key(c) +
                                        "' must select exactly one preparation per site");
        }
        for (const auto& [site, p] : c) {
            if (!site_set.contains(site)) {
                throw std::invalid_argument("preparation context '" + prep_context_key(c) + "' names unknown site '" +
                                            site + "'");
            }
            preparations_[site].insert(p);
        }
        if (std::find(contexts_.begin(), contexts_.end(), c) == contexts_.end()) {
            contexts_.push_back(std::move(c));
        }
    }
}

bool PreparationScenario::has_context(const PrepContext& c) const {
    return std::find(contexts_.begin(), contexts_.end(), c) != contexts_.end();
}

std::vector<Assignment> PreparationScenario::joint_ontic_states() const {
    // Same odometer as the event sheaf, with sites as measurements and Λ as outcomes.
    const MeasurementScenario shape(sites_, ontic_states_, {Context(sites_.begin(), sites_.end())});
    return shape.event_sheaf(shape.all_measurements());
}

}  // namespace ontolab
