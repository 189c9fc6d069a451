#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ontolab/rational.hpp"

namespace ontolab {

/// Normalized probability distribution over a finite set, with exact weights.
///
/// Zero-weight entries may be stored (they keep a value in the carrier) but
/// never count towards the support. Elements that are not stored have weight
/// zero, so two distributions over the same element type can always be
/// compared pointwise.
template <class S>
class Distribution {
public:
    using Weights = std::map<S, Rational>;

    explicit Distribution(Weights weights) : weights_(std::move(weights)) {
        if (weights_.empty()) {
            throw std::invalid_argument("distribution over an empty set");
        }
        Rational total;
        for (const auto& [_, w] : weights_) {
            if (w.is_negative()) {
                throw std::invalid_argument("distribution with negative weight " + w.str());
            }
            total += w;
        }
        if (total != Rational(1)) {
            throw std::invalid_argument("distribution weights sum to " + total.str() + ", not 1");
        }
    }

    static Distribution delta(const S& s) { return Distribution(Weights{{s, Rational(1)}}); }

    static Distribution uniform(const std::vector<S>& elements) {
        if (elements.empty()) {
            throw std::invalid_argument("uniform distribution over an empty set");
        }
        const Rational w(1, static_cast<std::int64_t>(elements.size()));
        Weights weights;
        for (const auto& s : elements) {
            weights[s] += w;
        }
        return Distribution(std::move(weights));
    }

    [[nodiscard]] Rational operator()(const S& s) const {
        const auto it = weights_.find(s);
        return it == weights_.end() ? Rational() : it->second;
    }

    [[nodiscard]] const Weights& weights() const { return weights_; }

    [[nodiscard]] std::set<S> support() const {
        std::set<S> out;
        for (const auto& [s, w] : weights_) {
            if (w.is_positive()) {
                out.insert(s);
            }
        }
        return out;
    }

    /// Pushforward along `project`: the distribution of project(s) for s ~ *this.
    template <class F>
    [[nodiscard]] auto marginal(F&& project) const {
        using T = std::decay_t<decltype(project(std::declval<const S&>()))>;
        typename Distribution<T>::Weights out;
        for (const auto& [s, w] : weights_) {
            out[project(s)] += w;
        }
        return Distribution<T>(std::move(out));
    }

    /// Exact equality as distributions; stored zero weights are ignored.
    friend bool operator==(const Distribution& a, const Distribution& b) {
        for (const auto& [s, w] : a.weights_) {
            if (w != b(s)) {
                return false;
            }
        }
        for (const auto& [s, w] : b.weights_) {
            if (w != a(s)) {
                return false;
            }
        }
        return true;
    }

private:
    Weights weights_;
};

/// Signed affine combination over a finite set: weights of any sign summing to 1.
template <class S>
class SignedWeights {
public:
    using Weights = std::map<S, Rational>;

    explicit SignedWeights(Weights weights) : weights_(std::move(weights)) {
        Rational total;
        for (const auto& [_, w] : weights_) {
            total += w;
        }
        if (total != Rational(1)) {
            throw std::invalid_argument("signed weights sum to " + total.str() + ", not 1");
        }
    }

    [[nodiscard]] Rational operator()(const S& s) const {
        const auto it = weights_.find(s);
        return it == weights_.end() ? Rational() : it->second;
    }

    [[nodiscard]] const Weights& weights() const { return weights_; }

    [[nodiscard]] bool has_negative() const {
        for (const auto& [_, w] : weights_) {
            if (w.is_negative()) {
                return true;
            }
        }
        return false;
    }

    /// Signed pushforward; the result still sums to 1.
    template <class F>
    [[nodiscard]] auto marginal(F&& project) const {
        using T = std::decay_t<decltype(project(std::declval<const S&>()))>;
        typename SignedWeights<T>::Weights out;
        for (const auto& [s, w] : weights_) {
            out[project(s)] += w;
        }
        return SignedWeights<T>(std::move(out));
    }

private:
    Weights weights_;
};

/// Convex combination of distributions. Coefficients must be non-negative and
/// sum to exactly 1.
template <class S>
Distribution<S> mixture(const std::vector<std::pair<Rational, Distribution<S>>>& components) {
    if (components.empty()) {
        throw std::invalid_argument("mixture of no components");
    }
    Rational total;
    typename Distribution<S>::Weights out;
    for (const auto& [c, d] : components) {
        if (c.is_negative()) {
            throw std::invalid_argument("mixture with negative coefficient " + c.str());
        }
        total += c;
        for (const auto& [s, w] : d.weights()) {
            out[s] += c * w;
        }
    }
    if (total != Rational(1)) {
        throw std::invalid_argument("mixture coefficients sum to " + total.str() + ", not 1");
    }
    return Distribution<S>(std::move(out));
}

/// The unique element carrying all the weight, if there is one.
template <class S>
std::optional<S> is_delta(const Distribution<S>& d) {
    for (const auto& [s, w] : d.weights()) {
        if (w == Rational(1)) {
            return s;
        }
    }
    return std::nullopt;
}

template <class S>
struct SupportOverlap {
    /// Some element in both supports, absent when the supports are disjoint.
    std::optional<S> witness;

    [[nodiscard]] bool disjoint() const { return !witness.has_value(); }
};

template <class S>
SupportOverlap<S> supports_disjoint(const Distribution<S>& a, const Distribution<S>& b) {
    for (const auto& [s, w] : a.weights()) {
        if (w.is_positive() && b(s).is_positive()) {
            return {s};
        }
    }
    return {};
}

}  // namespace ontolab
