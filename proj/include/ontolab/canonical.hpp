#pragma once

#include <map>
#include <stdexcept>

#include "ontolab/ontology.hpp"

namespace ontolab {

/// A local model rewritten over Ω = E(X): each ontic state is a global
/// assignment ω, responding with the delta product Π_m δ(ω(m), ō(m)).
/// Only the image of the collapse map is materialized.
struct CanonicalModel {
    OntologicalModel model;
    /// c : Λ → E(X), c(λ)(m) = f̂_m(λ).
    std::map<Label, Assignment> collapse;

    /// Positive h(ω|p), keyed by assignment.
    [[nodiscard]] std::map<Assignment, Rational> weights(const Label& preparation) const;
};

/// Thrown by canonicalize for a model that is not local.
class NotLocalError : public std::invalid_argument {
public:
    explicit NotLocalError(LocalityVerdict verdict);

    [[nodiscard]] const LocalityVerdict& verdict() const { return verdict_; }

private:
    LocalityVerdict verdict_;
};

/// Canonical form of a local model. Ontic states with equal generators are
/// merged and their weights summed.
CanonicalModel canonicalize(const OntologicalModel& h);

/// Delta-product response of a global assignment on a context.
Distribution<Assignment> delta_product_response(const Assignment& global, const Context& context);

}  // namespace ontolab
