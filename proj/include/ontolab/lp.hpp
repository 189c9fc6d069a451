#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ontolab/rational.hpp"

namespace ontolab::lp {

/// Dense equality system A x = b over the rationals.
struct EqualitySystem {
    std::vector<std::vector<Rational>> rows;  // A, row-major
    std::vector<Rational> rhs;                // b
    std::size_t columns = 0;
};

struct FeasibilityResult {
    bool feasible = false;
    /// x ≥ 0 with A x = b when feasible.
    std::vector<Rational> solution;
    /// When infeasible: y with yᵀA ≥ 0 componentwise and yᵀb < 0.
    std::vector<Rational> farkas;
    std::size_t pivots = 0;
};

/// Decides whether A x = b has a solution x ≥ 0 by Phase-I simplex over exact
/// rationals with Bland's rule. Never cycles; no tolerances.
FeasibilityResult phase_one(const EqualitySystem& system);

/// Some solution of A x = b with unrestricted sign, found by Gauss-Jordan
/// elimination (first non-zero pivot per column, free variables set to 0).
/// nullopt when the system is inconsistent.
std::optional<std::vector<Rational>> solve_affine(const EqualitySystem& system);

}  // namespace ontolab::lp
