#include "ontolab/lp.hpp"

#include <stdexcept>

namespace ontolab::lp {

namespace {

void check_shape(const EqualitySystem& system) {
    if (system.rows.size() != system.rhs.size()) {
        throw std::invalid_argument("equality system has mismatched row and rhs counts");
    }
    for (const auto& row : system.rows) {
        if (row.size() != system.columns) {
            throw std::invalid_argument("equality system row has the wrong width");
        }
    }
}

// Tableau with one row per constraint plus the reduced-cost row at index m.
// Column layout: [original n | artificial m | rhs].
class Tableau {
public:
    Tableau(const EqualitySystem& system, std::vector<bool>& negated)
        : m_(system.rows.size()), n_(system.columns), width_(n_ + m_ + 1) {
        cells_.assign((m_ + 1) * width_, Rational());
        basis_.resize(m_);
        negated.assign(m_, false);
        for (std::size_t i = 0; i < m_; ++i) {
            negated[i] = system.rhs[i].is_negative();
            const Rational sign(negated[i] ? -1 : 1);
            for (std::size_t j = 0; j < n_; ++j) {
                if (!system.rows[i][j].is_zero()) {
                    at(i, j) = sign * system.rows[i][j];
                }
            }
            at(i, n_ + i) = Rational(1);
            at(i, width_ - 1) = sign * system.rhs[i];
            basis_[i] = n_ + i;
        }
        // Phase-I costs: 1 on every artificial. Reduced costs r_j = c_j - 1ᵀA_j;
        // the rhs cell holds minus the objective value.
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                at(m_, j) -= at(i, j);
            }
            at(m_, width_ - 1) -= at(i, width_ - 1);
        }
    }

    Rational& at(std::size_t i, std::size_t j) { return cells_[i * width_ + j]; }
    [[nodiscard]] const Rational& at(std::size_t i, std::size_t j) const { return cells_[i * width_ + j]; }

    // Bland's rule: lowest-index improving column, then lowest-index basic
    // variable among the minimum-ratio rows.
    bool step() {
        std::size_t entering = width_;
        for (std::size_t j = 0; j + 1 < width_; ++j) {
            if (at(m_, j).is_negative()) {
                entering = j;
                break;
            }
        }
        if (entering == width_) {
            return false;
        }
        std::size_t leaving = m_;
        Rational best;
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& coeff = at(i, entering);
            if (!coeff.is_positive()) {
                continue;
            }
            Rational ratio = at(i, width_ - 1) / coeff;
            if (leaving == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
                leaving = i;
                best = std::move(ratio);
            }
        }
        if (leaving == m_) {
            // Phase-I objective is bounded below by 0, so this cannot happen.
            throw std::logic_error("phase-one simplex found an unbounded direction");
        }
        pivot(leaving, entering);
        return true;
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inverse = Rational(1) / at(row, col);
        for (std::size_t j = 0; j < width_; ++j) {
            if (!at(row, j).is_zero()) {
                at(row, j) *= inverse;
            }
        }
        std::vector<std::size_t> nonzero;
        for (std::size_t j = 0; j < width_; ++j) {
            if (!at(row, j).is_zero()) {
                nonzero.push_back(j);
            }
        }
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == row || at(i, col).is_zero()) {
                continue;
            }
            const Rational factor = at(i, col);
            for (std::size_t j : nonzero) {
                at(i, j) -= factor * at(row, j);
            }
        }
        basis_[row] = col;
    }

    [[nodiscard]] Rational objective() const { return -at(m_, width_ - 1); }
    [[nodiscard]] std::size_t rows() const { return m_; }
    [[nodiscard]] std::size_t columns() const { return n_; }
    [[nodiscard]] std::size_t basic(std::size_t i) const { return basis_[i]; }
    [[nodiscard]] const Rational& value(std::size_t i) const { return at(i, width_ - 1); }
    [[nodiscard]] const Rational& reduced_cost(std::size_t j) const { return at(m_, j); }

private:
    std::size_t m_;
    std::size_t n_;
    std::size_t width_;
    std::vector<Rational> cells_;
    std::vector<std::size_t> basis_;
};

}  // namespace

FeasibilityResult phase_one(const EqualitySystem& system) {
    check_shape(system);
    std::vector<bool> negated;
    Tableau tableau(system, negated);
    FeasibilityResult out;
    while (tableau.step()) {
        ++out.pivots;
    }
    const std::size_t m = tableau.rows();
    const std::size_t n = tableau.columns();
    if (tableau.objective().is_zero()) {
        out.feasible = true;
        out.solution.assign(n, Rational());
        for (std::size_t i = 0; i < m; ++i) {
            if (tableau.basic(i) < n) {
                out.solution[tableau.basic(i)] = tableau.value(i);
            }
        }
        return out;
    }
    // Phase-I duals y_i = c_i - r_{n+i} = 1 - r_{n+i}; optimality gives
    // yᵀA ≤ 0 and yᵀb = objective > 0. Negate to get the Farkas vector, and
    // undo the row sign flips made to keep b ≥ 0.
    out.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational y = Rational(1) - tableau.reduced_cost(n + i);
        out.farkas[i] = negated[i] ? y : -y;
    }
    return out;
}

std::optional<std::vector<Rational>> solve_affine(const EqualitySystem& system) {
    check_shape(system);
    const std::size_t m = system.rows.size();
    const std::size_t n = system.columns;
    std::vector<std::vector<Rational>> aug(m);
    for (std::size_t i = 0; i < m; ++i) {
        aug[i] = system.rows[i];
        aug[i].push_back(system.rhs[i]);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t found = m;
        for (std::size_t i = rank; i < m; ++i) {
            if (!aug[i][col].is_zero()) {
                found = i;
                break;
            }
        }
        if (found == m) {
            continue;
        }
        std::swap(aug[rank], aug[found]);
        const Rational inverse = Rational(1) / aug[rank][col];
        for (auto& cell : aug[rank]) {
            if (!cell.is_zero()) {
                cell *= inverse;
            }
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (i == rank || aug[i][col].is_zero()) {
                continue;
            }
            const Rational factor = aug[i][col];
            for (std::size_t j = col; j <= n; ++j) {
                if (!aug[rank][j].is_zero()) {
                    aug[i][j] -= factor * aug[rank][j];
                }
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < m; ++i) {
        if (!aug[i][n].is_zero()) {
            return std::nullopt;
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < rank; ++r) {
        x[pivot_col[r]] = aug[r][n];
    }
    return x;
}

}  // namespace ontolab::lp
