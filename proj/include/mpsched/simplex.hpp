#pragma once

#include <vector>

#include "rational.hpp"

namespace mpsched {

enum class Relation { LessEq, Eq, GreaterEq };

// Small dense LP: minimize c.x subject to rows of A x <relation> b, x >= 0.
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> rows;
    std::vector<Relation> relations;
    std::vector<Rational> rhs;

    int add_variable(const Rational& cost = Rational(0)) {
        objective.push_back(cost);
        return num_vars++;
    }
    // `coeffs` as (variable, coefficient) pairs; unmentioned variables are 0.
    void add_constraint(const std::vector<std::pair<int, Rational>>& coeffs, Relation rel,
                        const Rational& b) {
        std::vector<Rational> row(num_vars, Rational(0));
        for (const auto& [v, c] : coeffs) row[v] += c;
        rows.push_back(std::move(row));
        relations.push_back(rel);
        rhs.push_back(b);
    }
};

struct LpSolution {
    Rational objective;
    std::vector<Rational> values;
};

namespace detail {

// Two-phase primal simplex on a dense exact-rational tableau, Bland's rule
// throughout (lowest eligible index), so no cycling.
class SimplexTableau {
  public:
    SimplexTableau(const LinearProgram& lp) : n_structural_(lp.num_vars) {
        int m = static_cast<int>(lp.rows.size());
        // normalize to b >= 0
        std::vector<std::vector<Rational>> rows = lp.rows;
        std::vector<Relation> rel = lp.relations;
        std::vector<Rational> rhs = lp.rhs;
        for (int i = 0; i < m; ++i) {
            if (sgn(rhs[i]) < 0) {
                for (auto& c : rows[i]) c = -c;
                rhs[i] = -rhs[i];
                if (rel[i] == Relation::LessEq)
                    rel[i] = Relation::GreaterEq;
                else if (rel[i] == Relation::GreaterEq)
                    rel[i] = Relation::LessEq;
            }
        }
        int slacks = 0;
        for (int i = 0; i < m; ++i)
            if (rel[i] != Relation::Eq) ++slacks;
        int artificials = 0;
        for (int i = 0; i < m; ++i)
            if (rel[i] != Relation::LessEq) ++artificials;

        cols_ = n_structural_ + slacks + artificials;
        tab_.assign(m, std::vector<Rational>(cols_ + 1, Rational(0)));
        basis_.assign(m, -1);
        first_artificial_ = n_structural_ + slacks;

        int slack_at = n_structural_, art_at = first_artificial_;
        for (int i = 0; i < m; ++i) {
            for (int v = 0; v < n_structural_; ++v) tab_[i][v] = rows[i][v];
            tab_[i][cols_] = rhs[i];
            if (rel[i] == Relation::LessEq) {
                tab_[i][slack_at] = 1;
                basis_[i] = slack_at++;
            } else if (rel[i] == Relation::GreaterEq) {
                tab_[i][slack_at++] = -1;
                tab_[i][art_at] = 1;
                basis_[i] = art_at++;
            } else {
                tab_[i][art_at] = 1;
                basis_[i] = art_at++;
            }
        }

        // phase 1: minimize the sum of artificials
        std::vector<Rational> phase1(cols_, Rational(0));
        for (int a = first_artificial_; a < cols_; ++a) phase1[a] = 1;
        set_costs(phase1);
        run();
        if (sgn(objective_value()) != 0) throw LpInfeasible("phase-1 optimum is positive");
        pivot_out_artificials();

        // phase 2
        std::vector<Rational> costs(cols_, Rational(0));
        for (int v = 0; v < n_structural_; ++v) costs[v] = lp.objective[v];
        set_costs(costs);
        run();
    }

    LpSolution solution() const {
        LpSolution s;
        s.values.assign(n_structural_, Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < n_structural_) s.values[basis_[i]] = tab_[i].back();
        s.objective = objective_value();
        return s;
    }

  private:
    void set_costs(const std::vector<Rational>& costs) {
        costs_ = costs;
        reduced_.assign(cols_ + 1, Rational(0));
        for (int v = 0; v < cols_; ++v) reduced_[v] = costs[v];
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rational& cb = costs[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (int v = 0; v <= cols_; ++v) reduced_[v] -= cb * tab_[i][v];
        }
    }

    Rational objective_value() const { return -reduced_[cols_]; }

    void run() {
        for (;;) {
            int entering = -1;
            for (int v = 0; v < cols_; ++v)
                if (sgn(reduced_[v]) < 0 && !banned(v)) {
                    entering = v;
                    break;
                }
            if (entering < 0) return;
            int leaving = -1;
            Rational best_ratio(0);
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (sgn(tab_[i][entering]) <= 0) continue;
                Rational ratio = tab_[i].back() / tab_[i][entering];
                if (leaving < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leaving < 0) throw LpUnbounded("no leaving row for entering column");
            pivot(leaving, entering);
        }
    }

    // in phase 2, artificial columns must never re-enter
    bool banned(int v) const { return in_phase2_ && v >= first_artificial_; }

    void pivot(int row, int col) {
        Rational inv = tab_[row][col];
        for (int v = 0; v <= cols_; ++v) tab_[row][v] /= inv;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (static_cast<int>(i) == row || sgn(tab_[i][col]) == 0) continue;
            Rational f = tab_[i][col];
            for (int v = 0; v <= cols_; ++v) tab_[i][v] -= f * tab_[row][v];
        }
        if (sgn(reduced_[col]) != 0) {
            Rational f = reduced_[col];
            for (int v = 0; v <= cols_; ++v) reduced_[v] -= f * tab_[row][v];
        }
        basis_[row] = col;
    }

    void pivot_out_artificials() {
        in_phase2_ = true;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < first_artificial_) continue;
            int col = -1;
            for (int v = 0; v < first_artificial_; ++v)
                if (sgn(tab_[i][v]) != 0) {
                    col = v;
                    break;
                }
            if (col >= 0) pivot(static_cast<int>(i), col);
            // else: redundant row, harmless to leave (its rhs is 0)
        }
    }

    int n_structural_;
    int cols_ = 0;
    int first_artificial_ = 0;
    bool in_phase2_ = false;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> reduced_;
    std::vector<Rational> costs_;
    std::vector<int> basis_;
};

}  // namespace detail

// Exact rational optimum (an optimal vertex). Throws LpInfeasible/LpUnbounded.
inline LpSolution solve_lp(const LinearProgram& lp) {
    return detail::SimplexTableau(lp).solution();
}

}  // namespace mpsched
