#include "simsmooth/lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace simsmooth {

namespace {

constexpr double kCostTol = 1e-9;        // reduced-cost optimality threshold
constexpr double kPivotTol = 1e-11;      // smallest usable pivot magnitude
constexpr double kRatioTieTol = 1e-9;    // window for ratio-test ties
constexpr double kDegenerateStep = 1e-12;
constexpr int kDegenerateLimit = 200;    // degenerate pivots before Bland's rule

enum class VarStatus { lower, upper, basic };

struct Tableau {
    int m = 0;             // rows
    int n_struct = 0;      // structural variables
    int n_total = 0;       // structural + auxiliary + artificial
    int first_artificial = 0;
    std::vector<std::vector<double>> t;  // m x n_total
    std::vector<double> beta;            // current basic values
    std::vector<double> ub;              // per-column upper bound
    std::vector<VarStatus> status;
    std::vector<int> basis;              // column basic in each row
    std::vector<double> zrow;            // phase-2 reduced costs
    std::vector<double> wrow;            // phase-1 reduced costs
    bool in_phase_one = true;
    int degenerate_run = 0;
    int iterations = 0;

    bool is_artificial(int j) const { return j >= first_artificial; }

    void row_reduce(int r, int j) {
        const double piv = t[r][j];
        const double inv = 1.0 / piv;
        for (double& v : t[r]) v *= inv;
        beta[r] *= inv;
        t[r][j] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = t[i][j];
            if (f == 0.0) continue;
            for (int k = 0; k < n_total; ++k) t[i][k] -= f * t[r][k];
            t[i][j] = 0.0;
            beta[i] -= f * beta[r];
        }
        auto clear_cost = [&](std::vector<double>& cost) {
            const double f = cost[j];
            if (f == 0.0) return;
            for (int k = 0; k < n_total; ++k) cost[k] -= f * t[r][k];
            cost[j] = 0.0;
        };
        clear_cost(zrow);
        if (in_phase_one) clear_cost(wrow);
    }

    // One simplex step against the given cost row; returns false at optimum.
    bool step(const std::vector<double>& cost) {
        const bool bland = degenerate_run >= kDegenerateLimit;
        int j_in = -1;
        double best = -kCostTol;
        for (int j = 0; j < n_total; ++j) {
            if (status[j] == VarStatus::basic) continue;
            if (in_phase_one == false && is_artificial(j)) continue;
            const double score = status[j] == VarStatus::lower ? cost[j] : -cost[j];
            if (score < best) {
                j_in = j;
                best = score;
                if (bland) break;
            }
        }
        if (j_in < 0) return false;

        const double sigma = status[j_in] == VarStatus::lower ? 1.0 : -1.0;
        double t_star = ub[j_in];  // bound-flip distance (may be inf)
        int r_pivot = -1;
        bool leave_at_upper = false;
        double best_piv = 0.0;
        for (int i = 0; i < m; ++i) {
            const double e = sigma * t[i][j_in];
            double limit;
            bool at_upper;
            if (e > kPivotTol) {
                limit = std::max(0.0, beta[i]) / e;
                at_upper = false;
            } else if (e < -kPivotTol && ub[basis[i]] < kLpInfinity) {
                limit = std::max(0.0, ub[basis[i]] - beta[i]) / (-e);
                at_upper = true;
            } else {
                continue;
            }
            // Prefer strictly smaller ratios; inside the tie window take the
            // larger pivot magnitude, then the lower row index.
            if (limit < t_star - kRatioTieTol ||
                (limit < t_star + kRatioTieTol && r_pivot >= 0 && std::abs(t[i][j_in]) > best_piv) ||
                (limit < t_star + kRatioTieTol && r_pivot < 0 && limit < t_star)) {
                t_star = std::min(limit, t_star);
                r_pivot = i;
                leave_at_upper = at_upper;
                best_piv = std::abs(t[i][j_in]);
            }
        }

        ++iterations;
        if (r_pivot < 0) {
            if (ub[j_in] >= kLpInfinity) {
                throw LpUnbounded("lp_solve: objective unbounded below");
            }
            // Bound flip.
            const double u = ub[j_in];
            for (int i = 0; i < m; ++i) beta[i] -= sigma * u * t[i][j_in];
            status[j_in] = status[j_in] == VarStatus::lower ? VarStatus::upper : VarStatus::lower;
            degenerate_run = u <= kDegenerateStep ? degenerate_run + 1 : 0;
            return true;
        }

        degenerate_run = t_star <= kDegenerateStep ? degenerate_run + 1 : 0;
        const int leaving = basis[r_pivot];
        if (sigma < 0.0) {
            // Unfold the entering column's upper bound so it re-enters from 0.
            for (int i = 0; i < m; ++i) beta[i] += ub[j_in] * t[i][j_in];
        }
        row_reduce(r_pivot, j_in);
        basis[r_pivot] = j_in;
        status[j_in] = VarStatus::basic;
        if (leave_at_upper) {
            for (int i = 0; i < m; ++i) beta[i] -= ub[leaving] * t[i][leaving];
            status[leaving] = VarStatus::upper;
        } else {
            status[leaving] = VarStatus::lower;
        }
        return true;
    }
};

}  // namespace

LpSolution lp_solve(const LinearProgram& lp) {
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    if (static_cast<int>(lp.objective.size()) != n || static_cast<int>(lp.upper.size()) != n) {
        throw std::invalid_argument("lp_solve: objective/upper size mismatch");
    }
    for (const auto& row : lp.rows) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("lp_solve: row size mismatch");
    }
    for (double u : lp.upper) {
        if (u < 0.0) throw LpInfeasible("lp_solve: negative upper bound");
    }

    // No rows: minimize over the box directly.
    if (m == 0) {
        LpSolution sol;
        sol.x.assign(n, 0.0);
        for (int j = 0; j < n; ++j) {
            if (lp.objective[j] < 0.0) {
                if (lp.upper[j] >= kLpInfinity) throw LpUnbounded("lp_solve: objective unbounded below");
                sol.x[j] = lp.upper[j];
            }
            sol.objective += lp.objective[j] * sol.x[j];
        }
        return sol;
    }

    // Normalize rows to nonnegative right-hand sides.
    std::vector<std::vector<double>> rows = lp.rows;
    std::vector<RowSense> senses = lp.senses;
    std::vector<double> rhs = lp.rhs;
    for (int i = 0; i < m; ++i) {
        if (rhs[i] < 0.0) {
            for (double& v : rows[i]) v = -v;
            rhs[i] = -rhs[i];
            if (senses[i] == RowSense::le) senses[i] = RowSense::ge;
            else if (senses[i] == RowSense::ge) senses[i] = RowSense::le;
        }
    }

    // Column layout: structural, one slack/surplus per inequality row, one
    // artificial per ge/eq row.
    int n_aux = 0, n_art = 0;
    for (RowSense s : senses) {
        if (s != RowSense::eq) ++n_aux;
        if (s != RowSense::le) ++n_art;
    }
    Tableau tb;
    tb.m = m;
    tb.n_struct = n;
    tb.n_total = n + n_aux + n_art;
    tb.first_artificial = n + n_aux;
    tb.t.assign(m, std::vector<double>(tb.n_total, 0.0));
    tb.beta = rhs;
    tb.ub.assign(tb.n_total, kLpInfinity);
    for (int j = 0; j < n; ++j) tb.ub[j] = lp.upper[j];
    tb.status.assign(tb.n_total, VarStatus::lower);
    tb.basis.assign(m, -1);

    int aux = n, art = tb.first_artificial;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tb.t[i][j] = rows[i][j];
        if (senses[i] == RowSense::le) {
            tb.t[i][aux] = 1.0;
            tb.basis[i] = aux;
            tb.status[aux] = VarStatus::basic;
            ++aux;
        } else {
            if (senses[i] == RowSense::ge) {
                tb.t[i][aux] = -1.0;
                ++aux;
            }
            tb.t[i][art] = 1.0;
            tb.basis[i] = art;
            tb.status[art] = VarStatus::basic;
            ++art;
        }
    }

    // Phase-2 costs (zero on auxiliary and artificial columns) and phase-1
    // costs priced out against the artificial part of the starting basis.
    tb.zrow.assign(tb.n_total, 0.0);
    for (int j = 0; j < n; ++j) tb.zrow[j] = lp.objective[j];
    tb.wrow.assign(tb.n_total, 0.0);
    for (int j = tb.first_artificial; j < tb.n_total; ++j) tb.wrow[j] = 1.0;
    for (int i = 0; i < m; ++i) {
        if (tb.is_artificial(tb.basis[i])) {
            for (int k = 0; k < tb.n_total; ++k) tb.wrow[k] -= tb.t[i][k];
        }
    }

    double scale = 1.0;
    for (int i = 0; i < m; ++i) scale = std::max(scale, rhs[i]);
    const int max_iterations = 20000 + 50 * (m + tb.n_total);

    // Phase 1: drive the artificial variables to zero.
    if (n_art > 0) {
        while (tb.step(tb.wrow)) {
            if (tb.iterations > max_iterations) {
                throw std::runtime_error("lp_solve: iteration limit reached in phase 1");
            }
        }
        double infeas = 0.0;
        for (int i = 0; i < m; ++i) {
            if (tb.is_artificial(tb.basis[i])) infeas += std::max(0.0, tb.beta[i]);
        }
        if (infeas > 1e-7 * scale) throw LpInfeasible("lp_solve: constraints are infeasible");
        // Pin artificials to zero for phase 2.
        for (int j = tb.first_artificial; j < tb.n_total; ++j) tb.ub[j] = 0.0;
    }
    tb.in_phase_one = false;
    tb.degenerate_run = 0;

    while (tb.step(tb.zrow)) {
        if (tb.iterations > max_iterations) {
            throw std::runtime_error("lp_solve: iteration limit reached in phase 2");
        }
    }

    // Refactor the final basis against the original data to shed the round-off
    // accumulated across pivots.
    Eigen::MatrixXd basis_mat = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        const int j = tb.basis[i];
        for (int r = 0; r < m; ++r) {
            if (j < n) {
                basis_mat(r, i) = rows[r][j];
            } else if (j < tb.first_artificial) {
                // Slack/surplus: find its row by reconstructing the layout.
                basis_mat(r, i) = 0.0;
            } else {
                basis_mat(r, i) = 0.0;
            }
        }
    }
    // Aux/artificial columns are unit vectors on their own rows; fill them in.
    {
        int aux2 = n, art2 = tb.first_artificial;
        std::vector<int> aux_row(tb.n_total, -1);
        std::vector<double> aux_sign(tb.n_total, 0.0);
        for (int i = 0; i < m; ++i) {
            if (senses[i] == RowSense::le) {
                aux_row[aux2] = i;
                aux_sign[aux2] = 1.0;
                ++aux2;
            } else if (senses[i] == RowSense::ge) {
                aux_row[aux2] = i;
                aux_sign[aux2] = -1.0;
                ++aux2;
            }
            if (senses[i] != RowSense::le) {
                aux_row[art2] = i;
                aux_sign[art2] = 1.0;
                ++art2;
            }
        }
        for (int i = 0; i < m; ++i) {
            const int j = tb.basis[i];
            if (j >= n && aux_row[j] >= 0) basis_mat(aux_row[j], i) = aux_sign[j];
        }
    }
    Eigen::VectorXd b_eff(m);
    for (int i = 0; i < m; ++i) b_eff[i] = rhs[i];
    for (int j = 0; j < tb.n_total; ++j) {
        if (tb.status[j] == VarStatus::upper && tb.ub[j] > 0.0 && tb.ub[j] < kLpInfinity) {
            if (j < n) {
                for (int i = 0; i < m; ++i) b_eff[i] -= rows[i][j] * tb.ub[j];
            }
        }
    }
    const Eigen::VectorXd beta_clean = basis_mat.partialPivLu().solve(b_eff);

    LpSolution sol;
    sol.iterations = tb.iterations;
    sol.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j) {
        if (tb.status[j] == VarStatus::upper) sol.x[j] = tb.ub[j];
    }
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n) sol.x[tb.basis[i]] = beta_clean[i];
    }
    for (int j = 0; j < n; ++j) {
        if (sol.x[j] < 0.0 && sol.x[j] > -1e-7) sol.x[j] = 0.0;
        if (tb.ub[j] < kLpInfinity) sol.x[j] = std::min(sol.x[j], tb.ub[j]);
    }
    for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

}  // namespace simsmooth
