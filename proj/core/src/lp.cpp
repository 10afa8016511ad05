#include "asnoc/optim/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace asnoc::optim {
namespace {

constexpr double kPivEps = 1e-9;
constexpr double kCostEps = 1e-7;
constexpr int kStallLimit = 60;

struct Tableau {
    int m = 0;  // rows
    int n = 0;  // columns (structural + slack + artificial)
    std::vector<double> a;     // m x n, row major
    std::vector<double> rhs;   // value of basic variable per row
    std::vector<double> cost;  // current phase costs
    std::vector<double> rc;    // reduced cost row
    std::vector<double> lo, hi;
    std::vector<int> basis;       // var index per row
    std::vector<int> state;       // nonbasic: 0 at lower, 1 at upper; 2 basic
    std::vector<double> nb_value; // value of nonbasic var

    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    double var_value(int j) const {
        if (state[j] == 2) {
            for (int i = 0; i < m; ++i)
                if (basis[i] == j) return rhs[i];
            return 0.0;
        }
        return nb_value[j];
    }

    void compute_reduced_costs() {
        rc = cost;
        for (int i = 0; i < m; ++i) {
            const double cb = cost[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < n; ++j) rc[j] -= cb * at(i, j);
        }
        for (int i = 0; i < m; ++i) rc[basis[i]] = 0.0;
    }

    // Row operations only; rhs is maintained by the caller (it already holds
    // the post-step basic values).
    void pivot(int r, int q) {
        const double piv = at(r, q);
        const double inv = 1.0 / piv;
        for (int j = 0; j < n; ++j) at(r, j) *= inv;
        at(r, q) = 1.0;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = at(i, q);
            if (std::abs(f) < 1e-13) { at(i, q) = 0.0; continue; }
            for (int j = 0; j < n; ++j) at(i, j) -= f * at(r, j);
            at(i, q) = 0.0;
        }
        const double f = rc[q];
        if (std::abs(f) > 0.0) {
            for (int j = 0; j < n; ++j) rc[j] -= f * at(r, j);
            rc[q] = 0.0;
        }
    }

    // Returns Optimal or Unbounded for the current phase.
    SolveStatus iterate() {
        compute_reduced_costs();
        int stall = 0;
        long iter = 0;
        const long iter_limit = 2000 + 200L * (m + n);
        while (true) {
            if (++iter > iter_limit)
                throw std::runtime_error("simplex: iteration limit exceeded");
            const bool bland = stall >= kStallLimit;
            int q = -1;
            double best_viol = kCostEps;
            for (int j = 0; j < n; ++j) {
                if (state[j] == 2) continue;
                double viol = 0.0;
                if (state[j] == 0 && rc[j] < -kCostEps) viol = -rc[j];
                else if (state[j] == 1 && rc[j] > kCostEps) viol = rc[j];
                else continue;
                if (bland) { q = j; break; }
                if (viol > best_viol) { best_viol = viol; q = j; }
            }
            if (q < 0) return SolveStatus::Optimal;

            const bool from_lower = (state[q] == 0);
            const double dir = from_lower ? 1.0 : -1.0;  // x_q moves by dir*t, t >= 0
            double t_best = hi[q] - lo[q];               // bound flip limit (may be inf)
            int r_best = -1;
            for (int i = 0; i < m; ++i) {
                const double col = at(i, q) * dir;  // xB_i changes by -col*t
                double limit;
                if (col > kPivEps) {
                    limit = (rhs[i] - lo[basis[i]]) / col;
                } else if (col < -kPivEps) {
                    limit = (hi[basis[i]] - rhs[i]) / (-col);
                } else {
                    continue;
                }
                if (limit < -1e-9) limit = 0.0;
                if (limit < t_best - kPivEps ||
                    (r_best >= 0 && limit < t_best + kPivEps && basis[i] < basis[r_best])) {
                    t_best = limit;
                    r_best = i;
                }
            }
            if (t_best == kInf || (r_best < 0 && !std::isfinite(t_best)))
                return SolveStatus::Unbounded;
            if (t_best < 0) t_best = 0.0;
            stall = (t_best <= kPivEps) ? stall + 1 : 0;

            // Apply the step to the basic values.
            for (int i = 0; i < m; ++i) rhs[i] -= at(i, q) * dir * t_best;

            if (r_best < 0) {
                // Bound flip: q jumps to its opposite bound, basis unchanged.
                state[q] = from_lower ? 1 : 0;
                nb_value[q] = from_lower ? hi[q] : lo[q];
                continue;
            }
            const int leaving = basis[r_best];
            // Leaving variable lands on whichever of its bounds it hit.
            const double col = at(r_best, q) * dir;
            state[leaving] = (col > 0) ? 0 : 1;
            nb_value[leaving] = (col > 0) ? lo[leaving] : hi[leaving];
            basis[r_best] = q;
            state[q] = 2;
            rhs[r_best] = (from_lower ? lo[q] : hi[q]) + dir * t_best;
            pivot(r_best, q);
        }
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const int ns = lp.num_vars();
    const int m = static_cast<int>(lp.rows.size());
    for (int j = 0; j < ns; ++j)
        if (lp.lo[j] > lp.hi[j] + 1e-12) return {SolveStatus::Infeasible, 0.0, {}};

    Tableau t;
    t.m = m;
    // Columns: structural, one slack per inequality row, one artificial per row.
    std::vector<int> slack_col(m, -1);
    int n = ns;
    for (int i = 0; i < m; ++i)
        if (lp.rows[i].op != 'E') slack_col[i] = n++;
    const int art0 = n;
    n += m;
    t.n = n;
    t.a.assign(static_cast<size_t>(m) * n, 0.0);
    t.lo.assign(n, 0.0);
    t.hi.assign(n, kInf);
    t.cost.assign(n, 0.0);
    t.state.assign(n, 0);
    t.nb_value.assign(n, 0.0);
    t.basis.resize(m);
    t.rhs.assign(m, 0.0);

    for (int j = 0; j < ns; ++j) {
        t.lo[j] = lp.lo[j];
        t.hi[j] = lp.hi[j];
        // Start structural variables at the bound closer to zero when both
        // are finite, else at the finite one.
        double v;
        if (std::isfinite(lp.lo[j])) v = lp.lo[j];
        else if (std::isfinite(lp.hi[j])) { v = lp.hi[j]; t.state[j] = 1; }
        else throw std::runtime_error("simplex: free variables unsupported");
        t.nb_value[j] = v;
    }
    for (int i = 0; i < m; ++i) {
        const auto& row = lp.rows[i];
        for (const auto& [j, c] : row.terms) t.at(i, j) += c;
        if (row.op == 'L') t.at(i, slack_col[i]) = 1.0;   // ax + s = b, s >= 0
        if (row.op == 'G') t.at(i, slack_col[i]) = -1.0;  // ax - s = b, s >= 0
    }
    // Make every initial residual nonnegative by negating rows as needed,
    // so the artificial basis starts as an identity.
    for (int i = 0; i < m; ++i) {
        double r = lp.rows[i].rhs;
        for (int j = 0; j < art0; ++j) {
            const double c = t.at(i, j);
            if (c != 0.0) r -= c * t.nb_value[j];
        }
        if (r < 0) {
            for (int j = 0; j < art0; ++j) t.at(i, j) = -t.at(i, j);
            r = -r;
        }
        const int aj = art0 + i;
        t.at(i, aj) = 1.0;
        t.basis[i] = aj;
        t.state[aj] = 2;
        t.rhs[i] = r;
        t.cost[aj] = 1.0;
    }

    // Phase 1: drive artificials to zero.
    if (t.iterate() == SolveStatus::Unbounded)
        throw std::runtime_error("simplex: phase-1 unbounded");
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
        if (t.basis[i] >= art0) art_sum += std::abs(t.rhs[i]);
    for (int j = art0; j < n; ++j)
        if (t.state[j] == 1) art_sum += std::abs(t.nb_value[j]);
    if (art_sum > 1e-6) return {SolveStatus::Infeasible, 0.0, {}};

    // Phase 2: real costs; artificials pinned at zero.
    for (int j = art0; j < n; ++j) {
        t.hi[j] = 0.0;
        if (t.state[j] != 2) { t.state[j] = 0; t.nb_value[j] = 0.0; }
    }
    std::fill(t.cost.begin(), t.cost.end(), 0.0);
    for (int j = 0; j < ns; ++j) t.cost[j] = lp.obj[j];
    const SolveStatus st = t.iterate();
    if (st == SolveStatus::Unbounded) return {SolveStatus::Unbounded, 0.0, {}};

    LpSolution sol;
    sol.status = SolveStatus::Optimal;
    sol.x.assign(ns, 0.0);
    std::vector<double> full(n, 0.0);
    for (int j = 0; j < n; ++j)
        if (t.state[j] != 2) full[j] = t.nb_value[j];
    for (int i = 0; i < m; ++i) full[t.basis[i]] = t.rhs[i];
    double obj = 0.0;
    for (int j = 0; j < ns; ++j) {
        double v = full[j];
        if (v < lp.lo[j]) v = lp.lo[j];
        if (v > lp.hi[j]) v = lp.hi[j];
        sol.x[j] = v;
        obj += lp.obj[j] * v;
    }
    sol.objective = obj;
    return sol;
}

}  // namespace asnoc::optim
