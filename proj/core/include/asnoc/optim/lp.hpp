#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace asnoc::optim {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class SolveStatus { Optimal, Infeasible, Unbounded, VariableCapExceeded };

/// Minimize c.x subject to linear rows and per-variable bounds.
struct LinearProgram {
    struct Row {
        std::vector<std::pair<int, double>> terms;  // (var, coeff)
        char op = 'L';                              // 'L' <=, 'E' ==, 'G' >=
        double rhs = 0.0;
    };

    std::vector<double> obj;
    std::vector<double> lo;
    std::vector<double> hi;
    std::vector<Row> rows;

    int num_vars() const { return static_cast<int>(obj.size()); }

    int add_var(double lower, double upper, double cost) {
        obj.push_back(cost);
        lo.push_back(lower);
        hi.push_back(upper);
        return num_vars() - 1;
    }

    void add_row(std::vector<std::pair<int, double>> terms, char op, double rhs) {
        rows.push_back({std::move(terms), op, rhs});
    }
};

struct LpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense two-phase primal simplex with bounded variables. Dantzig pricing
/// with a Bland's-rule fallback after a degenerate stall.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace asnoc::optim
