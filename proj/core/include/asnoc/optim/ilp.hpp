#pragma once

#include <string>
#include <vector>

#include "asnoc/optim/lp.hpp"

namespace asnoc::optim {

/// A 0/1 integer program, minimize c.x.
class IlpModel {
public:
    int add_var(std::string name, double cost = 0.0);
    void set_cost(int var, double cost) { lp_.obj[var] = cost; }
    void add_cost(int var, double cost) { lp_.obj[var] += cost; }
    /// op: 'L' (<=), 'E' (==), 'G' (>=)
    void add_constraint(std::vector<std::pair<int, double>> terms, char op, double rhs);
    /// Pin a variable to a constant value.
    void fix_var(int var, int value);

    int num_vars() const { return lp_.num_vars(); }
    const std::string& name(int var) const { return names_[var]; }
    const LinearProgram& lp() const { return lp_; }

    /// LP text format dump for cross-checking with external solvers.
    std::string to_lp_format() const;

private:
    LinearProgram lp_;
    std::vector<std::string> names_;
};

struct IlpSolution {
    SolveStatus status = SolveStatus::Infeasible;
    double objective = 0.0;
    std::vector<int> x;
};

/// Exact branch-and-bound over the LP relaxation. Branches on the most
/// fractional variable (lowest index on ties); deterministic.
IlpSolution solve_ilp(const IlpModel& model, int var_cap = 5000);

}  // namespace asnoc::optim
