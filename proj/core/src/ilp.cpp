#include "asnoc/optim/ilp.hpp"

#include <cmath>
#include <sstream>

namespace asnoc::optim {

int IlpModel::add_var(std::string name, double cost) {
    names_.push_back(std::move(name));
    return lp_.add_var(0.0, 1.0, cost);
}

void IlpModel::add_constraint(std::vector<std::pair<int, double>> terms, char op, double rhs) {
    lp_.add_row(std::move(terms), op, rhs);
}

void IlpModel::fix_var(int var, int value) {
    lp_.lo[var] = value;
    lp_.hi[var] = value;
}

std::string IlpModel::to_lp_format() const {
    std::ostringstream os;
    os << "Minimize\n obj:";
    for (int j = 0; j < num_vars(); ++j) {
        const double c = lp_.obj[j];
        if (c == 0.0) continue;
        os << (c >= 0 ? " + " : " - ") << std::abs(c) << " " << names_[j];
    }
    os << "\nSubject To\n";
    for (size_t i = 0; i < lp_.rows.size(); ++i) {
        const auto& row = lp_.rows[i];
        os << " c" << i << ":";
        for (const auto& [j, c] : row.terms)
            os << (c >= 0 ? " + " : " - ") << std::abs(c) << " " << names_[j];
        os << (row.op == 'L' ? " <= " : row.op == 'G' ? " >= " : " = ") << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < num_vars(); ++j)
        os << " " << lp_.lo[j] << " <= " << names_[j] << " <= " << lp_.hi[j] << "\n";
    os << "Binaries\n";
    for (int j = 0; j < num_vars(); ++j) os << " " << names_[j];
    os << "\nEnd\n";
    return os.str();
}

namespace {

struct BnB {
    LinearProgram lp;  // bounds mutated along the search path
    double best = kInf;
    std::vector<int> best_x;
    bool found = false;

    void search() {
        const LpSolution rel = solve_lp(lp);
        if (rel.status != SolveStatus::Optimal) return;
        if (found && rel.objective >= best - 1e-9) return;

        int branch_var = -1;
        double most_frac = 1e-6;
        for (int j = 0; j < lp.num_vars(); ++j) {
            const double f = rel.x[j] - std::floor(rel.x[j]);
            const double dist = std::min(f, 1.0 - f);
            if (dist > most_frac) { most_frac = dist; branch_var = j; }
        }
        if (branch_var < 0) {
            best = rel.objective;
            best_x.assign(lp.num_vars(), 0);
            for (int j = 0; j < lp.num_vars(); ++j)
                best_x[j] = static_cast<int>(std::lround(rel.x[j]));
            found = true;
            return;
        }
        const double save_lo = lp.lo[branch_var];
        const double save_hi = lp.hi[branch_var];
        lp.hi[branch_var] = 0.0;  // round-down child first
        search();
        lp.hi[branch_var] = save_hi;
        lp.lo[branch_var] = 1.0;
        search();
        lp.lo[branch_var] = save_lo;
    }
};

}  // namespace

IlpSolution solve_ilp(const IlpModel& model, int var_cap) {
    if (model.num_vars() > var_cap)
        return {SolveStatus::VariableCapExceeded, 0.0, {}};
    BnB bnb;
    bnb.lp = model.lp();
    bnb.search();
    if (!bnb.found) return {SolveStatus::Infeasible, 0.0, {}};
    // Recompute the objective from the integral point to avoid LP roundoff.
    double obj = 0.0;
    for (int j = 0; j < model.num_vars(); ++j)
        obj += model.lp().obj[j] * bnb.best_x[j];
    return {SolveStatus::Optimal, obj, bnb.best_x};
}

}  // namespace asnoc::optim
