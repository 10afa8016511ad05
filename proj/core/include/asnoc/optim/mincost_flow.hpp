#pragma once

#include <vector>

namespace asnoc::optim {

/// Integral min-cost flow instance. Arc costs may be negative only when the
/// network is acyclic on negative-cost arcs (true for the convex expansions
/// used here); capacities are integer units.
struct FlowNetwork {
    struct Arc {
        int tail = 0;
        int head = 0;
        int capacity = 0;
        double cost = 0.0;
    };
    int num_nodes = 0;
    std::vector<Arc> arcs;
    int source = 0;
    int sink = 0;
    int required_flow = 0;
};

struct FlowResult {
    bool feasible = false;
    double cost = 0.0;
    std::vector<int> flow;  // per arc, same order as net.arcs
};

/// Successive shortest augmenting paths; deterministic (Bellman-Ford with
/// fixed arc order, lowest arc index wins ties).
FlowResult min_cost_flow(const FlowNetwork& net);

}  // namespace asnoc::optim
