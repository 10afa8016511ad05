#include "asnoc/optim/mincost_flow.hpp"

#include <limits>
#include <vector>

namespace asnoc::optim {

FlowResult min_cost_flow(const FlowNetwork& net) {
    const int n = net.num_nodes;
    const int m = static_cast<int>(net.arcs.size());
    std::vector<int> flow(m, 0);
    double total_cost = 0.0;
    int sent = 0;

    // Residual arcs: 2*i forward, 2*i+1 backward.
    auto residual = [&](int ri) -> int {
        const int i = ri / 2;
        return (ri % 2 == 0) ? net.arcs[i].capacity - flow[i] : flow[i];
    };
    auto arc_cost = [&](int ri) -> double {
        const int i = ri / 2;
        return (ri % 2 == 0) ? net.arcs[i].cost : -net.arcs[i].cost;
    };

    const double inf = std::numeric_limits<double>::infinity();
    while (sent < net.required_flow) {
        std::vector<double> dist(n, inf);
        std::vector<int> pred(n, -1);  // residual arc index into node
        dist[net.source] = 0.0;
        // Bellman-Ford over the fixed arc order; deterministic, handles the
        // negative backward arcs.
        for (int pass = 0; pass < n; ++pass) {
            bool changed = false;
            for (int ri = 0; ri < 2 * m; ++ri) {
                if (residual(ri) <= 0) continue;
                const int i = ri / 2;
                const int u = (ri % 2 == 0) ? net.arcs[i].tail : net.arcs[i].head;
                const int v = (ri % 2 == 0) ? net.arcs[i].head : net.arcs[i].tail;
                if (dist[u] == inf) continue;
                const double nd = dist[u] + arc_cost(ri);
                if (nd < dist[v] - 1e-12) {
                    dist[v] = nd;
                    pred[v] = ri;
                    changed = true;
                }
            }
            if (!changed) break;
        }
        if (dist[net.sink] == inf) return {false, 0.0, {}};

        int push = net.required_flow - sent;
        for (int v = net.sink; v != net.source;) {
            const int ri = pred[v];
            push = std::min(push, residual(ri));
            v = (ri % 2 == 0) ? net.arcs[ri / 2].tail : net.arcs[ri / 2].head;
        }
        for (int v = net.sink; v != net.source;) {
            const int ri = pred[v];
            const int i = ri / 2;
            flow[i] += (ri % 2 == 0) ? push : -push;
            v = (ri % 2 == 0) ? net.arcs[i].tail : net.arcs[i].head;
        }
        total_cost += dist[net.sink] * push;
        sent += push;
    }
    return {true, total_cost, flow};
}

}  // namespace asnoc::optim
