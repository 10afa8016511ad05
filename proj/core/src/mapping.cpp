#include "asnoc/mapping.hpp"

#include <algorithm>
#include <map>

#include "asnoc/optim/mincost_flow.hpp"

namespace asnoc {
namespace {

// Sum of flow bandwidth leaving (source side) or entering (sink side) a core.
std::vector<double> side_bandwidth(const CommGraph& ccg, PortKind direction) {
    std::vector<double> bw(ccg.cores.size(), 0.0);
    for (const Flow& f : ccg.flows) {
        if (direction == PortKind::CoreToSwitch) bw[f.src] += f.bandwidth;
        else bw[f.dst] += f.bandwidth;
    }
    return bw;
}

std::vector<double> total_bandwidth(const CommGraph& ccg) {
    std::vector<double> bw(ccg.cores.size(), 0.0);
    for (const Flow& f : ccg.flows) {
        bw[f.src] += f.bandwidth;
        bw[f.dst] += f.bandwidth;
    }
    return bw;
}

}  // namespace

int compute_ncs(int n_core, int n_sw, int k) {
    return n_core * (k + 1) / n_sw + 1;
}

std::vector<Switch> place_switches(const CommGraph& ccg, int n_sw) {
    std::vector<Switch> out;
    if (ccg.cores.empty()) {
        for (int i = 0; i < n_sw; ++i) out.push_back({i, {0, 0}});
        return out;
    }
    const int n = static_cast<int>(ccg.cores.size());
    const std::vector<double> weight = total_bandwidth(ccg);

    // Farthest-point initialization starting from core 0.
    std::vector<Point> centers{ccg.cores[0].pos};
    while (static_cast<int>(centers.size()) < n_sw) {
        int pick = 0;
        double best_d = -1.0;
        for (int c = 0; c < n; ++c) {
            double d = manhattan(ccg.cores[c].pos, centers[0]);
            for (const Point& p : centers) d = std::min(d, manhattan(ccg.cores[c].pos, p));
            if (d > best_d + 1e-12) { best_d = d; pick = c; }
        }
        centers.push_back(ccg.cores[pick].pos);
    }

    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < 50; ++iter) {
        bool changed = false;
        for (int c = 0; c < n; ++c) {
            int best = 0;
            double bd = manhattan(ccg.cores[c].pos, centers[0]);
            for (size_t s = 1; s < centers.size(); ++s) {
                const double d = manhattan(ccg.cores[c].pos, centers[s]);
                if (d < bd - 1e-12) { bd = d; best = static_cast<int>(s); }
            }
            if (assign[c] != best) { assign[c] = best; changed = true; }
        }
        for (size_t s = 0; s < centers.size(); ++s) {
            double wx = 0, wy = 0, wsum = 0;
            double ux = 0, uy = 0;
            int cnt = 0;
            for (int c = 0; c < n; ++c) {
                if (assign[c] != static_cast<int>(s)) continue;
                wx += weight[c] * ccg.cores[c].pos.x;
                wy += weight[c] * ccg.cores[c].pos.y;
                wsum += weight[c];
                ux += ccg.cores[c].pos.x;
                uy += ccg.cores[c].pos.y;
                ++cnt;
            }
            if (cnt == 0) continue;  // empty cluster keeps its center
            if (wsum > 0) centers[s] = {wx / wsum, wy / wsum};
            else centers[s] = {ux / cnt, uy / cnt};
        }
        if (!changed && iter > 0) break;
    }
    for (int s = 0; s < n_sw; ++s) out.push_back({s, centers[s]});
    return out;
}

std::optional<std::vector<CsLink>> map_cores(const CommGraph& ccg,
                                             const std::vector<Switch>& switches,
                                             const DesignConfig& cfg, PortKind direction) {
    const int n_core = static_cast<int>(ccg.cores.size());
    const int n_sw = static_cast<int>(switches.size());
    const int kp1 = cfg.k + 1;
    const int ncs = compute_ncs(n_core, n_sw, cfg.k);
    const std::vector<double> bw = side_bandwidth(ccg, direction);

    // Nodes: 0 = b, 1..n_core = cores, then switches, then t.
    optim::FlowNetwork net;
    net.num_nodes = 1 + n_core + n_sw + 1;
    net.source = 0;
    net.sink = 1 + n_core + n_sw;
    int demand = 0;
    for (int c = 0; c < n_core; ++c) {
        const bool communicating = bw[c] > 0;
        const int cap = communicating ? kp1 : 0;
        net.arcs.push_back({0, 1 + c, cap, 0.0});
        demand += cap;
    }
    // Core->switch arcs, unit capacity, wire cost weighted by traffic.
    std::vector<std::vector<int>> cs_arc(n_core, std::vector<int>(n_sw, -1));
    for (int c = 0; c < n_core; ++c) {
        for (int s = 0; s < n_sw; ++s) {
            const double cost =
                cfg.e_bit * manhattan(ccg.cores[c].pos, switches[s].pos) * bw[c];
            cs_arc[c][s] = static_cast<int>(net.arcs.size());
            net.arcs.push_back({1 + c, 1 + n_core + s, 1, cost});
        }
    }
    // Switch->sink: convex 10x^2 flow cost expanded into unit arcs with
    // marginal costs 10(2x-1), x = 1..N_cs.
    for (int s = 0; s < n_sw; ++s)
        for (int x = 1; x <= ncs; ++x)
            net.arcs.push_back({1 + n_core + s, net.sink, 1, 10.0 * (2 * x - 1)});
    net.required_flow = demand;

    const optim::FlowResult res = optim::min_cost_flow(net);
    if (!res.feasible) return std::nullopt;

    std::vector<CsLink> links;
    for (int c = 0; c < n_core; ++c)
        for (int s = 0; s < n_sw; ++s)
            if (res.flow[cs_arc[c][s]] > 0) links.push_back({c, s, direction});
    return links;
}

std::optional<std::vector<CsLink>> map_cores_both(const CommGraph& ccg,
                                                  const std::vector<Switch>& switches,
                                                  const DesignConfig& cfg) {
    auto src = map_cores(ccg, switches, cfg, PortKind::CoreToSwitch);
    if (!src) return std::nullopt;
    auto dst = map_cores(ccg, switches, cfg, PortKind::SwitchToCore);
    if (!dst) return std::nullopt;
    src->insert(src->end(), dst->begin(), dst->end());
    return src;
}

double mapping_cost(const CommGraph& ccg, const std::vector<Switch>& switches,
                    const DesignConfig& cfg, PortKind direction,
                    const std::vector<CsLink>& links) {
    const std::vector<double> bw = side_bandwidth(ccg, direction);
    double cost = 0.0;
    std::map<int, int> load;
    for (const CsLink& l : links) {
        if (l.dir != direction) continue;
        cost += cfg.e_bit * manhattan(ccg.cores[l.core].pos, switches[l.sw].pos) * bw[l.core];
        load[l.sw] += 1;
    }
    for (const auto& [s, x] : load) cost += 10.0 * x * x;
    return cost;
}

}  // namespace asnoc
