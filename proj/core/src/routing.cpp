#include "asnoc/routing.hpp"

#include <algorithm>
#include <stdexcept>

#include "asnoc/mapping.hpp"
#include "asnoc/optim/ilp.hpp"

namespace asnoc {

namespace {

using Edge = SplitGraph::Edge;
using EdgeType = SplitGraph::EdgeType;

// Node keys inside a per-flow conservation system.
struct NodeIds {
    int n_core;
    int n_sw;
    int core(int c) const { return c; }
    int sw_in(int u) const { return n_core + u; }
    int sw_out(int u) const { return n_core + n_sw + u; }
    int total() const { return n_core + 2 * n_sw; }
};

std::pair<int, int> edge_nodes(const Edge& e, const NodeIds& ids) {
    switch (e.type) {
        case EdgeType::CsIn: return {ids.core(e.a), ids.sw_in(e.b)};
        case EdgeType::CsOut: return {ids.sw_out(e.a), ids.core(e.b)};
        case EdgeType::Split: return {ids.sw_in(e.a), ids.sw_out(e.a)};
        case EdgeType::Link: return {ids.sw_out(e.a), ids.sw_in(e.b)};
    }
    return {0, 0};
}

std::string edge_name(const Edge& e) {
    switch (e.type) {
        case EdgeType::CsIn: return "c" + std::to_string(e.a) + "_s" + std::to_string(e.b);
        case EdgeType::CsOut: return "s" + std::to_string(e.a) + "_c" + std::to_string(e.b);
        case EdgeType::Split: return "sp" + std::to_string(e.a);
        case EdgeType::Link: return "s" + std::to_string(e.a) + "_s" + std::to_string(e.b);
    }
    return "";
}

std::vector<int> flow_order(const CommGraph& ccg) {
    std::vector<int> order(ccg.flows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (ccg.flows[a].bandwidth != ccg.flows[b].bandwidth)
            return ccg.flows[a].bandwidth > ccg.flows[b].bandwidth;
        return a < b;
    });
    return order;
}

}  // namespace

int SplitGraph::count(EdgeType t) const {
    int c = 0;
    for (const Edge& e : edges)
        if (e.type == t) ++c;
    return c;
}

SplitGraph build_split_graph(const std::vector<Switch>& switches,
                             const std::vector<CsLink>& cs_links) {
    SplitGraph g;
    g.n_sw = static_cast<int>(switches.size());
    g.sw_present.assign(g.n_sw, true);
    for (const CsLink& l : cs_links) {
        if (l.dir == PortKind::CoreToSwitch)
            g.edges.push_back({EdgeType::CsIn, l.core, l.sw});
        else
            g.edges.push_back({EdgeType::CsOut, l.sw, l.core});
    }
    for (int u = 0; u < g.n_sw; ++u) g.edges.push_back({EdgeType::Split, u, u});
    for (int u = 0; u < g.n_sw; ++u)
        for (int v = 0; v < g.n_sw; ++v)
            if (u != v) g.edges.push_back({EdgeType::Link, u, v});
    return g;
}

AllocState init_alloc_state(const std::vector<Switch>& switches,
                            const std::vector<CsLink>& cs_links, const DesignConfig& cfg) {
    AllocState st;
    st.bw_max = cfg.bw_max;
    for (const Switch& s : switches) {
        st.ip[s.id] = 0;
        st.op[s.id] = 0;
    }
    for (const CsLink& l : cs_links) {
        if (l.dir == PortKind::CoreToSwitch) st.ip[l.sw] += 1;
        else st.op[l.sw] += 1;
    }
    return st;
}

SplitGraph prune_for_flow(const SplitGraph& g, const AllocState& st, const Flow& f,
                          const DesignConfig& cfg) {
    SplitGraph out = g;
    std::vector<bool> attached(g.n_sw, false);
    for (const Edge& e : g.edges) {
        if (e.type == EdgeType::CsIn && e.a == f.src) attached[e.b] = true;
        if (e.type == EdgeType::CsOut && e.b == f.dst) attached[e.a] = true;
    }
    for (int u = 0; u < g.n_sw; ++u) {
        if (!out.sw_present[u]) continue;
        const bool full = st.ip.at(u) >= cfg.max_size || st.op.at(u) >= cfg.max_size;
        if (full && !attached[u]) out.sw_present[u] = false;
    }
    std::vector<Edge> kept;
    for (const Edge& e : out.edges) {
        switch (e.type) {
            case EdgeType::CsIn:
                if (!out.sw_present[e.b]) continue;
                break;
            case EdgeType::CsOut:
            case EdgeType::Split:
                if (!out.sw_present[e.a]) continue;
                break;
            case EdgeType::Link:
                if (!out.sw_present[e.a] || !out.sw_present[e.b]) continue;
                if (st.residual(e.a, e.b) < f.bandwidth) continue;
                break;
        }
        kept.push_back(e);
    }
    out.edges = std::move(kept);
    return out;
}

std::optional<FlowAlloc> allocate_flow(const Flow& f, const SplitGraph& g,
                                       const AllocState& st,
                                       const std::vector<Switch>& switches,
                                       const DesignConfig& cfg, std::string* lp_dump) {
    const int kp1 = cfg.k + 1;
    const int n_sw = g.n_sw;
    int n_core = std::max(f.src, f.dst) + 1;
    for (const Edge& e : g.edges) {
        if (e.type == EdgeType::CsIn) n_core = std::max(n_core, e.a + 1);
        if (e.type == EdgeType::CsOut) n_core = std::max(n_core, e.b + 1);
    }
    const NodeIds ids{n_core, n_sw};

    // Only this flow's endpoints may appear as path endpoints; other cores'
    // links are not traversable.
    std::vector<Edge> edges;
    for (const Edge& e : g.edges) {
        if (e.type == EdgeType::CsIn && e.a != f.src) continue;
        if (e.type == EdgeType::CsOut && e.b != f.dst) continue;
        edges.push_back(e);
    }
    const int ne = static_cast<int>(edges.size());

    optim::IlpModel m;
    std::vector<std::vector<int>> x(ne, std::vector<int>(kp1, -1));
    for (int ei = 0; ei < ne; ++ei)
        for (int k = 0; k < kp1; ++k)
            x[ei][k] = m.add_var("x_" + edge_name(edges[ei]) + "_k" + std::to_string(k));

    // One d variable per link edge that is not yet a physical link.
    std::vector<int> d(ne, -1);
    for (int ei = 0; ei < ne; ++ei) {
        const Edge& e = edges[ei];
        if (e.type != EdgeType::Link || st.opened.count({e.a, e.b})) continue;
        d[ei] = m.add_var("d_" + edge_name(e), cfg.c_pl + cfg.tables.c_sw);
        for (int k = 0; k < kp1; ++k)
            m.add_constraint({{x[ei][k], 1.0}, {d[ei], -1.0}}, 'L', 0.0);
    }

    // Link traffic cost (default path, or every path when configured).
    for (int ei = 0; ei < ne; ++ei) {
        const Edge& e = edges[ei];
        if (e.type != EdgeType::Link) continue;
        const double c =
            cfg.e_bit * f.bandwidth * manhattan(switches[e.a].pos, switches[e.b].pos);
        m.add_cost(x[ei][0], c);
        if (cfg.charge_all_paths)
            for (int k = 1; k < kp1; ++k) m.add_cost(x[ei][k], c);
    }

    // Conservation, per path index.
    std::vector<std::vector<std::pair<int, double>>> balance(ids.total());
    for (int k = 0; k < kp1; ++k) {
        for (auto& b : balance) b.clear();
        for (int ei = 0; ei < ne; ++ei) {
            const auto [from, to] = edge_nodes(edges[ei], ids);
            balance[from].push_back({x[ei][k], 1.0});
            balance[to].push_back({x[ei][k], -1.0});
        }
        for (int node = 0; node < ids.total(); ++node) {
            if (balance[node].empty()) continue;
            double rhs = 0.0;
            if (node == ids.core(f.src)) rhs = 1.0;
            else if (node == ids.core(f.dst)) rhs = -1.0;
            else if (node < n_core) continue;  // unrelated core, no variables touch it
            m.add_constraint(balance[node], 'E', rhs);
        }
    }

    // Switch-disjointness across the K+1 paths, and per-path latency.
    for (int ei = 0; ei < ne; ++ei) {
        if (edges[ei].type != EdgeType::Split) continue;
        std::vector<std::pair<int, double>> terms;
        for (int k = 0; k < kp1; ++k) terms.push_back({x[ei][k], 1.0});
        m.add_constraint(terms, 'L', 1.0);
    }
    for (int k = 0; k < kp1; ++k) {
        std::vector<std::pair<int, double>> terms;
        for (int ei = 0; ei < ne; ++ei)
            if (edges[ei].type == EdgeType::Split) terms.push_back({x[ei][k], 1.0});
        if (!terms.empty()) m.add_constraint(terms, 'L', static_cast<double>(f.latency_limit));
    }

    // Incremental input-port power: ordered unit-step binaries per switch so
    // the objective pays the exact T_sw delta for however many new in-links
    // this solve opens.
    for (int v = 0; v < n_sw; ++v) {
        std::vector<std::pair<int, double>> din;
        for (int ei = 0; ei < ne; ++ei)
            if (d[ei] >= 0 && edges[ei].type == EdgeType::Link && edges[ei].b == v)
                din.push_back({d[ei], 1.0});
        if (din.empty()) continue;
        const int ip0 = st.ip.count(v) ? st.ip.at(v) : 0;
        const int cap = std::min(static_cast<int>(din.size()),
                                 std::max(0, cfg.max_size - ip0));
        std::vector<int> z;
        for (int mi = 1; mi <= cap; ++mi) {
            const double marginal = cfg.tables.t_sw_at(ip0 + mi) - cfg.tables.t_sw_at(ip0 + mi - 1);
            z.push_back(m.add_var("z_s" + std::to_string(v) + "_" + std::to_string(mi), marginal));
            if (mi >= 2) m.add_constraint({{z.back(), 1.0}, {z[mi - 2], -1.0}}, 'L', 0.0);
        }
        auto terms = din;
        for (int zv : z) terms.push_back({zv, -1.0});
        m.add_constraint(terms, 'E', 0.0);
    }
    // Output-port cap (the per-port power is the linear c_sw already on d).
    for (int u = 0; u < n_sw; ++u) {
        std::vector<std::pair<int, double>> dout;
        for (int ei = 0; ei < ne; ++ei)
            if (d[ei] >= 0 && edges[ei].type == EdgeType::Link && edges[ei].a == u)
                dout.push_back({d[ei], 1.0});
        if (dout.empty()) continue;
        const int op0 = st.op.count(u) ? st.op.at(u) : 0;
        m.add_constraint(dout, 'L', std::max(0.0, static_cast<double>(cfg.max_size - op0)));
    }

    if (lp_dump) *lp_dump = m.to_lp_format();
    const optim::IlpSolution sol = optim::solve_ilp(m);
    if (sol.status != optim::SolveStatus::Optimal) return std::nullopt;

    // Walk the unit flows into explicit switch sequences.
    FlowAlloc out;
    out.objective = sol.objective;
    for (int k = 0; k < kp1; ++k) {
        Path p;
        int cur = -1;  // current switch (in-node side)
        for (int ei = 0; ei < ne; ++ei)
            if (edges[ei].type == EdgeType::CsIn && sol.x[x[ei][k]]) cur = edges[ei].b;
        if (cur < 0) return std::nullopt;
        while (true) {
            p.push_back(cur);
            if (static_cast<int>(p.size()) > n_sw)
                throw std::runtime_error("allocate_flow: malformed unit flow");
            bool done = false;
            int next = -1;
            for (int ei = 0; ei < ne; ++ei) {
                if (!sol.x[x[ei][k]]) continue;
                const Edge& e = edges[ei];
                if (e.type == EdgeType::CsOut && e.a == cur) done = true;
                if (e.type == EdgeType::Link && e.a == cur) next = e.b;
            }
            if (done) break;
            if (next < 0) throw std::runtime_error("allocate_flow: dangling unit flow");
            cur = next;
        }
        out.paths.push_back(std::move(p));
    }
    return out;
}

void commit_flow(AllocState& st, const Flow& f, const std::vector<Path>& paths,
                 const DesignConfig& cfg) {
    for (size_t k = 0; k < paths.size(); ++k) {
        const Path& p = paths[k];
        for (size_t i = 0; i + 1 < p.size(); ++i) {
            const std::pair<int, int> uv{p[i], p[i + 1]};
            if (st.opened.insert(uv).second) {
                st.op[uv.first] += 1;
                st.ip[uv.second] += 1;
            }
            if (k == 0 || cfg.debit_all_paths) st.link_load[uv] += f.bandwidth;
        }
    }
}

std::optional<RoutingOutcome> allocate_flows(const CommGraph& ccg,
                                             const std::vector<Switch>& switches,
                                             const std::vector<CsLink>& cs_links,
                                             const DesignConfig& cfg) {
    const SplitGraph g = build_split_graph(switches, cs_links);
    AllocState st = init_alloc_state(switches, cs_links, cfg);

    RoutingSet routing;
    routing.paths.resize(ccg.flows.size());
    for (int fi : flow_order(ccg)) {
        const Flow& f = ccg.flows[fi];
        const SplitGraph pruned = prune_for_flow(g, st, f, cfg);
        auto alloc = allocate_flow(f, pruned, st, switches, cfg);
        if (!alloc) return std::nullopt;
        commit_flow(st, f, alloc->paths, cfg);
        routing.paths[fi] = std::move(alloc->paths);
    }

    Topology topo;
    topo.switches = switches;
    topo.cs_links = cs_links;
    topo.ss_links.assign(st.opened.begin(), st.opened.end());
    return RoutingOutcome{std::move(topo), std::move(routing)};
}

std::optional<RoutingOutcome> allocate_all(const CommGraph& ccg, const DesignConfig& cfg) {
    for (int extra = 0; extra <= cfg.max_switch_growth; ++extra) {
        const int n_sw = cfg.n_sw + extra;
        const std::vector<Switch> switches = place_switches(ccg, n_sw);
        const auto links = map_cores_both(ccg, switches, cfg);
        if (!links) continue;
        auto outcome = allocate_flows(ccg, switches, *links, cfg);
        if (outcome) return outcome;
    }
    return std::nullopt;
}

std::optional<RoutingOutcome> allocate_all_exact(const CommGraph& ccg,
                                                 const std::vector<Switch>& switches,
                                                 const std::vector<CsLink>& cs_links,
                                                 const DesignConfig& cfg) {
    const int kp1 = cfg.k + 1;
    const int n_sw = static_cast<int>(switches.size());
    const int n_core = static_cast<int>(ccg.cores.size());
    const int n_flows = static_cast<int>(ccg.flows.size());
    const NodeIds ids{n_core, n_sw};
    const SplitGraph g = build_split_graph(switches, cs_links);
    const AllocState base = init_alloc_state(switches, cs_links, cfg);

    optim::IlpModel m;
    const int ne = static_cast<int>(g.edges.size());
    // x indexed by (flow, edge, k); -1 where the edge is unusable for a flow.
    std::vector<std::vector<std::vector<int>>> x(
        n_flows, std::vector<std::vector<int>>(ne, std::vector<int>(kp1, -1)));
    for (int fi = 0; fi < n_flows; ++fi) {
        const Flow& f = ccg.flows[fi];
        for (int ei = 0; ei < ne; ++ei) {
            const Edge& e = g.edges[ei];
            if (e.type == EdgeType::CsIn && e.a != f.src) continue;
            if (e.type == EdgeType::CsOut && e.b != f.dst) continue;
            for (int k = 0; k < kp1; ++k)
                x[fi][ei][k] = m.add_var("x_f" + std::to_string(fi) + "_" + edge_name(e) +
                                         "_k" + std::to_string(k));
        }
    }
    std::vector<int> d(ne, -1);
    for (int ei = 0; ei < ne; ++ei) {
        const Edge& e = g.edges[ei];
        if (e.type != EdgeType::Link) continue;
        d[ei] = m.add_var("d_" + edge_name(e), cfg.c_pl + cfg.tables.c_sw);
        for (int fi = 0; fi < n_flows; ++fi)
            for (int k = 0; k < kp1; ++k)
                m.add_constraint({{x[fi][ei][k], 1.0}, {d[ei], -1.0}}, 'L', 0.0);
    }

    std::vector<std::vector<std::pair<int, double>>> balance(ids.total());
    for (int fi = 0; fi < n_flows; ++fi) {
        const Flow& f = ccg.flows[fi];
        for (int k = 0; k < kp1; ++k) {
            for (auto& b : balance) b.clear();
            for (int ei = 0; ei < ne; ++ei) {
                if (x[fi][ei][k] < 0) continue;
                const auto [from, to] = edge_nodes(g.edges[ei], ids);
                balance[from].push_back({x[fi][ei][k], 1.0});
                balance[to].push_back({x[fi][ei][k], -1.0});
            }
            for (int node = 0; node < ids.total(); ++node) {
                if (balance[node].empty()) continue;
                double rhs = 0.0;
                if (node == ids.core(f.src)) rhs = 1.0;
                else if (node == ids.core(f.dst)) rhs = -1.0;
                m.add_constraint(balance[node], 'E', rhs);
            }
            // Traffic cost on the default path.
            if (k == 0 || cfg.charge_all_paths) {
                for (int ei = 0; ei < ne; ++ei) {
                    if (x[fi][ei][k] < 0 || g.edges[ei].type != EdgeType::Link) continue;
                    const Edge& e = g.edges[ei];
                    m.add_cost(x[fi][ei][k],
                               cfg.e_bit * f.bandwidth *
                                   manhattan(switches[e.a].pos, switches[e.b].pos));
                }
            }
        }
        // Disjointness and latency.
        for (int ei = 0; ei < ne; ++ei) {
            if (g.edges[ei].type != EdgeType::Split) continue;
            std::vector<std::pair<int, double>> terms;
            for (int k = 0; k < kp1; ++k) terms.push_back({x[fi][ei][k], 1.0});
            m.add_constraint(terms, 'L', 1.0);
        }
        for (int k = 0; k < kp1; ++k) {
            std::vector<std::pair<int, double>> terms;
            for (int ei = 0; ei < ne; ++ei)
                if (g.edges[ei].type == EdgeType::Split) terms.push_back({x[fi][ei][k], 1.0});
            m.add_constraint(terms, 'L', static_cast<double>(f.latency_limit));
        }
    }
    // Bandwidth over every path of every flow.
    for (int ei = 0; ei < ne; ++ei) {
        if (g.edges[ei].type != EdgeType::Link) continue;
        std::vector<std::pair<int, double>> terms;
        for (int fi = 0; fi < n_flows; ++fi)
            for (int k = 0; k < kp1; ++k)
                terms.push_back({x[fi][ei][k], ccg.flows[fi].bandwidth});
        m.add_constraint(terms, 'L', cfg.bw_max);
    }
    // Port caps and exact input-port power steps.
    for (int v = 0; v < n_sw; ++v) {
        std::vector<std::pair<int, double>> din, dout;
        for (int ei = 0; ei < ne; ++ei) {
            if (d[ei] < 0) continue;
            if (g.edges[ei].b == v) din.push_back({d[ei], 1.0});
            if (g.edges[ei].a == v) dout.push_back({d[ei], 1.0});
        }
        const int ip0 = base.ip.at(v);
        const int op0 = base.op.at(v);
        if (!din.empty()) {
            const int cap = std::min(static_cast<int>(din.size()),
                                     std::max(0, cfg.max_size - ip0));
            std::vector<int> z;
            for (int mi = 1; mi <= cap; ++mi) {
                const double marginal =
                    cfg.tables.t_sw_at(ip0 + mi) - cfg.tables.t_sw_at(ip0 + mi - 1);
                z.push_back(
                    m.add_var("z_s" + std::to_string(v) + "_" + std::to_string(mi), marginal));
                if (mi >= 2) m.add_constraint({{z.back(), 1.0}, {z[mi - 2], -1.0}}, 'L', 0.0);
            }
            auto terms = din;
            for (int zv : z) terms.push_back({zv, -1.0});
            m.add_constraint(terms, 'E', 0.0);
        }
        if (!dout.empty())
            m.add_constraint(dout, 'L', std::max(0.0, static_cast<double>(cfg.max_size - op0)));
    }

    const optim::IlpSolution sol = optim::solve_ilp(m);
    if (sol.status != optim::SolveStatus::Optimal) return std::nullopt;

    RoutingSet routing;
    routing.paths.resize(n_flows);
    std::set<std::pair<int, int>> opened;
    for (int fi = 0; fi < n_flows; ++fi) {
        for (int k = 0; k < kp1; ++k) {
            int cur = -1;
            for (int ei = 0; ei < ne; ++ei)
                if (g.edges[ei].type == EdgeType::CsIn && x[fi][ei][k] >= 0 &&
                    sol.x[x[fi][ei][k]])
                    cur = g.edges[ei].b;
            Path p;
            while (cur >= 0) {
                p.push_back(cur);
                if (static_cast<int>(p.size()) > n_sw)
                    throw std::runtime_error("allocate_all_exact: malformed unit flow");
                bool done = false;
                int next = -1;
                for (int ei = 0; ei < ne; ++ei) {
                    if (x[fi][ei][k] < 0 || !sol.x[x[fi][ei][k]]) continue;
                    const Edge& e = g.edges[ei];
                    if (e.type == EdgeType::CsOut && e.a == cur) done = true;
                    if (e.type == EdgeType::Link && e.a == cur) next = e.b;
                }
                if (done) break;
                cur = next;
            }
            for (size_t i = 0; i + 1 < p.size(); ++i) opened.insert({p[i], p[i + 1]});
            routing.paths[fi].push_back(std::move(p));
        }
    }
    Topology topo;
    topo.switches = switches;
    topo.cs_links = cs_links;
    topo.ss_links.assign(opened.begin(), opened.end());
    return RoutingOutcome{std::move(topo), std::move(routing)};
}

}  // namespace asnoc
