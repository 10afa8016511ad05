#include "asnoc/linkfault.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "asnoc/optim/ilp.hpp"

namespace asnoc {

namespace {

// Variable bookkeeping for one ILP attempt over n_sw switches.
struct Vars {
    int n_sw = 0;
    int n_core = 0;
    std::vector<std::vector<int>> d_ss;              // d_ss[u][v], u != v
    std::vector<std::vector<int>> d_cs;              // core -> switch
    std::vector<std::vector<int>> d_sc;              // switch -> core
    // x[f][k]: per-edge ids, same layout as d for this flow's edge classes.
    std::vector<std::vector<std::vector<std::vector<int>>>> x_ss;
    std::vector<std::vector<std::vector<int>>> x_cs;  // x_cs[f][k][s]: src_f -> s
    std::vector<std::vector<std::vector<int>>> x_sc;  // x_sc[f][k][s]: s -> dst_f
};

}  // namespace

std::optional<LinkFaultDesign> synth_link_fault_fixed(const CommGraph& ccg, int n_sw,
                                                      const DesignConfig& cfg,
                                                      LinkFaultMode mode,
                                                      const FttgEnergy& energy) {
    const int n_core = static_cast<int>(ccg.cores.size());
    const int n_flow = static_cast<int>(ccg.flows.size());
    const int kp1 = cfg.k + 1;
    optim::IlpModel m;
    Vars v;
    v.n_sw = n_sw;
    v.n_core = n_core;

    const bool fttg = (mode == LinkFaultMode::Fttg);
    // All distances are 1 mm in this mode (no placement step).
    const double link_open_cost = fttg ? 0.0 : cfg.c_pl;

    auto svar = [&](const std::string& s) { return m.add_var(s); };

    v.d_ss.assign(n_sw, std::vector<int>(n_sw, -1));
    for (int u = 0; u < n_sw; ++u)
        for (int w = 0; w < n_sw; ++w)
            if (u != w)
                v.d_ss[u][w] = m.add_var("d_s" + std::to_string(u) + "_s" + std::to_string(w),
                                         link_open_cost);
    v.d_cs.assign(n_core, std::vector<int>(n_sw, -1));
    v.d_sc.assign(n_sw, std::vector<int>(n_core, -1));
    for (int c = 0; c < n_core; ++c)
        for (int s = 0; s < n_sw; ++s) {
            v.d_cs[c][s] = m.add_var("d_c" + std::to_string(c) + "_s" + std::to_string(s),
                                     link_open_cost);
            v.d_sc[s][c] = m.add_var("d_s" + std::to_string(s) + "_c" + std::to_string(c),
                                     link_open_cost);
        }

    v.x_ss.assign(n_flow, {});
    v.x_cs.assign(n_flow, {});
    v.x_sc.assign(n_flow, {});
    for (int f = 0; f < n_flow; ++f) {
        v.x_ss[f].assign(kp1, std::vector<std::vector<int>>(n_sw, std::vector<int>(n_sw, -1)));
        v.x_cs[f].assign(kp1, std::vector<int>(n_sw, -1));
        v.x_sc[f].assign(kp1, std::vector<int>(n_sw, -1));
        for (int k = 0; k < kp1; ++k) {
            const std::string tag = "_f" + std::to_string(f) + "_k" + std::to_string(k);
            for (int u = 0; u < n_sw; ++u)
                for (int w = 0; w < n_sw; ++w)
                    if (u != w)
                        v.x_ss[f][k][u][w] = svar("x_s" + std::to_string(u) + "_s" +
                                                  std::to_string(w) + tag);
            for (int s = 0; s < n_sw; ++s) {
                v.x_cs[f][k][s] = svar("x_src_s" + std::to_string(s) + tag);
                v.x_sc[f][k][s] = svar("x_s" + std::to_string(s) + "_dst" + tag);
            }
        }
    }

    // Traffic energy on default paths: every edge of the default path is a
    // 1 mm link. Directed mode charges e_bit; fttg charges (e_r + e_l) per
    // link, which equals the (R*E_R + L*E_L) objective up to a constant.
    // Alternate paths and (in fttg) link openings carry no real cost, which
    // leaves the relaxation hugely degenerate; a tie-break cost far below
    // any unit of real cost keeps branch and bound from thrashing without
    // moving the optimum.
    double min_unit = optim::kInf;
    for (int f = 0; f < n_flow; ++f) {
        const double per_link = fttg ? (energy.e_r_bit + energy.e_l_bit) * ccg.flows[f].bandwidth
                                     : cfg.e_bit * ccg.flows[f].bandwidth;
        if (per_link > 0.0) min_unit = std::min(min_unit, per_link);
        for (int u = 0; u < n_sw; ++u)
            for (int w = 0; w < n_sw; ++w)
                if (u != w) m.add_cost(v.x_ss[f][0][u][w], per_link);
        for (int s = 0; s < n_sw; ++s) {
            m.add_cost(v.x_cs[f][0][s], per_link);
            m.add_cost(v.x_sc[f][0][s], per_link);
        }
    }
    if (!std::isfinite(min_unit)) min_unit = 1.0;
    const double eps = min_unit * 1e-7;
    for (int f = 0; f < n_flow; ++f)
        for (int k = 1; k < kp1; ++k) {
            for (int u = 0; u < n_sw; ++u)
                for (int w = 0; w < n_sw; ++w)
                    if (u != w) m.add_cost(v.x_ss[f][k][u][w], eps);
            for (int s = 0; s < n_sw; ++s) {
                m.add_cost(v.x_cs[f][k][s], eps);
                m.add_cost(v.x_sc[f][k][s], eps);
            }
        }
    if (fttg)
        for (int u = 0; u < n_sw; ++u)
            for (int w = 0; w < n_sw; ++w)
                if (u != w) m.add_cost(v.d_ss[u][w], eps);

    // Switch power: unit-step binaries pay the exact T_sw marginals on the
    // inport count; C_sw is linear in opened output links (directed only).
    if (!fttg) {
        for (int s = 0; s < n_sw; ++s) {
            std::vector<int> z;
            std::vector<std::pair<int, double>> tie;
            for (int mi = 1; mi <= cfg.max_size; ++mi) {
                const double marginal =
                    cfg.tables.t_sw_at(mi) - cfg.tables.t_sw_at(mi - 1);
                const int zv = m.add_var(
                    "z_s" + std::to_string(s) + "_" + std::to_string(mi), marginal);
                if (!z.empty()) m.add_constraint({{zv, 1.0}, {z.back(), -1.0}}, 'L', 0.0);
                z.push_back(zv);
                tie.push_back({zv, -1.0});
            }
            for (int u = 0; u < n_sw; ++u)
                if (u != s) tie.push_back({v.d_ss[u][s], 1.0});
            for (int c = 0; c < n_core; ++c) tie.push_back({v.d_cs[c][s], 1.0});
            m.add_constraint(tie, 'E', 0.0);

            for (int w = 0; w < n_sw; ++w)
                if (w != s) m.add_cost(v.d_ss[s][w], cfg.tables.c_sw);
            for (int c = 0; c < n_core; ++c) m.add_cost(v.d_sc[s][c], cfg.tables.c_sw);
        }
    }

    // Flow conservation: unit out of the source, unit into the sink,
    // balanced at every switch, for each path k.
    for (int f = 0; f < n_flow; ++f) {
        for (int k = 0; k < kp1; ++k) {
            std::vector<std::pair<int, double>> src_terms, dst_terms;
            for (int s = 0; s < n_sw; ++s) {
                src_terms.push_back({v.x_cs[f][k][s], 1.0});
                dst_terms.push_back({v.x_sc[f][k][s], 1.0});
            }
            m.add_constraint(src_terms, 'E', 1.0);
            m.add_constraint(dst_terms, 'E', 1.0);
            for (int s = 0; s < n_sw; ++s) {
                std::vector<std::pair<int, double>> bal;
                bal.push_back({v.x_cs[f][k][s], 1.0});
                bal.push_back({v.x_sc[f][k][s], -1.0});
                for (int w = 0; w < n_sw; ++w) {
                    if (w == s) continue;
                    bal.push_back({v.x_ss[f][k][w][s], 1.0});
                    bal.push_back({v.x_ss[f][k][s][w], -1.0});
                }
                m.add_constraint(bal, 'E', 0.0);
            }
        }
    }

    // Link-disjointness across the K+1 paths, on switch-to-switch links.
    // Core attachments are shared by construction (one per direction).
    for (int f = 0; f < n_flow; ++f)
        for (int u = 0; u < n_sw; ++u)
            for (int w = 0; w < n_sw; ++w) {
                if (u == w) continue;
                std::vector<std::pair<int, double>> terms;
                for (int k = 0; k < kp1; ++k) terms.push_back({v.x_ss[f][k][u][w], 1.0});
                m.add_constraint(terms, 'L', 1.0);
            }

    // Routing only over opened links.
    for (int f = 0; f < n_flow; ++f)
        for (int k = 0; k < kp1; ++k) {
            for (int u = 0; u < n_sw; ++u)
                for (int w = 0; w < n_sw; ++w)
                    if (u != w)
                        m.add_constraint(
                            {{v.x_ss[f][k][u][w], 1.0}, {v.d_ss[u][w], -1.0}}, 'L', 0.0);
            for (int s = 0; s < n_sw; ++s) {
                m.add_constraint(
                    {{v.x_cs[f][k][s], 1.0}, {v.d_cs[ccg.flows[f].src][s], -1.0}}, 'L', 0.0);
                m.add_constraint(
                    {{v.x_sc[f][k][s], 1.0}, {v.d_sc[s][ccg.flows[f].dst], -1.0}}, 'L', 0.0);
            }
        }

    // Exactly one attachment per core per direction.
    for (int c = 0; c < n_core; ++c) {
        std::vector<std::pair<int, double>> in_terms, out_terms;
        for (int s = 0; s < n_sw; ++s) {
            out_terms.push_back({v.d_cs[c][s], 1.0});
            in_terms.push_back({v.d_sc[s][c], 1.0});
        }
        m.add_constraint(out_terms, 'E', 1.0);
        m.add_constraint(in_terms, 'E', 1.0);
    }

    // Each switch keeps at least one port for other switches, and both port
    // counts stay within max_size.
    for (int s = 0; s < n_sw; ++s) {
        std::vector<std::pair<int, double>> core_in, all_in, all_out;
        for (int c = 0; c < n_core; ++c) {
            core_in.push_back({v.d_cs[c][s], 1.0});
            all_in.push_back({v.d_cs[c][s], 1.0});
            all_out.push_back({v.d_sc[s][c], 1.0});
        }
        for (int u = 0; u < n_sw; ++u) {
            if (u == s) continue;
            all_in.push_back({v.d_ss[u][s], 1.0});
            all_out.push_back({v.d_ss[s][u], 1.0});
        }
        m.add_constraint(core_in, 'L', static_cast<double>(cfg.max_size - 1));
        m.add_constraint(all_in, 'L', static_cast<double>(cfg.max_size));
        m.add_constraint(all_out, 'L', static_cast<double>(cfg.max_size));
    }

    // Latency: the default path visits at most latency_limit switches,
    // i.e. uses at most latency_limit - 1 switch-to-switch links.
    for (int f = 0; f < n_flow; ++f) {
        std::vector<std::pair<int, double>> terms;
        for (int u = 0; u < n_sw; ++u)
            for (int w = 0; w < n_sw; ++w)
                if (u != w) terms.push_back({v.x_ss[f][0][u][w], 1.0});
        m.add_constraint(terms, 'L', static_cast<double>(ccg.flows[f].latency_limit - 1));
    }

    // Bandwidth per edge, summed over all flows and all K+1 paths.
    auto add_bw = [&](auto id_of) {
        std::vector<std::pair<int, double>> terms;
        for (int f = 0; f < n_flow; ++f)
            for (int k = 0; k < kp1; ++k) {
                const int id = id_of(f, k);
                if (id >= 0) terms.push_back({id, ccg.flows[f].bandwidth});
            }
        m.add_constraint(terms, 'L', cfg.bw_max);
    };
    for (int u = 0; u < n_sw; ++u)
        for (int w = 0; w < n_sw; ++w)
            if (u != w) add_bw([&](int f, int k) { return v.x_ss[f][k][u][w]; });
    for (int s = 0; s < n_sw; ++s) {
        add_bw([&](int f, int k) { return v.x_cs[f][k][s]; });
        add_bw([&](int f, int k) { return v.x_sc[f][k][s]; });
    }

    // Undirected links: opening one direction opens the other.
    if (fttg) {
        for (int u = 0; u < n_sw; ++u)
            for (int w = u + 1; w < n_sw; ++w)
                m.add_constraint({{v.d_ss[u][w], 1.0}, {v.d_ss[w][u], -1.0}}, 'E', 0.0);
        for (int c = 0; c < n_core; ++c)
            for (int s = 0; s < n_sw; ++s)
                m.add_constraint({{v.d_cs[c][s], 1.0}, {v.d_sc[s][c], -1.0}}, 'E', 0.0);
    }

    const optim::IlpSolution sol = optim::solve_ilp(m);
    if (sol.status != optim::SolveStatus::Optimal) return std::nullopt;

    LinkFaultDesign out;
    for (int s = 0; s < n_sw; ++s) out.topology.switches.push_back({s, {}});
    for (int u = 0; u < n_sw; ++u)
        for (int w = 0; w < n_sw; ++w)
            if (u != w && sol.x[v.d_ss[u][w]]) out.topology.ss_links.push_back({u, w});
    for (int c = 0; c < n_core; ++c)
        for (int s = 0; s < n_sw; ++s) {
            if (sol.x[v.d_cs[c][s]])
                out.topology.cs_links.push_back({c, s, PortKind::CoreToSwitch});
            if (sol.x[v.d_sc[s][c]])
                out.topology.cs_links.push_back({c, s, PortKind::SwitchToCore});
        }
    std::sort(out.topology.cs_links.begin(), out.topology.cs_links.end());
    std::sort(out.topology.ss_links.begin(), out.topology.ss_links.end());

    out.routing.paths.assign(n_flow, {});
    for (int f = 0; f < n_flow; ++f) {
        for (int k = 0; k < kp1; ++k) {
            int cur = -1;
            for (int s = 0; s < n_sw; ++s)
                if (sol.x[v.x_cs[f][k][s]]) cur = s;
            if (cur < 0) throw std::runtime_error("link-fault routing: no source attachment");
            Path path{cur};
            std::vector<std::vector<bool>> used(n_sw, std::vector<bool>(n_sw, false));
            for (int steps = 0; steps <= 2 * n_sw; ++steps) {
                if (sol.x[v.x_sc[f][k][cur]]) break;  // delivered to the sink
                int next = -1;
                for (int w = 0; w < n_sw; ++w)
                    if (w != cur && sol.x[v.x_ss[f][k][cur][w]] && !used[cur][w]) {
                        next = w;
                        break;
                    }
                if (next < 0)
                    throw std::runtime_error("link-fault routing: dangling path");
                used[cur][next] = true;
                cur = next;
                path.push_back(cur);
            }
            if (!sol.x[v.x_sc[f][k][cur]])
                throw std::runtime_error("link-fault routing: open-ended path");
            out.routing.paths[f].push_back(path);
        }
    }
    return out;
}

std::optional<LinkFaultDesign> synth_link_fault(const CommGraph& ccg, int n_sw_hint,
                                                const DesignConfig& cfg, LinkFaultMode mode,
                                                const FttgEnergy& energy) {
    const int n_core = static_cast<int>(ccg.cores.size());
    const int base = n_sw_hint > 0
                         ? n_sw_hint
                         : (n_core + cfg.max_size - 2) / (cfg.max_size - 1);
    for (int extra = 0; extra <= cfg.max_switch_growth; ++extra) {
        auto design = synth_link_fault_fixed(ccg, base + extra, cfg, mode, energy);
        if (design) return design;
    }
    return std::nullopt;
}

double energy_fttg(const Topology& topo, const CommGraph& ccg, const RoutingSet& routing,
                   double e_r_bit, double e_l_bit) {
    (void)topo;
    double total = 0.0;
    for (size_t f = 0; f < ccg.flows.size(); ++f) {
        if (routing.paths[f].empty()) continue;
        const Path& def = routing.paths[f][0];
        // Links = switch-to-switch hops plus the two core attachments;
        // switches traversed = links - 1.
        const double links = static_cast<double>(def.size()) + 1.0;
        const double switches = links - 1.0;
        total += (switches * e_r_bit + links * e_l_bit) * ccg.flows[f].bandwidth;
    }
    return total;
}

}  // namespace asnoc
