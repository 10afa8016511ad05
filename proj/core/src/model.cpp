#include "asnoc/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace asnoc {

double PowerTables::t_sw_at(int ip) const {
    if (ip <= 0) return 0.0;
    const int last = static_cast<int>(t_sw.size()) - 1;
    if (ip <= last) return t_sw[ip];
    if (last < 1) return 0.0;
    const double slope = (last >= 2) ? t_sw[last] - t_sw[last - 1] : t_sw[last];
    return t_sw[last] + slope * (ip - last);
}

PowerTables default_power_tables() {
    PowerTables t;
    // Synthetic switch table, superlinear in the input port count.
    t.t_sw.assign(1, 0.0);
    for (int ip = 1; ip <= 16; ++ip) t.t_sw.push_back(2.0 * ip + 0.12 * ip * ip);
    t.c_sw = 1.6;
    t.mux = {{2, 2.2274e-03}, {3, 2.9082e-02}, {4, 5.3280e-02},
             {5, 6.3278e-02}, {6, 7.1425e-02}};
    t.demux = {{2, 1.8354e-03}, {3, 3.4385e-02}, {4, 4.8588e-02},
               {5, 5.0520e-02}, {6, 6.0453e-02}};
    return t;
}

bool Topology::has_ss_link(int u, int v) const {
    return std::find(ss_links.begin(), ss_links.end(), std::make_pair(u, v)) != ss_links.end();
}

SharingPlan singleton_sharing(const CommGraph& /*ccg*/, const Topology& topo) {
    SharingPlan plan;
    for (const auto& l : topo.cs_links) {
        auto& groups = (l.dir == PortKind::CoreToSwitch) ? plan.inport_groups[l.sw]
                                                         : plan.outport_groups[l.sw];
        groups.push_back({l.core});
    }
    return plan;
}

std::vector<std::string> validate(const CommGraph& ccg, const DesignConfig& cfg) {
    std::vector<std::string> out;
    auto add = [&out](const std::string& m) { out.push_back(m); };

    std::set<int> ids;
    for (size_t i = 0; i < ccg.cores.size(); ++i) {
        const Core& c = ccg.cores[i];
        if (c.id != static_cast<int>(i))
            add("core " + std::to_string(i) + ": ids must be dense, got " + std::to_string(c.id));
        if (!ids.insert(c.id).second)
            add("core " + std::to_string(c.id) + ": duplicate id");
        if (!std::isfinite(c.pos.x) || !std::isfinite(c.pos.y) || c.pos.x < 0 || c.pos.y < 0)
            add("core " + std::to_string(c.id) + ": coordinates must be finite and non-negative");
    }

    const int n = static_cast<int>(ccg.cores.size());
    std::set<std::pair<int, int>> seen;
    for (size_t i = 0; i < ccg.flows.size(); ++i) {
        const Flow& f = ccg.flows[i];
        const std::string tag = "flow " + std::to_string(i);
        if (f.src == f.dst) add(tag + ": src equals dst");
        if (f.src < 0 || f.src >= n) add(tag + ": src references missing core");
        if (f.dst < 0 || f.dst >= n) add(tag + ": dst references missing core");
        if (!(f.bandwidth > 0)) add(tag + ": bandwidth must be positive");
        if (f.latency_limit < 1) add(tag + ": latency_limit must be >= 1");
        if (!seen.insert({f.src, f.dst}).second)
            add(tag + ": duplicate (src,dst) pair");
        if (f.bandwidth > cfg.bw_max)
            add(tag + ": bandwidth " + std::to_string(f.bandwidth) + " exceeds bw_max " +
                std::to_string(cfg.bw_max));
    }

    if (cfg.k < 0) add("config: K must be >= 0");
    if (cfg.n_sw < 1) add("config: n_sw must be >= 1");
    if (!(cfg.bw_max > 0)) add("config: bw_max must be positive");
    if (cfg.max_size < 1) add("config: max_size must be >= 1");
    if (cfg.e_bit < 0) add("config: e_bit must be >= 0");
    if (cfg.c_pl < 0) add("config: c_pl must be >= 0");
    if (cfg.max_switch_growth < 0) add("config: max_switch_growth must be >= 0");
    if (static_cast<int>(cfg.tables.t_sw.size()) < 2)
        add("config: t_sw table must cover at least one port count");
    for (size_t i = 2; i < cfg.tables.t_sw.size(); ++i)
        if (cfg.tables.t_sw[i] < cfg.tables.t_sw[i - 1]) {
            add("config: t_sw table must be non-decreasing");
            break;
        }
    for (double v : cfg.tables.t_sw)
        if (v < 0) { add("config: t_sw entries must be >= 0"); break; }
    if (cfg.tables.c_sw < 0) add("config: c_sw must be >= 0");
    return out;
}

std::vector<std::string> validate_design(const CommGraph& ccg, const DesignConfig& cfg,
                                         const Topology& topo, const RoutingSet& routing) {
    std::vector<std::string> out;
    auto add = [&out](const std::string& m) { out.push_back(m); };
    const int n_sw = static_cast<int>(topo.switches.size());

    std::set<std::pair<int, int>> ss(topo.ss_links.begin(), topo.ss_links.end());
    for (const auto& [u, v] : ss) {
        if (u == v) add("ss_link " + std::to_string(u) + "->" + std::to_string(v) + ": self loop");
        if (u < 0 || u >= n_sw || v < 0 || v >= n_sw)
            add("ss_link references missing switch");
    }

    std::set<CsLink> cs(topo.cs_links.begin(), topo.cs_links.end());
    if (routing.paths.size() != ccg.flows.size())
        add("routing: expected one path set per flow");

    std::map<std::pair<int, int>, double> link_load;
    for (size_t fi = 0; fi < routing.paths.size() && fi < ccg.flows.size(); ++fi) {
        const Flow& f = ccg.flows[fi];
        const auto& ps = routing.paths[fi];
        const std::string tag = "flow " + std::to_string(fi);
        if (static_cast<int>(ps.size()) != cfg.k + 1)
            add(tag + ": expected " + std::to_string(cfg.k + 1) + " paths");
        std::set<int> used;
        for (size_t k = 0; k < ps.size(); ++k) {
            const Path& p = ps[k];
            const std::string ptag = tag + " path " + std::to_string(k);
            if (p.empty()) { add(ptag + ": empty"); continue; }
            for (int s : p) {
                if (s < 0 || s >= n_sw) add(ptag + ": missing switch " + std::to_string(s));
                if (!used.insert(s).second)
                    add(tag + ": paths share switch " + std::to_string(s));
            }
            if (static_cast<int>(p.size()) > f.latency_limit)
                add(ptag + ": hop count " + std::to_string(p.size()) + " exceeds limit " +
                    std::to_string(f.latency_limit));
            if (!cs.count({f.src, p.front(), PortKind::CoreToSwitch}))
                add(ptag + ": first switch not linked to source core");
            if (!cs.count({f.dst, p.back(), PortKind::SwitchToCore}))
                add(ptag + ": last switch not linked to sink core");
            for (size_t i = 0; i + 1 < p.size(); ++i) {
                if (!ss.count({p[i], p[i + 1]}))
                    add(ptag + ": missing ss_link " + std::to_string(p[i]) + "->" +
                        std::to_string(p[i + 1]));
                if (k == 0) link_load[{p[i], p[i + 1]}] += f.bandwidth;
            }
        }
    }
    for (const auto& [uv, load] : link_load)
        if (load > cfg.bw_max + 1e-9)
            add("ss_link " + std::to_string(uv.first) + "->" + std::to_string(uv.second) +
                ": default-path load " + std::to_string(load) + " exceeds bw_max");

    PortCounts pc = count_ports(topo, singleton_sharing(ccg, topo));
    for (const auto& [s, ip] : pc.ip)
        if (ip > cfg.max_size)
            add("switch " + std::to_string(s) + ": " + std::to_string(ip) +
                " input ports exceed max_size");
    for (const auto& [s, op] : pc.op)
        if (op > cfg.max_size)
            add("switch " + std::to_string(s) + ": " + std::to_string(op) +
                " output ports exceed max_size");
    return out;
}

PortCounts count_ports(const Topology& topo, const SharingPlan& plan) {
    PortCounts pc;
    for (const auto& s : topo.switches) {
        pc.ip[s.id] = 0;
        pc.op[s.id] = 0;
    }
    for (const auto& [u, v] : topo.ss_links) {
        pc.op[u] += 1;
        pc.ip[v] += 1;
    }
    for (const auto& [s, groups] : plan.inport_groups) pc.ip[s] += static_cast<int>(groups.size());
    for (const auto& [s, groups] : plan.outport_groups) pc.op[s] += static_cast<int>(groups.size());
    return pc;
}

}  // namespace asnoc
