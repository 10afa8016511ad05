#include "asnoc/power.hpp"

#include <map>
#include <string>

namespace asnoc {

double switch_power(int ip, int op, const PowerTables& tables) {
    const double table = (ip > 0) ? tables.t_sw_at(ip) : 0.0;
    return table + tables.c_sw * op;
}

double link_power(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                  const DesignConfig& cfg) {
    double total = cfg.c_pl * static_cast<double>(topo.ss_links.size());
    std::map<int, Point> sw_pos;
    for (const Switch& s : topo.switches) sw_pos[s.id] = s.pos;
    for (size_t f = 0; f < ccg.flows.size(); ++f) {
        if (f >= routing.paths.size() || routing.paths[f].empty()) continue;
        const Path& def = routing.paths[f][0];
        for (size_t i = 0; i + 1 < def.size(); ++i)
            total += cfg.e_bit * ccg.flows[f].bandwidth *
                     manhattan(sw_pos.at(def[i]), sw_pos.at(def[i + 1]));
    }
    return total;
}

namespace {

double device_cost(const std::map<int, double>& table, int size, bool extend,
                   const char* what) {
    if (size <= 1) return 0.0;
    if (auto it = table.find(size); it != table.end()) return it->second;
    if (!extend || table.size() < 2)
        throw UnknownSizeError(std::string(what) + " size " + std::to_string(size) +
                               " not in power tables");
    // Affine extension: slope of the last table interval.
    auto last = std::prev(table.end());
    auto before = std::prev(last);
    const double slope = (last->second - before->second) /
                         static_cast<double>(last->first - before->first);
    return last->second + slope * static_cast<double>(size - last->first);
}

}  // namespace

double interface_power(const Topology& topo, const SharingPlan& plan,
                       const PowerTables& tables, bool extend) {
    double total = 0.0;
    // Core-side devices: fan-out of the core output (DEMUX) and fan-in of
    // the core input (MUX) across its switch attachments.
    std::map<int, int> out_fan, in_fan;
    for (const CsLink& l : topo.cs_links)
        (l.dir == PortKind::CoreToSwitch ? out_fan : in_fan)[l.core] += 1;
    for (const auto& [core, fan] : out_fan) total += device_cost(tables.demux, fan, extend, "demux");
    for (const auto& [core, fan] : in_fan) total += device_cost(tables.mux, fan, extend, "mux");
    // Switch-side devices: one MUX per shared inport group, one DEMUX per
    // shared outport group.
    for (const auto& [sw, groups] : plan.inport_groups)
        for (const auto& g : groups)
            total += device_cost(tables.mux, static_cast<int>(g.size()), extend, "mux");
    for (const auto& [sw, groups] : plan.outport_groups)
        for (const auto& g : groups)
            total += device_cost(tables.demux, static_cast<int>(g.size()), extend, "demux");
    return total;
}

PowerReport total_power(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                        const SharingPlan& plan, const DesignConfig& cfg) {
    PowerReport r;
    const PortCounts ports = count_ports(topo, plan);
    for (const Switch& s : topo.switches) {
        const int ip = ports.ip.count(s.id) ? ports.ip.at(s.id) : 0;
        const int op = ports.op.count(s.id) ? ports.op.at(s.id) : 0;
        if (ip == 0 && op == 0) continue;
        r.switch_mw += switch_power(ip, op, cfg.tables);
    }
    r.link_mw = link_power(ccg, topo, routing, cfg);
    r.interface_mw = interface_power(topo, plan, cfg.tables, /*extend=*/true);
    return r;
}

}  // namespace asnoc
