#include "asnoc/dot_export.hpp"

#include <sstream>

#include "asnoc/portshare.hpp"

namespace asnoc {

namespace {

std::string group_note(const std::map<int, std::vector<std::vector<int>>>& groups, int sw,
                       const char* tag) {
    auto it = groups.find(sw);
    if (it == groups.end()) return "";
    std::ostringstream ss;
    for (const auto& g : it->second) {
        if (g.size() < 2) continue;
        ss << "\\n" << tag << " {";
        for (size_t i = 0; i < g.size(); ++i) ss << (i ? "," : "") << "c" << g[i];
        ss << "}";
    }
    return ss.str();
}

void emit_nodes(std::ostringstream& out, const CommGraph& ccg, const Topology& topo,
                const SharingPlan* plan) {
    for (const Core& c : ccg.cores)
        out << "  c" << c.id << " [shape=box, label=\"" << c.name << "\"];\n";
    for (const Switch& s : topo.switches) {
        out << "  s" << s.id << " [shape=circle, label=\"s" << s.id;
        if (plan) {
            out << group_note(plan->inport_groups, s.id, "in");
            out << group_note(plan->outport_groups, s.id, "out");
        }
        out << "\"];\n";
    }
}

void emit_links(std::ostringstream& out, const Topology& topo) {
    for (const CsLink& l : topo.cs_links) {
        if (l.dir == PortKind::CoreToSwitch)
            out << "  c" << l.core << " -> s" << l.sw << ";\n";
        else
            out << "  s" << l.sw << " -> c" << l.core << ";\n";
    }
    for (const auto& [u, v] : topo.ss_links) out << "  s" << u << " -> s" << v << ";\n";
}

}  // namespace

std::string dot_topology(const CommGraph& ccg, const Topology& topo, const SharingPlan& plan) {
    std::ostringstream out;
    out << "digraph topology {\n";
    emit_nodes(out, ccg, topo, &plan);
    emit_links(out, topo);
    out << "}\n";
    return out.str();
}

std::string dot_routing(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing) {
    std::ostringstream out;
    out << "digraph routing {\n";
    emit_nodes(out, ccg, topo, nullptr);
    emit_links(out, topo);
    for (size_t f = 0; f < routing.paths.size() && f < ccg.flows.size(); ++f) {
        if (routing.paths[f].empty()) continue;
        const Flow& flow = ccg.flows[f];
        const Path& def = routing.paths[f][0];
        out << "  c" << flow.src << " -> s" << def.front() << " [color=red, label=\"f" << f
            << "\"];\n";
        for (size_t i = 0; i + 1 < def.size(); ++i)
            out << "  s" << def[i] << " -> s" << def[i + 1] << " [color=red, label=\"f" << f
                << "\"];\n";
        out << "  s" << def.back() << " -> c" << flow.dst << " [color=red, label=\"f" << f
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string dot_gpc(const CommGraph& ccg, const RoutingSet& routing, const SharingPlan& plan,
                    int k) {
    const optim::UGraph g = build_conflict_graph(ccg, routing, plan, k);
    const int kp1 = k + 1;
    std::ostringstream out;
    out << "graph gpc {\n";
    for (int v = 0; v < g.size(); ++v)
        out << "  p" << v << " [label=\"f" << v / kp1 << "k" << v % kp1 << "\"];\n";
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (g.has_edge(u, v)) out << "  p" << u << " -- p" << v << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace asnoc
