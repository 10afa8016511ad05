#include "asnoc/portshare.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "asnoc/optim/matching.hpp"

namespace asnoc {

namespace {

// Port used by one path: first switch for inports, last for outports.
PortRef path_port(const Flow& f, const Path& p, PortKind kind) {
    if (kind == PortKind::CoreToSwitch) return {p.front(), kind, f.src};
    return {p.back(), kind, f.dst};
}

bool paths_share_switch(const Path& a, const Path& b) {
    for (int u : a)
        for (int v : b)
            if (u == v) return true;
    return false;
}

}  // namespace

int intersection_matching(const std::vector<Path>& f1_paths, const std::vector<Path>& f2_paths,
                          int ip1_path_idx, int ip2_path_idx) {
    std::vector<const Path*> left, right;
    for (size_t i = 0; i < f1_paths.size(); ++i)
        if (static_cast<int>(i) != ip1_path_idx) left.push_back(&f1_paths[i]);
    for (size_t j = 0; j < f2_paths.size(); ++j)
        if (static_cast<int>(j) != ip2_path_idx) right.push_back(&f2_paths[j]);

    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < left.size(); ++i)
        for (size_t j = 0; j < right.size(); ++j)
            if (paths_share_switch(*left[i], *right[j]))
                edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    return optim::max_bipartite_matching(static_cast<int>(left.size()),
                                         static_cast<int>(right.size()), edges)
        .size;
}

std::vector<std::pair<int, int>> flows_through_port(const CommGraph& ccg,
                                                    const RoutingSet& routing,
                                                    const PortRef& port) {
    std::vector<std::pair<int, int>> out;
    for (size_t fi = 0; fi < ccg.flows.size(); ++fi) {
        const Flow& f = ccg.flows[fi];
        const int core = (port.kind == PortKind::CoreToSwitch) ? f.src : f.dst;
        if (core != port.core) continue;
        const auto& ps = routing.paths[fi];
        for (size_t k = 0; k < ps.size(); ++k) {
            const int s = (port.kind == PortKind::CoreToSwitch) ? ps[k].front() : ps[k].back();
            if (s == port.sw) out.push_back({static_cast<int>(fi), static_cast<int>(k)});
        }
    }
    return out;
}

bool can_share(const PortRef& a, const PortRef& b, const CommGraph& ccg,
               const RoutingSet& routing, int k) {
    const auto through_a = flows_through_port(ccg, routing, a);
    const auto through_b = flows_through_port(ccg, routing, b);
    for (const auto& [f1, k1] : through_a) {
        for (const auto& [f2, k2] : through_b) {
            if (f1 == f2) return false;  // one resource, same flow both sides
            const int c = intersection_matching(routing.paths[f1], routing.paths[f2], k1, k2);
            if (c >= k) return false;
        }
    }
    return true;
}

std::vector<std::vector<int>> partition_switch_ports(const optim::UGraph& gps) {
    const int n = gps.size();
    std::vector<std::vector<int>> groups;
    std::vector<int> remaining;
    for (int v = 0; v < n; ++v) remaining.push_back(v);

    // Phase 1: peel maximum cliques while they have more than two vertices.
    while (remaining.size() > 2) {
        optim::UGraph sub(static_cast<int>(remaining.size()));
        for (size_t i = 0; i < remaining.size(); ++i)
            for (size_t j = i + 1; j < remaining.size(); ++j)
                if (gps.has_edge(remaining[i], remaining[j]))
                    sub.add_edge(static_cast<int>(i), static_cast<int>(j));
        const std::vector<int> clique = max_clique(sub);
        if (clique.size() <= 2) break;
        std::vector<int> group;
        for (int v : clique) group.push_back(remaining[v]);
        groups.push_back(group);
        std::vector<int> rest;
        for (int v : remaining)
            if (std::find(group.begin(), group.end(), v) == group.end()) rest.push_back(v);
        remaining = std::move(rest);
    }
    // Phase 2: pair up what is left with a maximum matching.
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < remaining.size(); ++i)
        for (size_t j = i + 1; j < remaining.size(); ++j)
            if (gps.has_edge(remaining[i], remaining[j]))
                edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    const auto matching =
        optim::max_matching_general(static_cast<int>(remaining.size()), edges);
    std::vector<bool> taken(remaining.size(), false);
    for (const auto& [i, j] : matching.pairs) {
        groups.push_back({remaining[i], remaining[j]});
        taken[i] = taken[j] = true;
    }
    for (size_t i = 0; i < remaining.size(); ++i)
        if (!taken[i]) groups.push_back({remaining[i]});
    for (auto& g : groups) std::sort(g.begin(), g.end());
    std::sort(groups.begin(), groups.end());
    return groups;
}

namespace {

using RemovedKey = std::tuple<int, PortKind, int, int>;  // sw, kind, core_a <= core_b

RemovedKey removed_key(int sw, PortKind kind, int a, int b) {
    return {sw, kind, std::min(a, b), std::max(a, b)};
}

SharingPlan build_plan(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                       int k, const std::set<RemovedKey>& removed) {
    SharingPlan plan;
    for (const Switch& s : topo.switches) {
        for (PortKind kind : {PortKind::CoreToSwitch, PortKind::SwitchToCore}) {
            std::vector<int> cores;
            for (const CsLink& l : topo.cs_links)
                if (l.sw == s.id && l.dir == kind) cores.push_back(l.core);
            if (cores.empty()) continue;
            std::sort(cores.begin(), cores.end());
            optim::UGraph gps(static_cast<int>(cores.size()));
            for (size_t i = 0; i < cores.size(); ++i) {
                for (size_t j = i + 1; j < cores.size(); ++j) {
                    if (removed.count(removed_key(s.id, kind, cores[i], cores[j]))) continue;
                    const PortRef a{s.id, kind, cores[i]};
                    const PortRef b{s.id, kind, cores[j]};
                    if (can_share(a, b, ccg, routing, k))
                        gps.add_edge(static_cast<int>(i), static_cast<int>(j));
                }
            }
            std::vector<std::vector<int>> groups;
            for (const auto& g : partition_switch_ports(gps)) {
                std::vector<int> group;
                for (int v : g) group.push_back(cores[v]);
                groups.push_back(group);
            }
            auto& slot = (kind == PortKind::CoreToSwitch) ? plan.inport_groups[s.id]
                                                          : plan.outport_groups[s.id];
            slot = std::move(groups);
        }
    }
    return plan;
}

}  // namespace

SharingPlan compute_sharing(const CommGraph& ccg, const Topology& topo,
                            const RoutingSet& routing, int k) {
    return build_plan(ccg, topo, routing, k, {});
}

int path_stride(const CommGraph& ccg, const RoutingSet& routing, int k) {
    // A routing set may hold more (or fewer) than K+1 paths per flow when a
    // design is certified at a K other than the one it was synthesized for;
    // vertex indexing must cover whichever is larger.
    size_t stride = static_cast<size_t>(k) + 1;
    for (size_t fi = 0; fi < ccg.flows.size() && fi < routing.paths.size(); ++fi)
        stride = std::max(stride, routing.paths[fi].size());
    return static_cast<int>(stride);
}

optim::UGraph build_conflict_graph(const CommGraph& ccg, const RoutingSet& routing,
                                   const SharingPlan& plan, int k) {
    const int kp1 = path_stride(ccg, routing, k);
    const int n = static_cast<int>(ccg.flows.size()) * kp1;
    optim::UGraph g(n);
    for (size_t fi = 0; fi < ccg.flows.size(); ++fi) {
        const int avail = std::min<int>(kp1, static_cast<int>(routing.paths[fi].size()));
        for (int k1 = 0; k1 < avail; ++k1)
            for (int k2 = k1 + 1; k2 < avail; ++k2)
                g.add_edge(static_cast<int>(fi) * kp1 + k1, static_cast<int>(fi) * kp1 + k2);
    }

    auto add_group_conflicts = [&](PortKind kind, int sw, const std::vector<int>& group) {
        if (group.size() < 2) return;
        std::vector<std::tuple<int, int, int>> users;  // flow, path k, core
        for (int core : group)
            for (const auto& [fi, kk] : flows_through_port(ccg, routing, {sw, kind, core}))
                users.push_back({fi, kk, core});
        for (size_t i = 0; i < users.size(); ++i) {
            for (size_t j = i + 1; j < users.size(); ++j) {
                const auto& [f1, k1, c1] = users[i];
                const auto& [f2, k2, c2] = users[j];
                if (f1 == f2 || c1 == c2) continue;
                g.add_edge(f1 * kp1 + k1, f2 * kp1 + k2);
            }
        }
    };
    for (const auto& [sw, groups] : plan.inport_groups)
        for (const auto& grp : groups) add_group_conflicts(PortKind::CoreToSwitch, sw, grp);
    for (const auto& [sw, groups] : plan.outport_groups)
        for (const auto& grp : groups) add_group_conflicts(PortKind::SwitchToCore, sw, grp);
    return g;
}

PathSelection select_paths(const CommGraph& ccg, const RoutingSet& routing,
                           const SharingPlan& plan, const Topology& topo,
                           const FaultSet& faults, int k) {
    const int kp1 = path_stride(ccg, routing, k);
    const int n_flows = static_cast<int>(ccg.flows.size());
    const optim::UGraph gpc = build_conflict_graph(ccg, routing, plan, k);

    std::vector<int> alive;  // surviving path vertices, ascending
    for (int fi = 0; fi < n_flows; ++fi) {
        const int avail = std::min(kp1, static_cast<int>(routing.paths[fi].size()));
        for (int kk = 0; kk < avail; ++kk) {
            const Path& p = routing.paths[fi][kk];
            bool dead = false;
            for (int s : p)
                if (faults.switches.count(s)) { dead = true; break; }
            for (size_t i = 0; !dead && i + 1 < p.size(); ++i)
                if (faults.links.count({p[i], p[i + 1]})) dead = true;
            if (!dead) alive.push_back(fi * kp1 + kk);
        }
    }
    optim::UGraph sub(static_cast<int>(alive.size()));
    for (size_t i = 0; i < alive.size(); ++i)
        for (size_t j = i + 1; j < alive.size(); ++j)
            if (gpc.has_edge(alive[i], alive[j]))
                sub.add_edge(static_cast<int>(i), static_cast<int>(j));

    const std::vector<int> ind = alive.empty() ? std::vector<int>{}
                                               : optim::max_independent_set(sub);
    PathSelection sel;
    for (int v : ind) {
        const int vertex = alive[v];
        sel.chosen[vertex / kp1] = vertex % kp1;
    }
    for (int fi = 0; fi < n_flows; ++fi)
        if (!sel.chosen.count(fi)) sel.unroutable_flows.push_back(fi);
    sel.ok = sel.unroutable_flows.empty();
    return sel;
}

SharingPlan resolve_multi_switch_conflicts(const CommGraph& ccg, const Topology& topo,
                                           const RoutingSet& routing, SharingPlan plan, int k) {
    std::set<RemovedKey> removed;
    for (const auto& e : plan.removed_sharing_edges)
        removed.insert(removed_key(e.sw, e.kind, e.core_a, e.core_b));

    const int n_sw = static_cast<int>(topo.switches.size());
    std::vector<int> subset;
    // Re-partitioning after an edge removal can regroup ports anywhere, so a
    // fix for one fault subset may undo an earlier one; sweep all subsets
    // until a full pass needs no removals (monotone, hence terminating).
    bool changed = false;
    // Enumerate every switch subset of size exactly K in lexicographic order.
    std::function<void(int)> visit = [&](int start) {
        if (static_cast<int>(subset.size()) == k) {
            FaultSet faults;
            faults.switches.insert(subset.begin(), subset.end());
            while (true) {
                const PathSelection sel = select_paths(ccg, routing, plan, topo, faults, k);
                if (sel.ok) break;
                const int flow = sel.unroutable_flows.front();

                // Candidate sharing edges touching this flow's ports:
                // outport edges first, then lowest (switch, partner core).
                std::optional<RemovedSharingEdge> pick;
                auto consider = [&](PortKind kind, int sw, const std::vector<int>& group,
                                    int flow_core) {
                    if (group.size() < 2) return;
                    if (std::find(group.begin(), group.end(), flow_core) == group.end()) return;
                    for (int other : group) {
                        if (other == flow_core) continue;
                        RemovedSharingEdge e{sw, kind, std::min(flow_core, other),
                                             std::max(flow_core, other)};
                        if (!pick) { pick = e; continue; }
                        const auto rank = [](const RemovedSharingEdge& r) {
                            return std::make_tuple(r.kind == PortKind::CoreToSwitch ? 1 : 0,
                                                   r.sw, r.core_a, r.core_b);
                        };
                        if (rank(e) < rank(*pick)) pick = e;
                    }
                };
                const Flow& f = ccg.flows[flow];
                for (const auto& [sw, groups] : plan.outport_groups)
                    for (const auto& grp : groups)
                        consider(PortKind::SwitchToCore, sw, grp, f.dst);
                for (const auto& [sw, groups] : plan.inport_groups)
                    for (const auto& grp : groups)
                        consider(PortKind::CoreToSwitch, sw, grp, f.src);
                if (!pick) break;  // nothing left to unshare for this flow

                removed.insert(removed_key(pick->sw, pick->kind, pick->core_a, pick->core_b));
                auto audit = plan.removed_sharing_edges;
                plan = build_plan(ccg, topo, routing, k, removed);
                audit.push_back(*pick);
                plan.removed_sharing_edges = std::move(audit);
                changed = true;
            }
            return;
        }
        for (int s = start; s < n_sw; ++s) {
            subset.push_back(s);
            visit(s + 1);
            subset.pop_back();
        }
    };
    do {
        changed = false;
        visit(0);
    } while (changed);
    return plan;
}

}  // namespace asnoc
