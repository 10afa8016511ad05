#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asnoc/model.hpp"
#include "asnoc/optim/clique.hpp"

namespace asnoc {

/// A core inport (CoreToSwitch) or core outport (SwitchToCore) on a switch.
struct PortRef {
    int sw = 0;
    PortKind kind = PortKind::CoreToSwitch;
    int core = 0;
    friend auto operator<=>(const PortRef&, const PortRef&) = default;
};

/// C(IG): maximum matching of the bipartite intersection graph between the
/// two flows' path sets, excluding the paths through the ports under test.
/// Two paths intersect when they share a switch.
int intersection_matching(const std::vector<Path>& f1_paths, const std::vector<Path>& f2_paths,
                          int ip1_path_idx, int ip2_path_idx);

/// (flow id, path index) pairs whose path uses the given port.
std::vector<std::pair<int, int>> flows_through_port(const CommGraph& ccg,
                                                    const RoutingSet& routing,
                                                    const PortRef& port);

/// Pairwise sharing test: every flow pair across the two ports must have
/// C(IG) < K.
bool can_share(const PortRef& a, const PortRef& b, const CommGraph& ccg,
               const RoutingSet& routing, int k);

/// Clique partitioning of one switch's sharing graph: repeated maximum
/// cliques while |clique| > 2, then maximum matching, then singletons.
/// Returns groups of vertex indices covering 0..n-1 exactly once.
std::vector<std::vector<int>> partition_switch_ports(const optim::UGraph& gps);

/// Algorithm-1 sharing for every switch and both port kinds. With k == 0
/// no merging is possible and the plan is all singletons.
SharingPlan compute_sharing(const CommGraph& ccg, const Topology& topo,
                            const RoutingSet& routing, int k);

/// Conflict graph over path vertices: vertex id = flow * (K+1) + k.
/// Type-A edges join paths of the same flow; type-B edges join paths of
/// different flows whose ports sit in the same merge group.
optim::UGraph build_conflict_graph(const CommGraph& ccg, const RoutingSet& routing,
                                   const SharingPlan& plan, int k);

struct FaultSet {
    std::set<int> switches;
    std::set<std::pair<int, int>> links;  // directed ss links
    bool empty() const { return switches.empty() && links.empty(); }
};

struct PathSelection {
    bool ok = false;
    std::map<int, int> chosen;          // flow id -> path index
    std::vector<int> unroutable_flows;  // flows without a surviving choice
};

/// Post-fault path selection: drop paths hit by the fault set, then find an
/// independent set with one path per flow. Prefers the lowest path indices
/// (default paths when nothing failed).
PathSelection select_paths(const CommGraph& ccg, const RoutingSet& routing,
                           const SharingPlan& plan, const Topology& topo,
                           const FaultSet& faults, int k);

/// Algorithm-2 conflict removal across switches: for every K-subset of
/// switches, drop sharing edges (outport edges first) until every flow keeps
/// a selectable path; merge groups are re-split accordingly.
SharingPlan resolve_multi_switch_conflicts(const CommGraph& ccg, const Topology& topo,
                                           const RoutingSet& routing, SharingPlan plan, int k);

}  // namespace asnoc
