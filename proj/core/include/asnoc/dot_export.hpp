#pragma once

#include <string>

#include "asnoc/model.hpp"

namespace asnoc {

/// Graphviz rendering of the physical topology: cores as boxes, switches as
/// circles, shared port groups annotated on the switch labels.
std::string dot_topology(const CommGraph& ccg, const Topology& topo, const SharingPlan& plan);

/// Topology plus the default routing path of every flow as colored edges.
std::string dot_routing(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing);

/// Path-conflict graph: one node per (flow, path index), conflict edges.
std::string dot_gpc(const CommGraph& ccg, const RoutingSet& routing, const SharingPlan& plan,
                    int k);

}  // namespace asnoc
