#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "asnoc/model.hpp"

namespace asnoc {

/// Node-split routing graph: every switch u becomes (u, u') joined by one
/// split edge, so switch-disjointness reduces to edge-disjointness.
struct SplitGraph {
    enum class EdgeType { CsIn, CsOut, Split, Link };
    struct Edge {
        EdgeType type;
        int a = 0;  // CsIn: core, CsOut: switch, Split: switch, Link: switch u
        int b = 0;  // CsIn: switch, CsOut: core, Split: switch, Link: switch v
    };
    int n_sw = 0;
    std::vector<Edge> edges;
    std::vector<bool> sw_present;  // false once pruned

    int count(EdgeType t) const;
};

/// Mutable bookkeeping carried across the sequential per-flow solves.
struct AllocState {
    double bw_max = 0.0;
    std::map<std::pair<int, int>, double> link_load;  // committed traffic per ss link
    std::set<std::pair<int, int>> opened;             // ss links in use
    std::map<int, int> ip, op;                        // current port counts

    double residual(int u, int v) const {
        auto it = link_load.find({u, v});
        return bw_max - (it == link_load.end() ? 0.0 : it->second);
    }
};

SplitGraph build_split_graph(const std::vector<Switch>& switches,
                             const std::vector<CsLink>& cs_links);

AllocState init_alloc_state(const std::vector<Switch>& switches,
                            const std::vector<CsLink>& cs_links, const DesignConfig& cfg);

/// Drops saturated switches (unless attached to f's endpoints) and link
/// edges without enough residual bandwidth for f.
SplitGraph prune_for_flow(const SplitGraph& g, const AllocState& st, const Flow& f,
                          const DesignConfig& cfg);

struct FlowAlloc {
    std::vector<Path> paths;  // K+1, index 0 = default
    double objective = 0.0;   // incremental power objective of the ILP
};

/// Exact ILP for one flow: K+1 switch-disjoint unit paths minimizing the
/// incremental switch power plus per-link costs.
std::optional<FlowAlloc> allocate_flow(const Flow& f, const SplitGraph& g,
                                       const AllocState& st,
                                       const std::vector<Switch>& switches,
                                       const DesignConfig& cfg,
                                       std::string* lp_dump = nullptr);

/// Commits an allocation: opens links, debits default-path bandwidth
/// (all paths when cfg.debit_all_paths), bumps port counts.
void commit_flow(AllocState& st, const Flow& f, const std::vector<Path>& paths,
                 const DesignConfig& cfg);

struct RoutingOutcome {
    Topology topology;
    RoutingSet routing;
};

/// One pass over all flows in descending bandwidth order (ties by flow id)
/// on a fixed switch set; nullopt if any flow is infeasible.
std::optional<RoutingOutcome> allocate_flows(const CommGraph& ccg,
                                             const std::vector<Switch>& switches,
                                             const std::vector<CsLink>& cs_links,
                                             const DesignConfig& cfg);

/// Full pipeline stage: placement + mapping + sequential allocation, growing
/// the switch count by one on failure (up to cfg.max_switch_growth retries).
/// nullopt means growth was exhausted.
std::optional<RoutingOutcome> allocate_all(const CommGraph& ccg, const DesignConfig& cfg);

/// Monolithic exact formulation over all flows at once. Only sensible for
/// tiny instances; serves as an optimality oracle for the sequential mode.
/// Bandwidth binds across all K+1 paths here.
std::optional<RoutingOutcome> allocate_all_exact(const CommGraph& ccg,
                                                 const std::vector<Switch>& switches,
                                                 const std::vector<CsLink>& cs_links,
                                                 const DesignConfig& cfg);

}  // namespace asnoc
