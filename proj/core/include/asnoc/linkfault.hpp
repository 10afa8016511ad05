#pragma once

#include <optional>

#include "asnoc/model.hpp"

namespace asnoc {

enum class LinkFaultMode {
    Directed,  // directed links, switch + link power objective
    Fttg,      // undirected links (d_uv == d_vu), energy objective
};

struct LinkFaultDesign {
    Topology topology;
    RoutingSet routing;
};

/// Per-bit energies used by the Fttg objective (pJ/Kb; link value per mm,
/// all distances fixed at 1 mm in this mode).
struct FttgEnergy {
    double e_r_bit = 3.20;  // per switch traversed
    double e_l_bit = 4.78;  // per link traversed
};

/// Joint core-mapping + routing for the link-fault-only case: one ILP over
/// the complete routing-path graph on `n_sw` switches. Paths of a flow are
/// pairwise disjoint on switch-to-switch links (switch overlap is allowed),
/// each core attaches to exactly one switch per direction, and the default
/// path meets the flow's latency limit. Returns nullopt when infeasible.
std::optional<LinkFaultDesign> synth_link_fault_fixed(const CommGraph& ccg, int n_sw,
                                                      const DesignConfig& cfg,
                                                      LinkFaultMode mode,
                                                      const FttgEnergy& energy = {});

/// Growth wrapper: starts at ceil(n_core / (max_size - 1)) switches — each
/// switch must keep one port free for switch-to-switch links — or at
/// `n_sw_hint` if positive, and adds switches on infeasibility up to
/// cfg.max_switch_growth extras.
std::optional<LinkFaultDesign> synth_link_fault(const CommGraph& ccg, int n_sw_hint,
                                                const DesignConfig& cfg, LinkFaultMode mode,
                                                const FttgEnergy& energy = {});

/// Sum over flows of (R * E_R_bit + L * E_L_bit) * w, where L counts the
/// links on the default path (core attachments included) and R = L - 1
/// counts the switches traversed.
double energy_fttg(const Topology& topo, const CommGraph& ccg, const RoutingSet& routing,
                   double e_r_bit, double e_l_bit);

}  // namespace asnoc
