#pragma once

#include <stdexcept>

#include "asnoc/model.hpp"

namespace asnoc {

/// Required MUX/DEMUX size is missing from the power tables.
struct UnknownSizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Switch power for one switch: T_sw[ip] + C_sw * op (mW). T_sw extends
/// affinely beyond the table; ip == 0 contributes no table term.
double switch_power(int ip, int op, const PowerTables& tables);

/// Physical-link power (mW): the link-opening cost C_pl for every
/// switch-to-switch link, plus E_bit * w * D over the default-path links of
/// every flow. Core attachments are priced in the mapping wire cost, not here.
double link_power(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                  const DesignConfig& cfg);

/// MUX/DEMUX power (mW): per core a DEMUX fanning out to its switch inports
/// and a MUX collecting its switch outports, plus one MUX (inports) or DEMUX
/// (outports) per merge group of two or more ports. Size-1 fans cost nothing.
/// Throws UnknownSizeError when a size is missing and `extend` is false;
/// otherwise extends affinely from the last table interval.
double interface_power(const Topology& topo, const SharingPlan& plan,
                       const PowerTables& tables, bool extend = false);

struct PowerReport {
    double switch_mw = 0.0;
    double link_mw = 0.0;
    double interface_mw = 0.0;
    double total() const { return switch_mw + link_mw + interface_mw; }
};

/// Full power roll-up for a synthesized design.
PowerReport total_power(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                        const SharingPlan& plan, const DesignConfig& cfg);

}  // namespace asnoc
