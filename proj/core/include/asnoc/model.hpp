#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace asnoc {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Rectilinear wire distance in mm.
inline double manhattan(const Point& a, const Point& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

struct Core {
    int id = 0;
    std::string name;
    Point pos;
    friend bool operator==(const Core&, const Core&) = default;
};

/// A directed core-to-core traffic requirement.
struct Flow {
    int src = 0;
    int dst = 0;
    double bandwidth = 0.0;   // MB/s
    int latency_limit = 1;    // max number of switches on a path
    friend bool operator==(const Flow&, const Flow&) = default;
};

struct CommGraph {
    std::vector<Core> cores;
    std::vector<Flow> flows;
    friend bool operator==(const CommGraph&, const CommGraph&) = default;
};

/// Power/energy lookup tables. t_sw[i] is the switch power for i input
/// ports (index 0 unused, value 0); mux/demux map device size to total mW.
struct PowerTables {
    std::vector<double> t_sw{0.0};
    double c_sw = 0.0;
    std::map<int, double> mux;
    std::map<int, double> demux;

    /// T_sw with affine extension beyond the last table entry
    /// (slope of the last interval).
    double t_sw_at(int ip) const;

    friend bool operator==(const PowerTables&, const PowerTables&) = default;
};

/// Bundled defaults: a superlinear synthetic switch table plus the stock
/// 32-bit 65nm MUX/DEMUX figures.
PowerTables default_power_tables();

struct DesignConfig {
    int k = 1;                    // fault budget
    int n_sw = 4;                 // initial switch count
    double bw_max = 3000.0;       // per physical link, MB/s
    int max_size = 10;            // max ports per switch side
    double e_bit = 0.5;           // energy per bit per mm
    double c_pl = 0.0;            // cost of opening a new physical link
    int max_switch_growth = 8;    // extra switches tried before giving up
    PowerTables tables = default_power_tables();

    // Sequential-allocation toggles (see routing): charge link traffic for
    // alternative paths in the per-flow objective, and debit their bandwidth.
    bool charge_all_paths = false;
    bool debit_all_paths = false;

    friend bool operator==(const DesignConfig&, const DesignConfig&) = default;
};

struct Switch {
    int id = 0;
    Point pos;
    friend bool operator==(const Switch&, const Switch&) = default;
};

enum class PortKind { CoreToSwitch, SwitchToCore };

/// One core<->switch connection (a core inport or core outport).
struct CsLink {
    int core = 0;
    int sw = 0;
    PortKind dir = PortKind::CoreToSwitch;
    friend bool operator==(const CsLink&, const CsLink&) = default;
    friend auto operator<=>(const CsLink&, const CsLink&) = default;
};

struct Topology {
    std::vector<Switch> switches;
    std::vector<CsLink> cs_links;
    std::vector<std::pair<int, int>> ss_links;  // directed switch->switch

    bool has_ss_link(int u, int v) const;
    friend bool operator==(const Topology&, const Topology&) = default;
};

/// Ordered switch ids; core endpoints are implied by the flow.
/// A single-switch path has length 1; hop count == size().
using Path = std::vector<int>;

struct RoutingSet {
    /// paths[flow_id] holds K+1 pairwise switch-disjoint paths; index 0 is
    /// the default path.
    std::vector<std::vector<Path>> paths;
    friend bool operator==(const RoutingSet&, const RoutingSet&) = default;
};

/// Audit record for a sharing edge dropped during conflict resolution.
struct RemovedSharingEdge {
    int sw = 0;
    PortKind kind = PortKind::CoreToSwitch;
    int core_a = 0;
    int core_b = 0;
    friend bool operator==(const RemovedSharingEdge&, const RemovedSharingEdge&) = default;
};

struct SharingPlan {
    /// Per switch, a partition of the cores owning its core inports
    /// (resp. outports) into merge groups.
    std::map<int, std::vector<std::vector<int>>> inport_groups;
    std::map<int, std::vector<std::vector<int>>> outport_groups;
    std::vector<RemovedSharingEdge> removed_sharing_edges;
    friend bool operator==(const SharingPlan&, const SharingPlan&) = default;
};

/// Trivial plan: every port is a singleton group.
SharingPlan singleton_sharing(const CommGraph& ccg, const Topology& topo);

/// Checks every domain invariant; returns one message per violation.
/// Pure and deterministic; an empty result means the instance is well formed.
std::vector<std::string> validate(const CommGraph& ccg, const DesignConfig& cfg);

/// Structural checks on a synthesized design (used by tests and cmd_verify):
/// per-flow switch-disjointness, latency bounds, link existence, port caps.
std::vector<std::string> validate_design(const CommGraph& ccg, const DesignConfig& cfg,
                                         const Topology& topo, const RoutingSet& routing);

/// Port counts per switch id: ip_u = inbound ss links + core inport groups,
/// op_u = outbound ss links + core outport groups.
struct PortCounts {
    std::map<int, int> ip;
    std::map<int, int> op;
};
PortCounts count_ports(const Topology& topo, const SharingPlan& plan);

}  // namespace asnoc
