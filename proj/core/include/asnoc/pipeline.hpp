#pragma once

#include <optional>
#include <string>

#include "asnoc/json_io.hpp"
#include "asnoc/linkfault.hpp"

namespace asnoc {

enum class SynthMode { General, LinkOnly, Fttg };

struct SynthResult {
    Topology topology;
    RoutingSet routing;
    SharingPlan plan;
    PowerReport power;
    double fttg_energy = -1.0;  // set in Fttg mode only
};

/// End-to-end synthesis: placement + mapping + path allocation with switch
/// growth, then port sharing and cross-switch conflict resolution (General),
/// or the joint link-fault ILP (LinkOnly / Fttg). nullopt when growth is
/// exhausted without a feasible design.
std::optional<SynthResult> synthesize(const CommGraph& ccg, const DesignConfig& cfg,
                                      SynthMode mode, bool sharing_enabled = true);

struct Bundle {
    Project project;
    SynthResult design;
};

/// Writes project.json, topology.json, routing.json, sharing.json and
/// power.json under dir (must exist). Output is byte-stable.
void write_bundle(const std::string& dir, const Project& project, const SynthResult& design);

/// Reads a bundle back; throws ParseError on missing or malformed files.
Bundle read_bundle(const std::string& dir);

}  // namespace asnoc
