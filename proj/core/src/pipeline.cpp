#include "asnoc/pipeline.hpp"

#include "asnoc/portshare.hpp"
#include "asnoc/routing.hpp"

namespace asnoc {

std::optional<SynthResult> synthesize(const CommGraph& ccg, const DesignConfig& cfg,
                                      SynthMode mode, bool sharing_enabled) {
    SynthResult out;
    if (mode == SynthMode::General) {
        const auto routed = allocate_all(ccg, cfg);
        if (!routed) return std::nullopt;
        out.topology = routed->topology;
        out.routing = routed->routing;
        if (sharing_enabled && cfg.k > 0) {
            SharingPlan plan = compute_sharing(ccg, out.topology, out.routing, cfg.k);
            out.plan = resolve_multi_switch_conflicts(ccg, out.topology, out.routing,
                                                      std::move(plan), cfg.k);
        } else {
            out.plan = singleton_sharing(ccg, out.topology);
        }
    } else {
        const LinkFaultMode lf =
            (mode == SynthMode::Fttg) ? LinkFaultMode::Fttg : LinkFaultMode::Directed;
        // Switch count starts from the port-budget formula, not the general
        // pipeline's n_sw knob: the joint ILP grows on infeasibility anyway.
        const auto design = synth_link_fault(ccg, 0, cfg, lf);
        if (!design) return std::nullopt;
        out.topology = design->topology;
        out.routing = design->routing;
        out.plan = singleton_sharing(ccg, out.topology);
        if (mode == SynthMode::Fttg) {
            const FttgEnergy e;
            out.fttg_energy = energy_fttg(out.topology, ccg, out.routing, e.e_r_bit, e.e_l_bit);
        }
    }
    out.power = total_power(ccg, out.topology, out.routing, out.plan, cfg);
    return out;
}

void write_bundle(const std::string& dir, const Project& project, const SynthResult& design) {
    write_file(dir + "/project.json", write_project(project));
    write_file(dir + "/topology.json", write_topology(design.topology));
    write_file(dir + "/routing.json", write_routing(design.routing));
    write_file(dir + "/sharing.json", write_sharing(design.plan));
    write_file(dir + "/power.json", write_power(design.power, design.fttg_energy));
}

Bundle read_bundle(const std::string& dir) {
    Bundle b;
    b.project = read_project(read_file(dir + "/project.json"));
    b.design.topology = read_topology(read_file(dir + "/topology.json"));
    b.design.routing = read_routing(read_file(dir + "/routing.json"));
    b.design.plan = read_sharing(read_file(dir + "/sharing.json"));
    return b;
}

}  // namespace asnoc
