#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "asnoc/dot_export.hpp"
#include "asnoc/pipeline.hpp"
#include "asnoc/portshare.hpp"
#include "asnoc/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerifyFailed = 3;

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("ASNOC_SEED")) return std::strtoull(env, nullptr, 10);
    return cli_seed;
}

int cmd_synth(const std::string& input, const std::string& mode_name, int k_override,
              const std::string& out_dir, bool sharing) {
    asnoc::Project project;
    try {
        project = asnoc::read_project(asnoc::read_file(input));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    if (k_override >= 0) project.cfg.k = k_override;
    const auto problems = asnoc::validate(project.ccg, project.cfg);
    if (!problems.empty()) {
        for (const auto& p : problems) std::cerr << "error: " << p << "\n";
        return kExitInput;
    }
    asnoc::SynthMode mode = asnoc::SynthMode::General;
    if (mode_name == "link-only") mode = asnoc::SynthMode::LinkOnly;
    else if (mode_name == "fttg") mode = asnoc::SynthMode::Fttg;
    else if (mode_name != "general") {
        std::cerr << "error: unknown mode " << mode_name << "\n";
        return kExitInput;
    }
    const auto result = asnoc::synthesize(project.ccg, project.cfg, mode, sharing);
    if (!result) {
        std::cerr << "error: synthesis infeasible (switch growth exhausted)\n";
        return kExitInfeasible;
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        std::cerr << "error: cannot create " << out_dir << ": " << ec.message() << "\n";
        return kExitInput;
    }
    asnoc::write_bundle(out_dir, project, *result);
    return kExitOk;
}

int cmd_verify(const std::string& dir, int k_override, const std::string& mode_name,
               long long sample_limit, std::uint64_t seed) {
    asnoc::Bundle bundle;
    try {
        bundle = asnoc::read_bundle(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    asnoc::FaultMode mode = asnoc::FaultMode::Mixed;
    if (mode_name == "switches") mode = asnoc::FaultMode::Switches;
    else if (mode_name == "links") mode = asnoc::FaultMode::Links;
    else if (mode_name != "mixed") {
        std::cerr << "error: unknown fault mode " << mode_name << "\n";
        return kExitInput;
    }
    const int k = (k_override >= 0) ? k_override : bundle.project.cfg.k;
    const asnoc::VerifyReport report =
        asnoc::verify(bundle.project.ccg, bundle.design.topology, bundle.design.routing,
                      bundle.design.plan, k, mode, sample_limit, seed);
    asnoc::write_file(dir + "/verify_report.json", asnoc::write_verify_report(report));
    std::cout << (report.pass ? "pass" : "FAIL") << " (" << report.checked
              << " fault sets checked)\n";
    return report.pass ? kExitOk : kExitVerifyFailed;
}

int cmd_export_dot(const std::string& dir, const std::string& view) {
    asnoc::Bundle bundle;
    try {
        bundle = asnoc::read_bundle(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const auto& b = bundle;
    if (view == "topology")
        std::cout << asnoc::dot_topology(b.project.ccg, b.design.topology, b.design.plan);
    else if (view == "routing")
        std::cout << asnoc::dot_routing(b.project.ccg, b.design.topology, b.design.routing);
    else if (view == "gpc")
        std::cout << asnoc::dot_gpc(b.project.ccg, b.design.routing, b.design.plan,
                                    b.project.cfg.k);
    else {
        std::cerr << "error: unknown view " << view << "\n";
        return kExitInput;
    }
    return kExitOk;
}

int cmd_report(const std::string& dir) {
    asnoc::Bundle bundle;
    try {
        bundle = asnoc::read_bundle(dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    const auto& b = bundle;
    const asnoc::SharingPlan baseline =
        asnoc::singleton_sharing(b.project.ccg, b.design.topology);
    const asnoc::PortCounts before = asnoc::count_ports(b.design.topology, baseline);
    const asnoc::PortCounts after = asnoc::count_ports(b.design.topology, b.design.plan);
    auto total = [](const std::map<int, int>& m) {
        int t = 0;
        for (const auto& [_, v] : m) t += v;
        return t;
    };
    const asnoc::PowerReport power = asnoc::total_power(
        b.project.ccg, b.design.topology, b.design.routing, b.design.plan, b.project.cfg);
    std::cout << "switches:        " << b.design.topology.switches.size() << "\n"
              << "ss links:        " << b.design.topology.ss_links.size() << "\n"
              << "core links:      " << b.design.topology.cs_links.size() << "\n"
              << "inports  (no sharing / shared): " << total(before.ip) << " / "
              << total(after.ip) << "\n"
              << "outports (no sharing / shared): " << total(before.op) << " / "
              << total(after.op) << "\n"
              << "power: switch " << power.switch_mw << " mW, link " << power.link_mw
              << " mW, interface " << power.interface_mw << " mW, total " << power.total()
              << " mW\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"K-fault-tolerant application-specific NoC topology synthesis"};
    app.require_subcommand(1);

    std::string input, out_dir, bundle_dir, mode = "general", fault_mode = "mixed",
                view = "topology";
    int k_override = -1;
    long long sample_limit = 200000;
    std::uint64_t seed = 0;
    bool no_sharing = false;

    auto* synth = app.add_subcommand("synth", "Synthesize a fault-tolerant topology");
    synth->add_option("input", input, "project.json path")->required();
    synth->add_option("--mode", mode, "general | link-only | fttg");
    synth->add_option("--k", k_override, "override the fault budget K");
    synth->add_option("--out", out_dir, "output bundle directory")->required();
    synth->add_flag("--no-sharing", no_sharing, "skip port sharing");
    synth->add_option("--seed", seed, "random seed (env ASNOC_SEED overrides)");

    auto* verify = app.add_subcommand("verify", "Fault-injection certification of a bundle");
    verify->add_option("bundle", bundle_dir, "bundle directory")->required();
    verify->add_option("--k", k_override, "fault budget to certify");
    verify->add_option("--mode", fault_mode, "switches | links | mixed");
    verify->add_option("--sample-limit", sample_limit, "max fault sets before sampling");
    verify->add_option("--seed", seed, "sampling seed (env ASNOC_SEED overrides)");

    auto* exp = app.add_subcommand("export-dot", "Render a bundle as Graphviz DOT");
    exp->add_option("bundle", bundle_dir, "bundle directory")->required();
    exp->add_option("--view", view, "topology | routing | gpc");

    auto* rep = app.add_subcommand("report", "Summarize a bundle");
    rep->add_option("bundle", bundle_dir, "bundle directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(input, mode, k_override, out_dir, !no_sharing);
        if (verify->parsed())
            return cmd_verify(bundle_dir, k_override, fault_mode, sample_limit,
                              effective_seed(seed));
        if (exp->parsed()) return cmd_export_dot(bundle_dir, view);
        if (rep->parsed()) return cmd_report(bundle_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
