// Black-box tests for the command line tool. argv[1] must be the path to
// the built binary; everything runs inside a scratch directory.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_cli;

struct RunResult {
    int exit_code = -1;
    std::string output;  // stdout only
};

RunResult run(const std::string& args) {
    const std::string cmd = g_cli + " " + args;
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fixture(const std::string& name) {
    return std::string(ASNOC_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("synth + verify round trip on a fixture") {
    const std::string out = "cli_bundle";
    std::filesystem::remove_all(out);
    const RunResult s = run("synth " + fixture("ring8.json") + " --k 1 --out " + out +
                            " 2>/dev/null");
    CHECK(s.exit_code == 0);
    for (const char* f :
         {"project.json", "topology.json", "routing.json", "sharing.json", "power.json"})
        CHECK(std::filesystem::exists(out + "/" + f));

    const RunResult v = run("verify " + out + " --mode switches 2>/dev/null");
    CHECK(v.exit_code == 0);
    CHECK(v.output.find("pass") == 0);
    CHECK(v.output.find("fault sets checked") != std::string::npos);
    CHECK(std::filesystem::exists(out + "/verify_report.json"));

    const RunResult mixed = run("verify " + out + " --mode mixed 2>/dev/null");
    CHECK(mixed.exit_code == 0);
}

TEST_CASE("synth is deterministic: byte-identical bundles") {
    std::filesystem::remove_all("cli_det_a");
    std::filesystem::remove_all("cli_det_b");
    CHECK(run("synth " + fixture("ring8.json") + " --k 1 --out cli_det_a 2>/dev/null")
              .exit_code == 0);
    CHECK(run("synth " + fixture("ring8.json") + " --k 1 --out cli_det_b 2>/dev/null")
              .exit_code == 0);
    for (const char* f :
         {"project.json", "topology.json", "routing.json", "sharing.json", "power.json"})
        CHECK(slurp(std::string("cli_det_a/") + f) == slurp(std::string("cli_det_b/") + f));
}

TEST_CASE("export-dot and report read a bundle") {
    const std::string out = "cli_bundle_dot";
    std::filesystem::remove_all(out);
    REQUIRE(run("synth " + fixture("ring8.json") + " --k 1 --out " + out + " 2>/dev/null")
                .exit_code == 0);
    for (const char* view : {"topology", "routing", "gpc"}) {
        const RunResult d = run("export-dot " + out + " --view " + std::string(view) +
                                " 2>/dev/null");
        CHECK(d.exit_code == 0);
        CHECK(d.output.find("graph") != std::string::npos);
    }
    const RunResult rep = run("report " + out + " 2>/dev/null");
    CHECK(rep.exit_code == 0);
    CHECK(rep.output.find("switches:") != std::string::npos);
    CHECK(rep.output.find("power:") != std::string::npos);
}

TEST_CASE("link-only mode synthesizes and passes link-fault verification") {
    const std::string out = "cli_bundle_link";
    std::filesystem::remove_all(out);
    const RunResult s = run("synth " + fixture("ring8.json") + " --mode link-only --k 1 --out " +
                            out + " 2>/dev/null");
    CHECK(s.exit_code == 0);
    const RunResult v = run("verify " + out + " --mode links 2>/dev/null");
    CHECK(v.exit_code == 0);
}

TEST_CASE("bad inputs exit with the input error code") {
    CHECK(run("synth no_such_file.json --out cli_x 2>/dev/null").exit_code == 1);
    CHECK(run("verify no_such_dir 2>/dev/null").exit_code == 1);
    // Malformed project file.
    std::filesystem::create_directories("cli_bad");
    std::ofstream("cli_bad/broken.json") << "{ not json";
    CHECK(run("synth cli_bad/broken.json --out cli_x 2>/dev/null").exit_code == 1);
    // Unknown subcommand / missing arguments.
    CHECK(run("frobnicate 2>/dev/null").exit_code != 0);
    CHECK(run("synth 2>/dev/null").exit_code != 0);
}

TEST_CASE("verify exits 3 when certification fails") {
    // Certify a k=0 design at k=1: single paths cannot survive switch faults.
    const std::string out = "cli_bundle_k0";
    std::filesystem::remove_all(out);
    REQUIRE(run("synth " + fixture("ring8.json") + " --k 0 --out " + out + " 2>/dev/null")
                .exit_code == 0);
    const RunResult v = run("verify " + out + " --k 1 --mode switches 2>/dev/null");
    CHECK(v.exit_code == 3);
    CHECK(v.output.find("FAIL") == 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [doctest args]\n");
        return 1;
    }
    g_cli = argv[1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv + 1);
    return ctx.run();
}
