#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "asnoc/linkfault.hpp"

using namespace asnoc;

namespace {

CommGraph small_graph(int n_core) {
    CommGraph g;
    for (int c = 0; c < n_core; ++c)
        g.cores.push_back({c, "c" + std::to_string(c), {static_cast<double>(c), 0.0}});
    for (int c = 0; c < n_core; ++c)
        g.flows.push_back({c, (c + 1) % n_core, 100.0, 3});
    return g;
}

// Each core must attach to exactly one switch per direction.
void check_attachments(const CommGraph& ccg, const Topology& topo) {
    std::map<int, int> in_cnt, out_cnt;
    for (const CsLink& l : topo.cs_links) {
        if (l.dir == PortKind::CoreToSwitch) ++in_cnt[l.core];
        else ++out_cnt[l.core];
    }
    for (const Core& c : ccg.cores) {
        CHECK(in_cnt[c.id] == 1);
        CHECK(out_cnt[c.id] == 1);
    }
}

// Paths of one flow must be pairwise disjoint on switch-to-switch links and
// consistent with the topology and the flow's attachments.
void check_paths(const CommGraph& ccg, const LinkFaultDesign& d, int k) {
    std::map<std::pair<int, PortKind>, int> attach;
    for (const CsLink& l : d.topology.cs_links) attach[{l.core, l.dir}] = l.sw;
    const std::set<std::pair<int, int>> ss(d.topology.ss_links.begin(),
                                           d.topology.ss_links.end());
    REQUIRE(d.routing.paths.size() == ccg.flows.size());
    for (size_t fi = 0; fi < ccg.flows.size(); ++fi) {
        const Flow& f = ccg.flows[fi];
        REQUIRE(d.routing.paths[fi].size() == size_t(k + 1));
        std::set<std::pair<int, int>> used;
        for (size_t pi = 0; pi < d.routing.paths[fi].size(); ++pi) {
            const Path& p = d.routing.paths[fi][pi];
            REQUIRE(!p.empty());
            CHECK(p.front() == attach.at({f.src, PortKind::CoreToSwitch}));
            CHECK(p.back() == attach.at({f.dst, PortKind::SwitchToCore}));
            for (size_t i = 0; i + 1 < p.size(); ++i) {
                const std::pair<int, int> uv{p[i], p[i + 1]};
                CHECK(ss.count(uv) == 1);
                CHECK(used.insert(uv).second);  // ss-link disjointness
            }
            if (pi == 0) CHECK(static_cast<int>(p.size()) <= f.latency_limit);
        }
    }
}

// Independent survival oracle: under every single ss-link fault, every flow
// keeps at least one path avoiding it.
void check_single_link_survival(const CommGraph& ccg, const LinkFaultDesign& d,
                                bool undirected) {
    for (const auto& [u, v] : d.topology.ss_links) {
        for (size_t fi = 0; fi < ccg.flows.size(); ++fi) {
            bool survives = false;
            for (const Path& p : d.routing.paths[fi]) {
                bool hit = false;
                for (size_t i = 0; i + 1 < p.size(); ++i) {
                    if (p[i] == u && p[i + 1] == v) hit = true;
                    if (undirected && p[i] == v && p[i + 1] == u) hit = true;
                }
                if (!hit) survives = true;
            }
            CHECK(survives);
        }
    }
}

}  // namespace

TEST_CASE("link-fault synthesis, k = 0: everything fits one switch") {
    CommGraph g = small_graph(3);
    DesignConfig cfg;
    cfg.k = 0;
    cfg.max_size = 10;
    const auto d = synth_link_fault(g, 0, cfg, LinkFaultMode::Directed);
    REQUIRE(d.has_value());
    check_attachments(g, d->topology);
    check_paths(g, *d, 0);
    // One switch serves every core; no inter-switch links are needed.
    CHECK(d->topology.switches.size() == 1);
    CHECK(d->topology.ss_links.empty());
    for (const auto& ps : d->routing.paths) CHECK(ps[0].size() == 1);
}

namespace {

// With one core outport per switch (max_size = 2) and two flows into the
// same destination, at least one flow must cross switches, so the k = 1
// design needs genuine disjoint switch-to-switch paths.
CommGraph crossing_graph() {
    CommGraph g;
    g.cores = {{0, "a", {0, 0}}, {1, "b", {1, 0}}, {2, "c", {2, 0}}};
    g.flows = {{0, 1, 100.0, 4}, {2, 1, 80.0, 4}};
    return g;
}

}  // namespace

TEST_CASE("link-fault synthesis, k = 1, directed") {
    CommGraph g = crossing_graph();
    DesignConfig cfg;
    cfg.k = 1;
    cfg.max_size = 2;
    const auto d = synth_link_fault(g, 0, cfg, LinkFaultMode::Directed);
    REQUIRE(d.has_value());
    check_attachments(g, d->topology);
    check_paths(g, *d, 1);
    check_single_link_survival(g, *d, false);
    CHECK(!d->topology.ss_links.empty());
    // Bandwidth cap binds across all paths of all flows on every ss link.
    std::map<std::pair<int, int>, double> load;
    for (size_t fi = 0; fi < g.flows.size(); ++fi)
        for (const Path& p : d->routing.paths[fi])
            for (size_t i = 0; i + 1 < p.size(); ++i)
                load[{p[i], p[i + 1]}] += g.flows[fi].bandwidth;
    for (const auto& [uv, w] : load) CHECK(w <= cfg.bw_max + 1e-9);
}

TEST_CASE("port cap forces the design across switches") {
    CommGraph g;
    g.cores = {{0, "a", {0, 0}}, {1, "b", {1, 0}}};
    g.flows = {{0, 1, 100.0, 3}};
    DesignConfig cfg;
    cfg.k = 1;
    cfg.max_size = 2;  // each switch keeps at most one core inport
    const auto d = synth_link_fault(g, 0, cfg, LinkFaultMode::Directed);
    REQUIRE(d.has_value());
    check_attachments(g, d->topology);
    check_paths(g, *d, 1);
    check_single_link_survival(g, *d, false);
    CHECK(d->topology.switches.size() >= 2);
    // Port caps: core inports per switch <= max_size - 1, plus ss fan-in.
    std::map<int, int> ip, op;
    for (const CsLink& l : d->topology.cs_links) {
        if (l.dir == PortKind::CoreToSwitch) ++ip[l.sw];
        else ++op[l.sw];
    }
    for (const auto& [sw, n] : ip) CHECK(n <= cfg.max_size - 1);
    for (const auto& [u, v] : d->topology.ss_links) {
        ++op[u];
        ++ip[v];
    }
    for (const auto& [sw, n] : ip) CHECK(n <= cfg.max_size);
    for (const auto& [sw, n] : op) CHECK(n <= cfg.max_size);
}

TEST_CASE("fttg mode: links come in undirected pairs and survive link faults") {
    CommGraph g = crossing_graph();
    DesignConfig cfg;
    cfg.k = 1;
    cfg.max_size = 2;
    cfg.max_size = 3;  // undirected links need the extra port headroom
    const auto d = synth_link_fault(g, 0, cfg, LinkFaultMode::Fttg);
    REQUIRE(d.has_value());
    check_attachments(g, d->topology);
    check_paths(g, *d, 1);
    check_single_link_survival(g, *d, true);
    CHECK(!d->topology.ss_links.empty());
    const std::set<std::pair<int, int>> ss(d->topology.ss_links.begin(),
                                           d->topology.ss_links.end());
    for (const auto& [u, v] : ss) CHECK(ss.count({v, u}) == 1);
}

TEST_CASE("energy_fttg sums per-flow link and switch traversals") {
    Topology topo;
    topo.switches = {{0, {0, 0}}, {1, {1, 0}}};
    CommGraph g;
    g.cores = {{0, "a", {0, 0}}, {1, "b", {1, 0}}};
    g.flows = {{0, 1, 100.0, 3}};
    RoutingSet routing;
    // Default path 0 -> 1: L = 3 links (two attachments + one ss hop),
    // R = 2 switches.
    routing.paths = {{{0, 1}}};
    const double e = energy_fttg(topo, g, routing, 2.0, 5.0);
    CHECK(e == doctest::Approx((2 * 2.0 + 3 * 5.0) * 100.0));
    // Single-switch path: L = 2, R = 1.
    routing.paths = {{{0}}};
    CHECK(energy_fttg(topo, g, routing, 2.0, 5.0) ==
          doctest::Approx((1 * 2.0 + 2 * 5.0) * 100.0));
}

TEST_CASE("growth: infeasible fixed size recovers with more switches") {
    CommGraph g;
    g.cores = {{0, "a", {0, 0}}, {1, "b", {1, 0}}};
    g.flows = {{0, 1, 100.0, 4}};
    DesignConfig cfg;
    cfg.k = 0;
    cfg.max_size = 2;
    // One switch can host only a single core inport (max_size - 1).
    CHECK(!synth_link_fault_fixed(g, 1, cfg, LinkFaultMode::Directed).has_value());
    const auto d = synth_link_fault(g, 1, cfg, LinkFaultMode::Directed);
    REQUIRE(d.has_value());
    CHECK(d->topology.switches.size() >= 2);
}

TEST_CASE("link-fault synthesis is deterministic") {
    CommGraph g = small_graph(3);
    DesignConfig cfg;
    cfg.k = 1;
    cfg.max_size = 3;
    const auto a = synth_link_fault(g, 0, cfg, LinkFaultMode::Directed);
    const auto b = synth_link_fault(g, 0, cfg, LinkFaultMode::Directed);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->topology == b->topology);
    CHECK(a->routing == b->routing);
}
