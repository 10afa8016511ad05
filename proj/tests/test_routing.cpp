#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "asnoc/mapping.hpp"
#include "asnoc/routing.hpp"

using namespace asnoc;

namespace {

struct Instance {
    CommGraph ccg;
    std::vector<Switch> switches;
    std::vector<CsLink> cs_links;
    DesignConfig cfg;
    Flow flow;
};

Instance random_instance(std::mt19937_64& rng) {
    Instance in;
    std::uniform_real_distribution<double> pos(0.0, 6.0);
    const int n_core = 2 + static_cast<int>(rng() % 3);
    in.cfg.k = 1 + static_cast<int>(rng() % 2);
    // Keep enough switches around for k+1 disjoint paths to usually exist.
    const int n_sw = in.cfg.k + 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < n_core; ++c)
        in.ccg.cores.push_back({c, "c" + std::to_string(c), {pos(rng), pos(rng)}});
    for (int s = 0; s < n_sw; ++s)
        in.switches.push_back({s, {pos(rng), pos(rng)}});
    // Each core attaches to a random nonempty switch subset per direction.
    for (int c = 0; c < n_core; ++c) {
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<int> sws;
            for (int s = 0; s < n_sw; ++s)
                if (rng() % 4 != 0) sws.push_back(s);
            if (sws.empty()) sws.push_back(static_cast<int>(rng() % n_sw));
            for (int s : sws)
                in.cs_links.push_back(
                    {c, s, dir ? PortKind::SwitchToCore : PortKind::CoreToSwitch});
        }
    }
    in.flow.src = 0;
    in.flow.dst = 1;
    in.flow.bandwidth = 50.0 + static_cast<double>(rng() % 200);
    in.flow.latency_limit = 2 + static_cast<int>(rng() % 2);
    in.ccg.flows.push_back(in.flow);
    return in;
}

// All simple switch paths from a src-attached to a dst-attached switch of
// hop count <= the latency limit.
std::vector<Path> enumerate_paths(const Instance& in) {
    const int n_sw = static_cast<int>(in.switches.size());
    std::set<int> starts, ends;
    for (const CsLink& l : in.cs_links) {
        if (l.dir == PortKind::CoreToSwitch && l.core == in.flow.src) starts.insert(l.sw);
        if (l.dir == PortKind::SwitchToCore && l.core == in.flow.dst) ends.insert(l.sw);
    }
    std::vector<Path> out;
    Path cur;
    std::vector<bool> used(n_sw, false);
    std::function<void(int)> dfs = [&](int s) {
        cur.push_back(s);
        used[s] = true;
        if (ends.count(s)) out.push_back(cur);
        if (static_cast<int>(cur.size()) < in.flow.latency_limit)
            for (int t = 0; t < n_sw; ++t)
                if (!used[t]) dfs(t);
        used[s] = false;
        cur.pop_back();
    };
    for (int s : starts) dfs(s);
    return out;
}

// Objective of one unordered disjoint path set under a fresh allocation
// state: link-open costs, exact input-port power steps, and the traffic
// cost of the cheapest member (which the solver makes the default path).
double set_objective(const Instance& in, const AllocState& st,
                     const std::vector<const Path*>& set, bool* ok) {
    *ok = true;
    std::set<std::pair<int, int>> links;
    for (const Path* p : set)
        for (size_t i = 0; i + 1 < p->size(); ++i) links.insert({(*p)[i], (*p)[i + 1]});
    std::map<int, int> new_in, new_out;
    for (const auto& [u, v] : links) {
        ++new_out[u];
        ++new_in[v];
    }
    for (const auto& [v, n] : new_in)
        if (st.ip.at(v) + n > in.cfg.max_size) *ok = false;
    for (const auto& [u, n] : new_out)
        if (st.op.at(u) + n > in.cfg.max_size) *ok = false;
    if (!*ok) return 0.0;

    double cost = static_cast<double>(links.size()) * (in.cfg.c_pl + in.cfg.tables.c_sw);
    for (const auto& [v, n] : new_in)
        cost += in.cfg.tables.t_sw_at(st.ip.at(v) + n) - in.cfg.tables.t_sw_at(st.ip.at(v));
    double traffic = -1.0;
    for (const Path* p : set) {
        double t = 0.0;
        for (size_t i = 0; i + 1 < p->size(); ++i)
            t += in.cfg.e_bit * in.flow.bandwidth *
                 manhattan(in.switches[(*p)[i]].pos, in.switches[(*p)[i + 1]].pos);
        if (traffic < 0 || t < traffic) traffic = t;
    }
    return cost + traffic;
}

bool pairwise_disjoint(const std::vector<const Path*>& set) {
    std::set<int> seen;
    for (const Path* p : set)
        for (int s : *p)
            if (!seen.insert(s).second) return false;
    return true;
}

double brute_force_flow_alloc(const Instance& in, const AllocState& st, bool* feasible) {
    const std::vector<Path> all = enumerate_paths(in);
    const int need = in.cfg.k + 1;
    double best = 0.0;
    *feasible = false;
    std::vector<const Path*> set;
    std::function<void(size_t)> rec = [&](size_t from) {
        if (static_cast<int>(set.size()) == need) {
            if (!pairwise_disjoint(set)) return;
            bool ok = false;
            const double c = set_objective(in, st, set, &ok);
            if (!ok) return;
            if (!*feasible || c < best) best = c;
            *feasible = true;
            return;
        }
        for (size_t i = from; i < all.size(); ++i) {
            set.push_back(&all[i]);
            rec(i + 1);
            set.pop_back();
        }
    };
    rec(0);
    return best;
}

}  // namespace

TEST_CASE("allocate_flow: optimal against exhaustive path-set enumeration") {
    std::mt19937_64 rng(2024);
    int feasible_seen = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Instance in = random_instance(rng);
        const SplitGraph g = build_split_graph(in.switches, in.cs_links);
        const AllocState st = init_alloc_state(in.switches, in.cs_links, in.cfg);
        const SplitGraph pruned = prune_for_flow(g, st, in.flow, in.cfg);

        bool feasible = false;
        const double expect = brute_force_flow_alloc(in, st, &feasible);
        const auto got = allocate_flow(in.flow, pruned, st, in.switches, in.cfg);
        REQUIRE(got.has_value() == feasible);
        if (!feasible) continue;
        ++feasible_seen;
        CHECK(got->objective == doctest::Approx(expect).epsilon(1e-7));
        // Structure: K+1 switch-disjoint paths within the latency bound.
        REQUIRE(got->paths.size() == size_t(in.cfg.k + 1));
        std::set<int> seen;
        for (const Path& p : got->paths) {
            CHECK(!p.empty());
            CHECK(static_cast<int>(p.size()) <= in.flow.latency_limit);
            for (int s : p) CHECK(seen.insert(s).second);
        }
    }
    CHECK(feasible_seen >= 10);
}

TEST_CASE("commit_flow debits default-path bandwidth and opens links") {
    DesignConfig cfg;
    cfg.k = 1;
    std::vector<Switch> switches = {{0, {0, 0}}, {1, {1, 0}}, {2, {2, 0}}};
    std::vector<CsLink> cs;
    AllocState st = init_alloc_state(switches, cs, cfg);
    Flow f{0, 1, 100.0, 3};
    commit_flow(st, f, {{0, 1}, {2}}, cfg);
    CHECK(st.opened.count({0, 1}) == 1);
    CHECK(st.link_load.at({0, 1}) == doctest::Approx(100.0));
    CHECK(st.op.at(0) == 1);
    CHECK(st.ip.at(1) == 1);
    // Alternative paths do not debit bandwidth by default.
    CHECK(st.link_load.size() == 1);
    // Re-using an opened link does not add new ports.
    commit_flow(st, f, {{0, 1}, {2}}, cfg);
    CHECK(st.op.at(0) == 1);
    CHECK(st.link_load.at({0, 1}) == doctest::Approx(200.0));
}

TEST_CASE("prune_for_flow drops saturated links") {
    DesignConfig cfg;
    cfg.k = 0;
    cfg.bw_max = 100.0;
    std::vector<Switch> switches = {{0, {0, 0}}, {1, {1, 0}}};
    std::vector<CsLink> cs = {{0, 0, PortKind::CoreToSwitch}, {1, 1, PortKind::SwitchToCore}};
    const SplitGraph g = build_split_graph(switches, cs);
    AllocState st = init_alloc_state(switches, cs, cfg);
    st.link_load[{0, 1}] = 80.0;
    Flow f{0, 1, 30.0, 3};
    const SplitGraph pruned = prune_for_flow(g, st, f, cfg);
    for (const auto& e : pruned.edges)
        CHECK(!(e.type == SplitGraph::EdgeType::Link && e.a == 0 && e.b == 1));
    // A lighter flow keeps the link.
    Flow f2{0, 1, 10.0, 3};
    const SplitGraph kept = prune_for_flow(g, st, f2, cfg);
    bool found = false;
    for (const auto& e : kept.edges)
        if (e.type == SplitGraph::EdgeType::Link && e.a == 0 && e.b == 1) found = true;
    CHECK(found);
}

TEST_CASE("allocate_flows produces a structurally valid design") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> pos(0.0, 6.0);
    CommGraph ccg;
    for (int c = 0; c < 6; ++c)
        ccg.cores.push_back({c, "c" + std::to_string(c), {pos(rng), pos(rng)}});
    for (int c = 0; c < 6; ++c)
        ccg.flows.push_back({c, (c + 1) % 6, 100.0 + 10.0 * c, 4});
    DesignConfig cfg;
    cfg.k = 1;
    cfg.n_sw = 4;

    const auto outcome = allocate_all(ccg, cfg);
    REQUIRE(outcome.has_value());
    CHECK(validate_design(ccg, cfg, outcome->topology, outcome->routing).empty());

    SUBCASE("deterministic across runs") {
        const auto again = allocate_all(ccg, cfg);
        REQUIRE(again.has_value());
        CHECK(outcome->topology == again->topology);
        CHECK(outcome->routing == again->routing);
    }
}

TEST_CASE("allocate_all_exact agrees with the sequential pass on a tiny instance") {
    CommGraph ccg;
    ccg.cores = {{0, "a", {0, 0}}, {1, "b", {4, 0}}, {2, "c", {2, 3}}};
    ccg.flows = {{0, 1, 200.0, 3}, {1, 2, 150.0, 3}};
    DesignConfig cfg;
    cfg.k = 1;
    cfg.n_sw = 3;
    const auto switches = place_switches(ccg, 3);
    const auto links = map_cores_both(ccg, switches, cfg);
    REQUIRE(links.has_value());
    const auto seq = allocate_flows(ccg, switches, *links, cfg);
    const auto exact = allocate_all_exact(ccg, switches, *links, cfg);
    REQUIRE(seq.has_value());
    REQUIRE(exact.has_value());
    CHECK(validate_design(ccg, cfg, seq->topology, seq->routing).empty());
    CHECK(validate_design(ccg, cfg, exact->topology, exact->routing).empty());
}
