#include "asnoc/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace asnoc {

namespace {

// One faultable element: a switch id or a directed switch-to-switch link.
struct Element {
    bool is_switch = true;
    int sw = 0;
    std::pair<int, int> link{};
};

FaultSet to_fault_set(const std::vector<Element>& universe, const std::vector<int>& picks) {
    FaultSet fs;
    for (int i : picks) {
        const Element& e = universe[i];
        if (e.is_switch)
            fs.switches.insert(e.sw);
        else
            fs.links.insert(e.link);
    }
    return fs;
}

}  // namespace

std::vector<FaultSet> enumerate_faults(const Topology& topo, int k, FaultMode mode,
                                       long long sample_limit, std::uint64_t seed) {
    std::vector<Element> universe;
    if (mode == FaultMode::Switches || mode == FaultMode::Mixed)
        for (const Switch& s : topo.switches) universe.push_back({true, s.id, {}});
    if (mode == FaultMode::Links || mode == FaultMode::Mixed)
        for (const auto& l : topo.ss_links) universe.push_back({false, 0, l});

    const int n = static_cast<int>(universe.size());
    // Count subsets of size <= k without overflow worries at desk scale.
    long long total = 0;
    {
        long long binom = 1;  // C(n, i)
        for (int i = 0; i <= std::min(k, n); ++i) {
            total += binom;
            if (total > sample_limit) break;
            binom = binom * (n - i) / (i + 1);
        }
    }

    std::vector<FaultSet> out;
    if (total <= sample_limit) {
        // Exhaustive, sizes ascending, lexicographic within a size.
        std::vector<int> picks;
        std::function<void(int, int)> rec = [&](int start, int want) {
            if (want == 0) {
                out.push_back(to_fault_set(universe, picks));
                return;
            }
            for (int i = start; i + want <= n; ++i) {
                picks.push_back(i);
                rec(i + 1, want - 1);
                picks.pop_back();
            }
        };
        for (int size = 0; size <= std::min(k, n); ++size) rec(0, size);
        return out;
    }

    // Sampled mode: the empty set, every singleton, then seeded random
    // subsets of size 2..k up to the limit.
    out.push_back({});
    for (int i = 0; i < n; ++i) out.push_back(to_fault_set(universe, {i}));
    std::mt19937_64 rng(seed);
    std::set<std::vector<int>> seen;
    std::uniform_int_distribution<int> size_dist(2, k);
    std::uniform_int_distribution<int> elem_dist(0, n - 1);
    long long budget = sample_limit - static_cast<long long>(out.size());
    long long attempts = 0;
    while (budget > 0 && attempts < 20 * sample_limit) {
        ++attempts;
        const int size = size_dist(rng);
        std::set<int> picked;
        while (static_cast<int>(picked.size()) < size) picked.insert(elem_dist(rng));
        std::vector<int> picks(picked.begin(), picked.end());
        if (!seen.insert(picks).second) continue;
        out.push_back(to_fault_set(universe, picks));
        --budget;
    }
    return out;
}

VerifyReport verify(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                    const SharingPlan& plan, int k, FaultMode mode,
                    long long sample_limit, std::uint64_t seed) {
    VerifyReport report;
    report.seed = seed;
    const std::vector<FaultSet> faults = enumerate_faults(topo, k, mode, sample_limit, seed);
    long long exhaustive = 0;
    {
        long long n = 0;
        if (mode == FaultMode::Switches || mode == FaultMode::Mixed)
            n += static_cast<long long>(topo.switches.size());
        if (mode == FaultMode::Links || mode == FaultMode::Mixed)
            n += static_cast<long long>(topo.ss_links.size());
        long long binom = 1;
        for (int i = 0; i <= std::min<long long>(k, n); ++i) {
            exhaustive += binom;
            if (exhaustive > sample_limit) break;
            binom = binom * (n - i) / (i + 1);
        }
    }
    report.sampled = exhaustive > sample_limit;
    for (const FaultSet& fs : faults) {
        ++report.checked;
        const PathSelection sel = select_paths(ccg, routing, plan, topo, fs, k);
        if (!sel.ok) report.failures.push_back({fs, sel.unroutable_flows});
    }
    report.pass = report.failures.empty();
    return report;
}

}  // namespace asnoc
