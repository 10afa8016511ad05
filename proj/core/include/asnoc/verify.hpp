#pragma once

#include <cstdint>

#include "asnoc/portshare.hpp"

namespace asnoc {

enum class FaultMode { Switches, Links, Mixed };

struct VerifyReport {
    bool pass = false;
    long long checked = 0;
    bool sampled = false;     // true when enumeration exceeded the limit
    std::uint64_t seed = 0;   // sampling seed actually used
    std::vector<std::pair<FaultSet, std::vector<int>>> failures;  // fault -> flows
};

/// Every fault set of size <= K over the chosen element class, in
/// deterministic order. When the exhaustive count exceeds sample_limit,
/// returns the empty set, all singletons, and a seeded random sample.
std::vector<FaultSet> enumerate_faults(const Topology& topo, int k, FaultMode mode,
                                       long long sample_limit = 200000,
                                       std::uint64_t seed = 0);

/// Fault-injection certification: run select_paths under every enumerated
/// fault set and record any flow left without a surviving path.
VerifyReport verify(const CommGraph& ccg, const Topology& topo, const RoutingSet& routing,
                    const SharingPlan& plan, int k, FaultMode mode,
                    long long sample_limit = 200000, std::uint64_t seed = 0);

}  // namespace asnoc
