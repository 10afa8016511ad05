#pragma once

#include <optional>
#include <vector>

#include "asnoc/model.hpp"

namespace asnoc {

/// Per-switch cap on core links for one side of the mapping:
/// floor(n_core * (K+1) / n_sw) + 1.
int compute_ncs(int n_core, int n_sw, int k);

/// Deterministic bandwidth-weighted k-means over the core positions.
/// Farthest-point init from the lowest-id core; 50 Lloyd iterations or
/// convergence.
std::vector<Switch> place_switches(const CommGraph& ccg, int n_sw);

/// Convex-cost-flow core mapping for one side. Returns the chosen
/// (core, switch) links, or nullopt when the flow is infeasible.
std::optional<std::vector<CsLink>> map_cores(const CommGraph& ccg,
                                             const std::vector<Switch>& switches,
                                             const DesignConfig& cfg, PortKind direction);

/// Both sides, or nullopt if either side fails.
std::optional<std::vector<CsLink>> map_cores_both(const CommGraph& ccg,
                                                  const std::vector<Switch>& switches,
                                                  const DesignConfig& cfg);

/// Total wire cost of a mapping side plus the convex 10x^2 load cost; the
/// quantity the flow formulation minimizes (used by tests and reports).
double mapping_cost(const CommGraph& ccg, const std::vector<Switch>& switches,
                    const DesignConfig& cfg, PortKind direction,
                    const std::vector<CsLink>& links);

}  // namespace asnoc
