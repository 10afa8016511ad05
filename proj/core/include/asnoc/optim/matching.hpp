#pragma once

#include <utility>
#include <vector>

namespace asnoc::optim {

struct MatchingResult {
    int size = 0;
    std::vector<std::pair<int, int>> pairs;  // (left, right)
};

/// Hopcroft-Karp maximum-cardinality matching on a bipartite edge list.
MatchingResult max_bipartite_matching(int n_left, int n_right,
                                      const std::vector<std::pair<int, int>>& edges);

/// Exact maximum matching on a small general graph (exhaustive with
/// memoization; intended for n <= ~20). Deterministic.
MatchingResult max_matching_general(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace asnoc::optim
