#pragma once

#include <utility>
#include <vector>

namespace asnoc::optim {

/// Undirected simple graph on vertices 0..n-1, adjacency-set based; sized for
/// the exact solvers below (a few hundred vertices at most).
class UGraph {
public:
    explicit UGraph(int n = 0) : n_(n), adj_(n, std::vector<bool>(n, false)) {}
    int size() const { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    UGraph complement() const;
    std::vector<std::pair<int, int>> edges() const;

private:
    int n_;
    std::vector<std::vector<bool>> adj_;
};

/// Exact maximum clique; returns the lexicographically smallest maximum
/// clique (branch and bound in ascending vertex order).
std::vector<int> max_clique(const UGraph& g);

/// Exact maximum independent set (max clique of the complement).
std::vector<int> max_independent_set(const UGraph& g);

}  // namespace asnoc::optim
