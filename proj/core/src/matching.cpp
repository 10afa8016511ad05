#include "asnoc/optim/matching.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace asnoc::optim {

MatchingResult max_bipartite_matching(int n_left, int n_right,
                                      const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n_left);
    for (const auto& [u, v] : edges) adj[u].push_back(v);

    const int kNil = -1;
    const int kInf = 1 << 30;
    std::vector<int> match_l(n_left, kNil), match_r(n_right, kNil), dist(n_left);

    auto bfs = [&]() {
        std::queue<int> q;
        for (int u = 0; u < n_left; ++u) {
            if (match_l[u] == kNil) { dist[u] = 0; q.push(u); }
            else dist[u] = kInf;
        }
        bool found = false;
        while (!q.empty()) {
            const int u = q.front(); q.pop();
            for (int v : adj[u]) {
                const int w = match_r[v];
                if (w == kNil) found = true;
                else if (dist[w] == kInf) { dist[w] = dist[u] + 1; q.push(w); }
            }
        }
        return found;
    };
    std::function<bool(int)> dfs = [&](int u) {
        for (int v : adj[u]) {
            const int w = match_r[v];
            if (w == kNil || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = 1 << 30;
        return false;
    };

    MatchingResult res;
    while (bfs())
        for (int u = 0; u < n_left; ++u)
            if (match_l[u] == kNil && dfs(u)) ++res.size;
    for (int u = 0; u < n_left; ++u)
        if (match_l[u] != kNil) res.pairs.push_back({u, match_l[u]});
    return res;
}

MatchingResult max_matching_general(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n > 24) throw std::invalid_argument("max_matching_general: graph too large");
    std::vector<uint32_t> adj(n, 0);
    for (const auto& [u, v] : edges) {
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    // best[mask] = (size, pairs) for the subgraph induced by mask.
    std::map<uint32_t, MatchingResult> memo;
    std::function<MatchingResult(uint32_t)> solve = [&](uint32_t mask) -> MatchingResult {
        if (mask == 0) return {};
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        const int v = __builtin_ctz(mask);  // lowest vertex: match or skip
        MatchingResult best = solve(mask & ~(1u << v));
        uint32_t nbrs = adj[v] & mask & ~(1u << v);
        while (nbrs) {
            const int w = __builtin_ctz(nbrs);
            nbrs &= nbrs - 1;
            MatchingResult cand = solve(mask & ~(1u << v) & ~(1u << w));
            cand.size += 1;
            cand.pairs.insert(cand.pairs.begin(), {v, w});
            if (cand.size > best.size) best = std::move(cand);
        }
        memo[mask] = best;
        return best;
    };
    return solve(n == 32 ? ~0u : (1u << n) - 1);
}

}  // namespace asnoc::optim
