#include "asnoc/optim/clique.hpp"

#include <cstdint>
#include <functional>

namespace asnoc::optim {

void UGraph::add_edge(int u, int v) {
    if (u == v) return;
    adj_[u][v] = true;
    adj_[v][u] = true;
}

bool UGraph::has_edge(int u, int v) const { return adj_[u][v]; }

UGraph UGraph::complement() const {
    UGraph c(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (!adj_[u][v]) c.add_edge(u, v);
    return c;
}

std::vector<std::pair<int, int>> UGraph::edges() const {
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adj_[u][v]) e.push_back({u, v});
    return e;
}

namespace {

using Words = std::vector<uint64_t>;

int popcount(const Words& w) {
    int c = 0;
    for (uint64_t x : w) c += __builtin_popcountll(x);
    return c;
}

// Greedy sequential coloring of the candidate set; the number of color
// classes bounds the largest clique inside it.
int color_bound(const std::vector<Words>& adj, const Words& cand, int n_words) {
    std::vector<Words> classes;
    Words rest = cand;
    int colors = 0;
    for (int wi = 0; wi < n_words; ++wi) {
        uint64_t bits = rest[wi];
        while (bits) {
            const int v = wi * 64 + __builtin_ctzll(bits);
            bits &= bits - 1;
            bool placed = false;
            for (auto& cls : classes) {
                bool clash = false;
                for (int k = 0; k < n_words; ++k)
                    if (cls[k] & adj[v][k]) { clash = true; break; }
                if (!clash) {
                    cls[v / 64] |= 1ull << (v % 64);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                classes.emplace_back(n_words, 0ull);
                classes.back()[v / 64] |= 1ull << (v % 64);
                ++colors;
            }
        }
    }
    return colors;
}

}  // namespace

std::vector<int> max_clique(const UGraph& g) {
    const int n = g.size();
    if (n == 0) return {};
    const int n_words = (n + 63) / 64;
    std::vector<Words> adj(n, Words(n_words, 0ull));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (u != v && g.has_edge(u, v)) adj[u][v / 64] |= 1ull << (v % 64);

    std::vector<int> best, cur;
    // Ascending-order branch and bound; the first maximum found is the
    // lexicographically smallest because larger-index cliques are explored
    // later and ties never replace the incumbent.
    std::function<void(const Words&)> expand = [&](const Words& cand) {
        const int cnt = popcount(cand);
        if (cur.size() + cnt <= best.size()) return;
        if (cnt > 2 &&
            cur.size() + color_bound(adj, cand, n_words) <= best.size())
            return;
        Words rest = cand;
        for (int wi = 0; wi < n_words; ++wi) {
            while (rest[wi]) {
                const int v = wi * 64 + __builtin_ctzll(rest[wi]);
                if (cur.size() + popcount(rest) <= best.size()) return;
                cur.push_back(v);
                Words next(n_words);
                for (int k = 0; k < n_words; ++k) next[k] = rest[k] & adj[v][k];
                if (popcount(next) == 0) {
                    if (cur.size() > best.size()) best = cur;
                } else {
                    expand(next);
                }
                cur.pop_back();
                rest[wi] &= rest[wi] - 1;  // exclude v and continue
            }
        }
    };
    Words all(n_words, 0ull);
    for (int v = 0; v < n; ++v) all[v / 64] |= 1ull << (v % 64);
    expand(all);
    if (best.empty() && n > 0) best = {0};  // edgeless graph: single vertex
    return best;
}

std::vector<int> max_independent_set(const UGraph& g) {
    return max_clique(g.complement());
}

}  // namespace asnoc::optim
