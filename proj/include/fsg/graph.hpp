#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fsg/kripke.hpp"

namespace fsg {

// Undirected simple graph on named vertices.
struct SeparationGraph {
    std::vector<std::string> vertices;
    std::set<std::pair<int, int>> edges;  // (i, j) with i < j

    int index(const std::string& v) const {
        auto it = std::find(vertices.begin(), vertices.end(), v);
        return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
    }
    void add_edge(int i, int j) {
        require(i != j, "self-loop in separation graph");
        edges.insert({std::min(i, j), std::max(i, j)});
    }
    bool adjacent(int i, int j) const { return edges.count({std::min(i, j), std::max(i, j)}) > 0; }
    bool is_complete() const {
        std::size_t n = vertices.size();
        return edges.size() == n * (n - 1) / 2;
    }
    // Subgraph induced by the named vertices.
    SeparationGraph induced(const std::vector<std::string>& keep) const {
        SeparationGraph g;
        std::set<std::string> k(keep.begin(), keep.end());
        std::vector<int> map(vertices.size(), -1);
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (k.count(vertices[i])) {
                map[i] = static_cast<int>(g.vertices.size());
                g.vertices.push_back(vertices[i]);
            }
        for (auto [a, b] : edges)
            if (map[a] >= 0 && map[b] >= 0) g.add_edge(map[a], map[b]);
        return g;
    }
};

// Successors of one-successor roots are vertices; each two-successor root whose
// successors are both vertices contributes an edge.
inline SeparationGraph build_graph(const std::vector<PointedModel>& V, const std::vector<PointedModel>& E) {
    SeparationGraph g;
    std::set<std::string> names;
    for (const auto& pm : V) {
        auto s = successors(pm);
        require(s.size() == 1, "vertex model " + pm.name() + " must have exactly one successor");
        names.insert(s[0].name());
    }
    g.vertices.assign(names.begin(), names.end());
    std::sort(g.vertices.begin(), g.vertices.end(), hf::canonical_less);
    for (const auto& pm : E) {
        auto s = successors(pm);
        require(s.size() == 2, "edge model " + pm.name() + " must have exactly two successors");
        int a = g.index(s[0].name()), b = g.index(s[1].name());
        if (a >= 0 && b >= 0) g.add_edge(a, b);
    }
    return g;
}

namespace detail {
class Colorer {
public:
    explicit Colorer(const SeparationGraph& g) : n_(static_cast<int>(g.vertices.size())), adj_(n_, 0) {
        for (auto [a, b] : g.edges) {
            adj_[a] |= std::uint64_t{1} << b;
            adj_[b] |= std::uint64_t{1} << a;
        }
    }

    int solve() {
        if (n_ == 0) return 0;
        best_ = greedy();
        int lower = clique_bound();
        if (lower == best_) return best_;
        color_.assign(n_, -1);
        search(0, 0, lower);
        return best_;
    }

private:
    int saturation(int v) const {
        std::uint64_t seen = 0;
        for (std::uint64_t m = adj_[v]; m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (color_[u] >= 0) seen |= std::uint64_t{1} << color_[u];
        }
        return std::popcount(seen);
    }
    int pick() const {
        int best = -1, bs = -1, bd = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[v] >= 0) continue;
            int s = saturation(v), d = std::popcount(adj_[v]);
            if (s > bs || (s == bs && d > bd)) best = v, bs = s, bd = d;
        }
        return best;
    }
    int greedy() {
        color_.assign(n_, -1);
        int used = 0;
        for (int i = 0; i < n_; ++i) {
            int v = pick();
            std::uint64_t forbidden = 0;
            for (std::uint64_t m = adj_[v]; m; m &= m - 1) {
                int u = std::countr_zero(m);
                if (color_[u] >= 0) forbidden |= std::uint64_t{1} << color_[u];
            }
            int c = std::countr_one(forbidden);
            color_[v] = c;
            used = std::max(used, c + 1);
        }
        return used;
    }
    int clique_bound() const {
        int best = 1;
        for (int s = 0; s < n_; ++s) {
            std::uint64_t cand = adj_[s];
            int size = 1;
            while (cand) {
                int v = -1, deg = -1;
                for (std::uint64_t m = cand; m; m &= m - 1) {
                    int u = std::countr_zero(m);
                    int d = std::popcount(adj_[u] & cand);
                    if (d > deg) v = u, deg = d;
                }
                ++size;
                cand &= adj_[v];
            }
            best = std::max(best, size);
        }
        return best;
    }
    void search(int colored, int used, int lower) {
        if (best_ == lower) return;
        if (colored == n_) {
            best_ = std::min(best_, used);
            return;
        }
        int v = pick();
        std::uint64_t forbidden = 0;
        for (std::uint64_t m = adj_[v]; m; m &= m - 1) {
            int u = std::countr_zero(m);
            if (color_[u] >= 0) forbidden |= std::uint64_t{1} << color_[u];
        }
        for (int c = 0; c <= used && c < best_ - 1; ++c) {
            if (forbidden >> c & 1) continue;
            color_[v] = c;
            search(colored + 1, std::max(used, c + 1), lower);
            color_[v] = -1;
            if (best_ == lower) return;
        }
    }

    int n_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> color_;
    int best_ = 0;
};
}  // namespace detail

// Exact chromatic number by DSATUR branch and bound; complete graphs short-circuit.
inline int chromatic_number(const SeparationGraph& g) {
    require(g.vertices.size() <= 64, "chromatic_number supports at most 64 vertices");
    if (g.is_complete()) return static_cast<int>(g.vertices.size());
    return detail::Colorer(g).solve();
}

inline bool is_proper_coloring(const SeparationGraph& g, const std::vector<int>& colors) {
    if (colors.size() != g.vertices.size()) return false;
    for (auto [a, b] : g.edges)
        if (colors[a] == colors[b]) return false;
    return true;
}

struct InequalityReport {
    std::string kind;  // "vertex" or "edge"
    int chi = 0, chi1 = 0, chi2 = 0;
    bool holds = false;
};

// Vertex split: V1 ∪ V2 = V, bound chi(G) <= chi(G[V1]) + chi(G[V2]).
inline InequalityReport check_vertex_split(const SeparationGraph& g, const std::vector<std::string>& v1,
                                           const std::vector<std::string>& v2) {
    std::set<std::string> cover(v1.begin(), v1.end());
    cover.insert(v2.begin(), v2.end());
    for (const auto& v : cover) require(g.index(v) >= 0, "split names an unknown vertex " + v);
    require(cover.size() == g.vertices.size(), "vertex split does not cover the graph");
    InequalityReport r{"vertex", chromatic_number(g), chromatic_number(g.induced(v1)), chromatic_number(g.induced(v2)), false};
    r.holds = r.chi <= r.chi1 + r.chi2;
    return r;
}

// Edge split: E1 ∪ E2 = E on the same vertices, bound chi(G) <= chi(G1) * chi(G2).
inline InequalityReport check_edge_split(const SeparationGraph& g, const std::set<std::pair<int, int>>& e1,
                                         const std::set<std::pair<int, int>>& e2) {
    std::set<std::pair<int, int>> cover(e1.begin(), e1.end());
    cover.insert(e2.begin(), e2.end());
    require(cover == g.edges, "edge split does not cover the edge set");
    SeparationGraph g1{g.vertices, e1}, g2{g.vertices, e2};
    InequalityReport r{"edge", chromatic_number(g), chromatic_number(g1), chromatic_number(g2), false};
    r.holds = r.chi <= r.chi1 * r.chi2;
    return r;
}

}  // namespace fsg
