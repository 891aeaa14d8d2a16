#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fsg/formula.hpp"

namespace fsg {

// Occurrence tree of a sentence. Vertices are numbered in preorder; the root is 0.
// Each variable leaf has a back edge to the child of the fixpoint binding it.
struct SyntaxTree {
    struct Vertex {
        Formula label;  // the subformula occurrence
        int parent = -1;
        std::vector<int> children;
        int back = -1;    // back-edge target for variable leaves
        int binder = -1;  // binding fixpoint vertex for variable leaves
        int depth = 0;
    };
    std::vector<Vertex> vertices;
    std::map<std::string, int> binder_of;  // variable -> fixpoint vertex

    std::size_t size() const { return vertices.size(); }
    const Vertex& at(int v) const {
        require(v >= 0 && static_cast<std::size_t>(v) < vertices.size(), "vertex outside syntax tree");
        return vertices[v];
    }
    std::vector<std::pair<int, int>> tree_edges() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            for (int c : vertices[v].children) out.emplace_back(static_cast<int>(v), c);
        return out;
    }
    std::vector<std::pair<int, int>> back_edges() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t v = 0; v < vertices.size(); ++v)
            if (vertices[v].back >= 0) out.emplace_back(static_cast<int>(v), vertices[v].back);
        return out;
    }
    // Fixpoint vertices strictly above v, outermost first.
    std::vector<int> fixpoints_above(int v) const {
        std::vector<int> out;
        for (int u = at(v).parent; u >= 0; u = vertices[u].parent)
            if (vertices[u].label.is_fixpoint()) out.push_back(u);
        return {out.rbegin(), out.rend()};
    }
    bool is_below(int s, int t) const {
        for (int u = s; u >= 0; u = vertices[u].parent)
            if (u == t) return true;
        return false;
    }
};

inline SyntaxTree syntax_tree(const Formula& f) {
    require(distinct_binders(f), "bound variables must be distinct");
    auto fv = free_vars(f);
    require(fv.empty(), "free variable " + (fv.empty() ? std::string() : *fv.begin()));
    SyntaxTree t;
    auto go = [&](auto&& self, const Formula& g, int parent, int depth) -> int {
        int id = static_cast<int>(t.vertices.size());
        t.vertices.push_back({g, parent, {}, -1, -1, depth});
        if (g.is_fixpoint()) t.binder_of[g.name()] = id;
        std::vector<Formula> kids;
        if (g.is_binary()) kids = {g.left(), g.right()};
        else if (g.is_modal() || g.is_fixpoint()) kids = {g.child()};
        for (const auto& k : kids) {
            int c = self(self, k, id, depth + 1);
            t.vertices[id].children.push_back(c);
        }
        return id;
    };
    go(go, f, -1, 0);
    for (auto& v : t.vertices)
        if (v.label.op() == Op::Var) {
            v.binder = t.binder_of.at(v.label.name());
            v.back = t.vertices[v.binder].children.at(0);
        }
    return t;
}

}  // namespace fsg
