#include <gtest/gtest.h>

#include "fsg/cd_models.hpp"
#include "fsg/graph.hpp"
#include "support/generators.hpp"

using namespace fsg;

namespace {

// Plain backtracking colorability, no ordering heuristics.
bool colorable(const SeparationGraph& g, std::vector<int>& col, std::size_t v, int k) {
    if (v == col.size()) return true;
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (std::size_t u = 0; u < v && ok; ++u)
            if (col[u] == c && g.adjacent(static_cast<int>(u), static_cast<int>(v))) ok = false;
        if (!ok) continue;
        col[v] = c;
        if (colorable(g, col, v + 1, k)) return true;
    }
    return false;
}

int brute_chromatic(const SeparationGraph& g) {
    std::vector<int> col(g.vertices.size(), -1);
    for (int k = 0;; ++k)
        if (colorable(g, col, 0, k)) return k;
}

SeparationGraph random_graph(testgen::Rng& rng, int n, double p) {
    SeparationGraph g;
    for (int i = 0; i < n; ++i) g.vertices.push_back("v" + std::to_string(i));
    std::bernoulli_distribution edge(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST(Graph, SmallKnownValues) {
    SeparationGraph g;
    g.vertices = {"a", "b", "c", "d", "e"};
    EXPECT_EQ(chromatic_number(g), 1);
    for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    EXPECT_EQ(chromatic_number(g), 3);
    EXPECT_EQ(chromatic_number(SeparationGraph{}), 0);
    EXPECT_THROW(g.add_edge(1, 1), InputError);
}

TEST(Graph, MatchesBruteForce) {
    testgen::Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        auto g = random_graph(rng, testgen::uniform(rng, 0, 9), 0.2 + 0.6 * (i % 4) / 3.0);
        ASSERT_EQ(chromatic_number(g), brute_chromatic(g)) << "graph " << i;
    }
}

TEST(Graph, HierarchyGraphIsComplete) {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto g = build_graph(build_C(n), build_D(n));
        EXPECT_EQ(g.vertices.size(), hierarchy_submodels(n).size());
        EXPECT_TRUE(g.is_complete());
        EXPECT_EQ(chromatic_number(g), static_cast<int>(g.vertices.size()));
    }
}

TEST(Graph, BuildRejectsWrongArity) {
    auto f = cumulative_level(3);
    PointedModel two(generated_submodel(*f, "{{},{{}}}"), "{{},{{}}}");
    EXPECT_THROW(build_graph({two}, {}), InputError);
    EXPECT_THROW(build_graph({}, {PointedModel(generated_submodel(*f, "{{}}"), "{{}}")}), InputError);
}

TEST(Graph, SplitInequalities) {
    testgen::Rng rng(32);
    for (int i = 0; i < 500; ++i) {
        auto g = random_graph(rng, testgen::uniform(rng, 1, 12), 0.5);
        std::vector<std::string> v1, v2;
        for (const auto& v : g.vertices) {
            int r = testgen::uniform(rng, 0, 2);
            if (r != 1) v1.push_back(v);
            if (r != 0) v2.push_back(v);
        }
        auto vr = check_vertex_split(g, v1, v2);
        EXPECT_TRUE(vr.holds);
        std::set<std::pair<int, int>> e1, e2;
        for (auto e : g.edges) {
            int r = testgen::uniform(rng, 0, 2);
            if (r != 1) e1.insert(e);
            if (r != 0) e2.insert(e);
        }
        auto er = check_edge_split(g, e1, e2);
        EXPECT_TRUE(er.holds);
        EXPECT_LE(er.chi, er.chi1 * er.chi2);
    }
}

TEST(Graph, SplitRequiresCover) {
    SeparationGraph g;
    g.vertices = {"a", "b"};
    g.add_edge(0, 1);
    EXPECT_THROW(check_vertex_split(g, {"a"}, {}), InputError);
    EXPECT_THROW(check_edge_split(g, {}, {}), InputError);
}
