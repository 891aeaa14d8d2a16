#include <gtest/gtest.h>

#include <deque>

#include "fsg/approximant.hpp"
#include "fsg/bisimulation.hpp"
#include "fsg/cd_models.hpp"
#include "fsg/eval.hpp"
#include "fsg/families.hpp"
#include "fsg/parser.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fsg;

TEST(EvalMl, Basics) {
    auto dead = KripkeModel::make({"a"}, {}, {});
    EXPECT_TRUE(eval_ml(Formula::top(), PointedModel(dead, 0)));
    EXPECT_FALSE(eval_ml(parse_ml("<>T"), PointedModel(dead, 0)));
    EXPECT_TRUE(eval_ml(parse_ml("[]F"), PointedModel(dead, 0)));
}

TEST(EvalMl, C1Separator) {
    auto f = c1_separator();
    for (const auto& pm : build_C(1)) EXPECT_TRUE(eval_ml(f, pm));
    for (const auto& pm : build_D(1)) EXPECT_FALSE(eval_ml(f, pm));
}

TEST(EvalMu, Fixpoints) {
    testgen::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        auto m = testgen::random_model(rng, testgen::uniform(rng, 1, 6), {"p"});
        EXPECT_TRUE(eval_mu(parse_mu("mu X. X"), *m).none());
        EXPECT_TRUE(eval_mu(parse_mu("nu X. X"), *m).all());
        EXPECT_EQ(eval_mu(parse_mu("mu X. (p | <>X)"), *m), oracle::reach(*m, m->prop("p")));
    }
    auto m = KripkeModel::make({"a"}, {}, {});
    EXPECT_THROW(eval_mu(Formula::var("X"), *m), InputError);
    Valuation rho{{"X", WorldSet(1).set()}};
    EXPECT_TRUE(eval_mu(Formula::var("X"), *m, rho).test(0));
}

TEST(EvalMu, LeastBelowGreatestAndMonotone) {
    testgen::Rng rng(5);
    auto props = testgen::prop_names(2);
    for (int i = 0; i < 200; ++i) {
        auto m = testgen::random_model(rng, testgen::uniform(rng, 1, 5), props);
        std::vector<std::string> scope{"X"};
        int next = 0;
        Formula body = testgen::random_mu(rng, testgen::uniform(rng, 1, 8), props, scope, next);
        auto lfp = eval_mu(Formula::mu("X", body), *m);
        auto gfp = eval_mu(Formula::nu("X", body), *m);
        EXPECT_TRUE(lfp.is_subset_of(gfp));
        WorldSet small(m->size()), big(m->size());
        for (std::size_t w = 0; w < m->size(); ++w) {
            if (testgen::coin(rng)) big.set(w);
            if (big.test(w) && testgen::coin(rng)) small.set(w);
        }
        auto a = eval_mu(body, *m, {{"X", small}});
        auto b = eval_mu(body, *m, {{"X", big}});
        EXPECT_TRUE(a.is_subset_of(b)) << print(body);
    }
}

TEST(EvalMl2, Basics) {
    auto m = KripkeModel::make({"a", "b"}, {{"a", "b"}}, {});
    EXPECT_TRUE(eval_ml2(parse_ml2("<1>T"), *m, 0, 1));
    EXPECT_FALSE(eval_ml2(parse_ml2("<1>T"), *m, 1, 0));
    EXPECT_FALSE(eval_ml2(parse_ml2("<2>T"), *m, 0, 1));
    auto rho1 = build_rho(1);
    EXPECT_TRUE(eval_ml2(rho1, *m, 0, 0));
    EXPECT_TRUE(eval_ml2(rho1, *m, 1, 1));
    EXPECT_FALSE(eval_ml2(rho1, *m, 0, 1));
}

TEST(EvalMl2, RhoMatchesNBisimulation) {
    testgen::Rng rng(9);
    for (int i = 0; i < 60; ++i) {
        auto m = testgen::random_model(rng, testgen::uniform(rng, 1, 5), {});
        Bisimulation b(std::vector<ModelPtr>{m});
        for (int n = 1; n <= 3; ++n) {
            auto den = eval_ml2_set(build_rho(n), *m);
            for (std::size_t u = 0; u < m->size(); ++u)
                for (std::size_t v = 0; v < m->size(); ++v)
                    EXPECT_EQ(den.test(u * m->size() + v),
                              b.n_bisimilar(PointedModel(m, (int)u), PointedModel(m, (int)v), n));
        }
    }
}

TEST(EvalMl2, ZetaSeparatesAn) {
    testgen::Rng rng(10);
    for (int i = 0; i < 60; ++i) {
        auto m = testgen::random_model(rng, testgen::uniform(rng, 1, 5), {});
        for (int n = 1; n <= 3; ++n) {
            auto den = eval_ml2_set(build_zeta(n), *m);
            for (std::size_t w = 0; w < m->size(); ++w)
                EXPECT_EQ(den.test(w * m->size() + w), in_class_An(PointedModel(m, (int)w), n));
        }
    }
}

TEST(Bisim, NBisimilarBasics) {
    testgen::Rng rng(12);
    auto a = testgen::random_pointed(rng, 4, {"p"});
    for (int n = 0; n < 5; ++n) EXPECT_TRUE(n_bisimilar(a, a, n));
    auto x = KripkeModel::make({"a"}, {}, {});
    auto y = KripkeModel::make({"a", "b"}, {{"a", "b"}}, {});
    EXPECT_TRUE(n_bisimilar(PointedModel(x, 0), PointedModel(y, 0), 0));
    EXPECT_FALSE(n_bisimilar(PointedModel(x, 0), PointedModel(y, 0), 1));
}

TEST(Bisim, DistinctHierarchyElementsAreNotNBisimilar) {
    for (int n = 1; n <= 3; ++n) {
        auto subs = hierarchy_submodels(n);
        Bisimulation b(subs);
        for (std::size_t i = 0; i < subs.size(); ++i)
            for (std::size_t j = i + 1; j < subs.size(); ++j) EXPECT_FALSE(b.n_bisimilar(subs[i], subs[j], n));
    }
}

TEST(Bisim, FullBisimilarity) {
    auto f3 = cumulative_level(3);
    PointedModel whole(f3, "{{{}}}");
    PointedModel sub(generated_submodel(*f3, "{{{}}}"), "{{{}}}");
    EXPECT_TRUE(bisimilar(whole, sub));
    auto subs = hierarchy_submodels(1);
    EXPECT_FALSE(bisimilar(subs[0], subs[1]));
    EXPECT_EQ(bisim_quotient(hierarchy_submodels(2)).size(), 4u);
    EXPECT_TRUE(bisim_quotient({}).empty());
    auto copy = KripkeModel::make(f3->names(), f3->edges(), {});
    EXPECT_EQ(bisim_quotient({whole, PointedModel(copy, "{{{}}}")}).size(), 1u);
}

TEST(Bisim, RefinementIsMonotoneAndMatchesModalDepthOracle) {
    testgen::Rng rng(13);
    auto props = testgen::prop_names(1);
    for (int i = 0; i < 40; ++i) {
        auto a = testgen::random_pointed(rng, 4, props);
        auto b = testgen::random_pointed(rng, 4, props);
        Bisimulation bs(std::vector<PointedModel>{a, b});
        for (int n = 1; n <= 4; ++n)
            if (bs.n_bisimilar(a, b, n)) EXPECT_TRUE(bs.n_bisimilar(a, b, n - 1));
        for (int n = 0; n <= 2; ++n)
            EXPECT_EQ(bs.n_bisimilar(a, b, n), oracle::depth_equivalent(a, b, n, props)) << n;
    }
}

TEST(ClassAn, Membership) {
    auto single = KripkeModel::make({"r", "a"}, {{"r", "a"}}, {});
    EXPECT_TRUE(in_class_An(PointedModel(single, "r"), 3));
    for (int n = 1; n <= 3; ++n) {
        for (const auto& pm : build_C(n)) EXPECT_TRUE(in_class_An(pm, n));
        for (const auto& pm : build_D(n)) EXPECT_FALSE(in_class_An(pm, n));
    }
}

TEST(Approximant, ZeroClocks) {
    auto t = syntax_tree(parse_mu("((mu X. <>X) & nu Y. []Y)"));
    // preorder: 0 &, 1 muX, 2 <>, 3 X, 4 nuY, 5 [], 6 Y
    auto m = KripkeModel::make({"a"}, {{"a", "a"}}, {});
    PointedModel pm(m, 0);
    Clocks cx;
    cx.set("X", 0);
    EXPECT_FALSE(approximant_holds(t, 3, cx, pm));
    Clocks cy;
    cy.set("Y", 0);
    EXPECT_TRUE(approximant_holds(t, 6, cy, pm));
    EXPECT_THROW(approximant_holds(t, 3, cy, pm), InputError);
    EXPECT_THROW(approximant_holds(t, 42, cx, pm), InputError);
}

TEST(Approximant, BoundedReachability) {
    auto t = syntax_tree(parse_mu("mu X. (p | <>X)"));
    testgen::Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        auto m = testgen::random_model(rng, testgen::uniform(rng, 1, 6), {"p"}, 0.3, 0.25);
        ApproximantEvaluator ev(t, *m);
        for (int k = 0; k <= 6; ++k) {
            Clocks c;
            c.set("X", k);
            // (p | <>X) at clock k holds iff a p-world is reachable within k steps.
            EXPECT_EQ(ev.denotation(1, c), oracle::reach_within(*m, m->prop("p"), k));
        }
    }
}

TEST(Approximant, MatchesSyntacticUnfolding) {
    testgen::Rng rng(15);
    auto props = testgen::prop_names(2);
    for (int i = 0; i < 200; ++i) {
        Formula f = testgen::random_fixpoint_sentence(rng, testgen::uniform(rng, 2, 9), props);
        auto m = testgen::random_model(rng, testgen::uniform(rng, 1, 4), props);
        auto t = syntax_tree(f);
        for (int alpha = 0; alpha <= 3; ++alpha) {
            Clocks c;
            c.set("X", alpha);
            Formula unf = oracle::unfold(f, alpha + 1);
            EXPECT_EQ(ApproximantEvaluator(t, *m).denotation(1, c), eval_mu(unf, *m)) << print(f) << " alpha " << alpha;
        }
    }
}
