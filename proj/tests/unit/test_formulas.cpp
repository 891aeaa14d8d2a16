#include <gtest/gtest.h>

#include "fsg/families.hpp"
#include "fsg/fo_skeleton.hpp"
#include "fsg/parser.hpp"
#include "fsg/syntax_tree.hpp"
#include "support/generators.hpp"

using namespace fsg;

TEST(Formulas, SizeMl) {
    EXPECT_EQ(size_ml(Formula::top()), 1u);
    EXPECT_EQ(size_ml(parse_ml("([]([]F) | []<>T)")), 7u);
    EXPECT_EQ(size_ml(parse_ml("<>p")), 2u);
}

TEST(Formulas, SizeMu) {
    EXPECT_EQ(size_mu(Formula::var("X")), 1u);
    EXPECT_EQ(size_mu(parse_mu("mu X. (p | <>X)")), 5u);
    EXPECT_EQ(size_mu(parse_mu("nu X. X")), 2u);
}

TEST(Formulas, SizeFo) {
    EXPECT_EQ(size_fo(fo::atom("R(x,y)")), 1u);
    EXPECT_EQ(size_fo(build_psi(1)), 11u);
    EXPECT_EQ(size_fo(build_psi(2)), 25u);
    EXPECT_EQ(size_fo(build_psi(10)), 137u);
    EXPECT_EQ(size_fo(build_phi(1)), 17u);
    EXPECT_THROW(build_psi(0), InputError);
    EXPECT_THROW(build_phi(0), InputError);
    for (std::size_t n = 1; n <= 10; ++n) {
        EXPECT_EQ(size_fo(build_psi(n)), 14 * n - 3);
        EXPECT_EQ(size_fo(build_phi(n)), 14 * n + 3);
        if (n > 1) EXPECT_EQ(size_fo(build_psi(n)), size_fo(build_psi(n - 1)) + 14);
    }
    EXPECT_EQ(size_fo(fo::lnot(fo::atom("a"))), 1u);
}

// rho_1 expands to 11 symbols; each step doubles and adds 5.
TEST(Formulas, RhoZetaRecurrence) {
    EXPECT_EQ(size_ml2(Formula::dia(Formula::top(), 1)), 2u);
    EXPECT_EQ(size_ml2(build_rho(1)), 11u);
    for (std::size_t n = 1; n <= 6; ++n) {
        std::size_t rho = size_ml2(build_rho(n));
        EXPECT_EQ(rho, (std::size_t{1} << (n + 3)) - 5);
        EXPECT_EQ(size_ml2(build_zeta(n)), rho + 2);
        if (n > 1) EXPECT_EQ(rho, 2 * size_ml2(build_rho(n - 1)) + 5);
    }
    EXPECT_EQ(build_rho(2).op(), Op::And);
    auto z = build_zeta(3);
    EXPECT_EQ(z.op(), Op::Box);
    EXPECT_EQ(z.mod(), 1);
    EXPECT_EQ(z.child().op(), Op::Box);
    EXPECT_EQ(z.child().mod(), 2);
    EXPECT_THROW(build_rho(0), InputError);
    EXPECT_THROW(build_zeta(0), InputError);
    EXPECT_TRUE(fits_logic(build_zeta(4), Logic::ML2));
}

TEST(Formulas, Tower) {
    EXPECT_EQ(tower(0), 1u);
    EXPECT_EQ(tower(1), 2u);
    EXPECT_EQ(tower(2), 4u);
    EXPECT_EQ(tower(3), 16u);
    EXPECT_EQ(tower(4), 65536u);
    EXPECT_THROW(tower(5), InputError);
}

TEST(Parser, Examples) {
    auto f = parse_mu("mu X. (p | <>X)");
    EXPECT_EQ(f.op(), Op::Mu);
    EXPECT_EQ(f.child().op(), Op::Or);
    EXPECT_EQ(f.child().right().child().op(), Op::Var);
    EXPECT_EQ(print(f), "mu X. (p | <>X)");
    EXPECT_EQ(print(parse_ml("([]([]F) | []<>T)")), "([][]F | []<>T)");
    EXPECT_THROW(parse_mu("mu X. mu X. p"), InputError);
    EXPECT_THROW(parse_mu("(mu X. X | mu X. X)"), InputError);
}

TEST(Parser, PrecedenceAndAssociativity) {
    EXPECT_EQ(print(parse_ml("p | q & r")), "(p | (q & r))");
    EXPECT_EQ(print(parse_ml("p & q | r")), "((p & q) | r)");
    EXPECT_EQ(print(parse_ml("p | q | r")), "((p | q) | r)");
    EXPECT_EQ(print(parse_ml("<>p & []q")), "(<>p & []q)");
    EXPECT_EQ(print(parse_mu("mu X. p | <>X")), "mu X. (p | <>X)");
    EXPECT_EQ(print(parse_mu("(mu X. <>X) | p")), "((mu X. <>X) | p)");
    EXPECT_EQ(print(parse_mu("<>(nu Y. []Y) & q")), "(<>(nu Y. []Y) & q)");
}

TEST(Parser, Errors) {
    EXPECT_THROW(parse_ml("p |"), InputError);
    EXPECT_THROW(parse_ml("(p | q"), InputError);
    EXPECT_THROW(parse_ml("mu X. X"), InputError);
    EXPECT_THROW(parse_ml("<1>p"), InputError);
    EXPECT_THROW(parse_ml2("<>p"), InputError);
    EXPECT_THROW(parse_mu("mu X. ~X"), InputError);
    EXPECT_THROW(parse_mu("X | mu X. <>X"), InputError);
    EXPECT_THROW(parse_ml("p q"), InputError);
    EXPECT_THROW(parse_ml("~T"), InputError);
    try {
        parse_ml("p & & q");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos) << e.what();
    }
}

TEST(Parser, Ml2) {
    auto f = parse_ml2("[1][2]((<1>T & <2>T) | ([1]F & [2]F))");
    EXPECT_TRUE(structurally_equal(f, build_zeta(1)));
    EXPECT_EQ(print(f), "[1][2]((<1>T & <2>T) | ([1]F & [2]F))");
}

TEST(Parser, RoundTripOnRandomCorpus) {
    testgen::Rng rng(7);
    auto props = testgen::prop_names(2);
    for (int i = 0; i < 500; ++i) {
        Formula f = testgen::random_mu_sentence(rng, testgen::uniform(rng, 1, 12), props);
        std::string text = print(f);
        Formula g = parse_mu(text);
        EXPECT_TRUE(structurally_equal(f, g)) << text;
        EXPECT_EQ(print(g), text);
        Formula h = testgen::random_ml(rng, testgen::uniform(rng, 1, 12), props);
        EXPECT_TRUE(structurally_equal(h, parse_ml(print(h)))) << print(h);
    }
}

TEST(SyntaxTree, SmallExamples) {
    auto t = syntax_tree(parse_mu("mu X. <>X"));
    EXPECT_EQ(t.size(), 3u);
    ASSERT_EQ(t.back_edges().size(), 1u);
    EXPECT_EQ(t.back_edges()[0], std::make_pair(2, 1));
    EXPECT_EQ(t.vertices[1].label.op(), Op::Dia);

    auto p = syntax_tree(parse_mu("p"));
    EXPECT_EQ(p.size(), 1u);
    EXPECT_TRUE(p.back_edges().empty());

    EXPECT_THROW(syntax_tree(Formula::var("X")), InputError);
}

// Back edges go to the successor of the binder: for X that is the disjunction.
TEST(SyntaxTree, NestedFixpoints) {
    auto t = syntax_tree(parse_mu("mu X. (<>X | nu Y. []Y)"));
    // preorder: 0 muX, 1 |, 2 <>, 3 X, 4 nuY, 5 [], 6 Y
    ASSERT_EQ(t.size(), 7u);
    auto be = t.back_edges();
    ASSERT_EQ(be.size(), 2u);
    EXPECT_EQ(be[0], std::make_pair(3, 1));
    EXPECT_EQ(be[1], std::make_pair(6, 5));
    EXPECT_EQ(t.vertices[1].label.op(), Op::Or);
    EXPECT_EQ(t.vertices[5].label.op(), Op::Box);
    EXPECT_EQ(t.fixpoints_above(6), (std::vector<int>{0, 4}));
}

TEST(SyntaxTree, PropertiesOnRandomSentences) {
    testgen::Rng rng(11);
    auto props = testgen::prop_names(2);
    for (int i = 0; i < 300; ++i) {
        Formula f = testgen::random_mu_sentence(rng, testgen::uniform(rng, 1, 14), props);
        auto t = syntax_tree(f);
        EXPECT_EQ(t.size(), size_mu(f));
        EXPECT_EQ(t.tree_edges().size() + 1, t.size());
        for (auto [s, u] : t.back_edges()) {
            const auto& src = t.vertices[s];
            ASSERT_EQ(src.label.op(), Op::Var);
            int binder = t.vertices[u].parent;
            ASSERT_GE(binder, 0);
            EXPECT_TRUE(t.vertices[binder].label.is_fixpoint());
            EXPECT_EQ(t.vertices[binder].children, std::vector<int>{u});
            EXPECT_EQ(t.vertices[binder].label.name(), src.label.name());
            EXPECT_TRUE(t.is_below(s, u));
        }
    }
}
