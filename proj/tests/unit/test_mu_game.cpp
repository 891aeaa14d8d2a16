#include <gtest/gtest.h>

#include "fsg/cd_models.hpp"
#include "fsg/mu_agents.hpp"
#include "fsg/parser.hpp"
#include "support/generators.hpp"

using namespace fsg;

namespace {

// c0 -> c1 -> ... -> c{len}, with p at the last world when `p_at_end`.
PointedModel chain(int len, bool p_at_end) {
    std::vector<std::string> w;
    std::vector<KripkeModel::Edge> e;
    for (int i = 0; i <= len; ++i) w.push_back("c" + std::to_string(i));
    for (int i = 0; i < len; ++i) e.emplace_back(w[i], w[i + 1]);
    std::map<std::string, std::vector<std::string>> val;
    val["p"] = p_at_end ? std::vector<std::string>{w.back()} : std::vector<std::string>{};
    return PointedModel(KripkeModel::make(w, e, val), 0);
}

MuPosition start(const std::vector<PointedModel>& A, const std::vector<PointedModel>& B, int k) {
    auto p = initial_position(A, B, k);
    return apply_initial(p, keep_all(p));
}

MuPosition step(const MuPosition& p, const MuMove& m, const MuResponse& r = {}) {
    auto next = apply_mu(p, m, r);
    EXPECT_TRUE(std::holds_alternative<MuPosition>(next));
    return std::get<MuPosition>(next);
}

Terminal finish(const MuPosition& p, const MuMove& m, const MuResponse& r = {}) {
    auto next = apply_mu(p, m, r);
    EXPECT_TRUE(std::holds_alternative<Terminal>(next));
    return std::get<Terminal>(next);
}

std::vector<PointedModel> random_side(testgen::Rng& rng, int max_models, int max_worlds, const std::vector<std::string>& props) {
    std::vector<PointedModel> out;
    int n = testgen::uniform(rng, 1, max_models);
    for (int i = 0; i < n; ++i) out.push_back(testgen::random_pointed(rng, max_worlds, props));
    return normalize(out);
}

// Plays a fixed list of moves, then literals.
class ScriptS : public MuSAgent {
public:
    explicit ScriptS(std::vector<std::function<MuMove(const MuPosition&)>> s) : script_(std::move(s)) {}
    MuMove choose(const MuPosition& p) override {
        if (i_ < script_.size()) return script_[i_++](p);
        return MuLit{Formula::top()};
    }
    std::unique_ptr<MuSAgent> clone() const override { return std::make_unique<ScriptS>(*this); }

private:
    std::vector<std::function<MuMove(const MuPosition&)>> script_;
    std::size_t i_ = 0;
};

// Random moves that avoid modalities, so collections stay defined.
class NoModalS : public MuSAgent {
public:
    explicit NoModalS(std::uint64_t seed) : rng_(seed) {}
    MuMove choose(const MuPosition& p) override {
        while (true) {
            MuMove m = random_s_move(p, rng_);
            if (std::holds_alternative<MuDia>(m) || std::holds_alternative<MuBox>(m)) continue;
            if (std::holds_alternative<MuLit>(m) && testgen::coin(rng_, 0.8)) continue;
            return m;
        }
    }
    std::unique_ptr<MuSAgent> clone() const override { return std::make_unique<NoModalS>(*this); }

private:
    std::mt19937_64 rng_;
};

MuClocks clocks(std::vector<int> c) { return MuClocks{std::move(c)}; }

}  // namespace

TEST(MuGame, InitialPosition) {
    auto a = chain(2, true), b = chain(1, false);
    auto p = initial_position({a}, {b}, 5);
    ASSERT_EQ(p.vertices.size(), 1u);
    EXPECT_EQ(p.cur().res, 5);
    EXPECT_FALSE(p.cur().labelled());
    EXPECT_EQ(p.clock_max, 4);
    for (const auto* side : {&p.cur().left, &p.cur().right})
        for (const auto& x : *side) {
            EXPECT_TRUE(x.clocks.empty());
            EXPECT_EQ(x.age, Age::New);
        }
}

TEST(MuGame, ZeroResourceIsADWin) {
    auto p = initial_position({chain(1, true)}, {chain(1, false)}, 0);
    RandomMuS s(1);
    GreedyMuD d;
    auto t = play_mu(p, s, d);
    EXPECT_EQ(t.outcome.winner, Player::D);
    EXPECT_TRUE(t.steps.empty());
}

TEST(MuGame, EmptySetsLoseToAnyLiteral) {
    auto p = start({}, {}, 1);
    for (const auto& l : literals_for(p.props)) EXPECT_EQ(finish(p, MuLit{l}).winner, Player::S);
}

TEST(MuGame, FirstResponseChoosesSubsets) {
    auto p = initial_position({chain(1, true), chain(2, true)}, {chain(1, false)}, 3);
    ClockedSet A{p.vertices[0].left[0]};
    auto q = apply_initial(p, {A, {}});
    EXPECT_EQ(q.cur().left.size(), 1u);
    EXPECT_TRUE(q.cur().right.empty());
    ClockedModel foreign{chain(3, false), {}, Age::New};
    EXPECT_THROW(apply_initial(p, {{foreign}, {}}), InputError);
}

TEST(MuGame, LiteralMove) {
    auto p = start({chain(0, true)}, {chain(0, false)}, 1);
    EXPECT_EQ(finish(p, MuLit{Formula::prop("p")}).winner, Player::S);
    EXPECT_EQ(finish(p, MuLit{Formula::neg_prop("p")}).winner, Player::D);
    EXPECT_EQ(finish(p, MuLit{Formula::top()}).winner, Player::D);
    EXPECT_THROW(inspect(p, MuLit{Formula::prop("q")}), InputError);
}

TEST(MuGame, IllegalMovesAreRejected) {
    auto a = chain(2, true), b = chain(2, false);
    auto p = start({a}, {b}, 5);
    const auto& A = p.cur().left;
    EXPECT_THROW(inspect(p, MuOr{A, {}, 2, 3}), InputError);  // k1 + k2 + 1 != k
    EXPECT_THROW(inspect(p, MuOr{A, {}, 0, 4}), InputError);  // zero part
    EXPECT_THROW(inspect(p, MuOr{{}, {}, 2, 2}), InputError);  // not a cover
    EXPECT_THROW(inspect(p, MuBind{false, "X", {p.clock_max + 1}}), InputError);
    EXPECT_THROW(inspect(p, MuDia{{A[0]}}), InputError);  // not a successor
    auto q = step(p, MuBind{false, "X", {1}}, clocks({1}));
    EXPECT_THROW(inspect(q, MuBind{true, "X", {1}}), InputError);  // binder not fresh
    EXPECT_NO_THROW(inspect(q, MuBind{true, "Y", {1}}));
}

TEST(MuGame, NoDiamondWithDeadEnd) {
    auto p = start({chain(0, true), chain(1, true)}, {chain(1, false)}, 3);
    for (const auto& m : legal_s_moves(p)) EXPECT_FALSE(std::holds_alternative<MuDia>(m));
    bool box = false;
    for (const auto& m : legal_s_moves(p)) box = box || std::holds_alternative<MuBox>(m);
    EXPECT_TRUE(box);
}

TEST(MuGame, BindAssignsClocksPerSide) {
    auto p = start({chain(2, true)}, {chain(2, false)}, 4);
    auto in = inspect(p, MuBind{false, "X", {3}});
    EXPECT_EQ(in.need, MuNeed::Clocks);
    ASSERT_EQ(in.d_side.size(), 1u);
    auto q = step(p, MuBind{false, "X", {3}}, clocks({1}));
    EXPECT_EQ(q.cur().res, 3);
    EXPECT_EQ(q.cur().left[0].clocks.get("X"), 3);
    EXPECT_EQ(q.cur().right[0].clocks.get("X"), 1);
    EXPECT_EQ(q.vertices[0].label.kind, MuKind::Mu);
    EXPECT_EQ(q.vertices[0].left[0].age, Age::Old);
}

TEST(MuGame, JumpWithoutBinderIsADWin) {
    auto p = start({chain(1, true)}, {chain(1, false)}, 3);
    auto t = finish(p, MuJump{"X", {}});
    EXPECT_EQ(t.winner, Player::D);
    EXPECT_EQ(t.reason, "no-binder");
}

TEST(MuGame, JumpWithNothingNewIsAnSWin) {
    auto p = start({}, {}, 3);
    auto q = step(p, MuBind{false, "X", {}}, clocks({}));
    auto t = finish(q, MuJump{"X", {}});
    EXPECT_EQ(t.winner, Player::S);
    EXPECT_EQ(t.reason, "empty-jump");
}

TEST(MuGame, ExhaustedMuClockIsADWin) {
    auto p = start({chain(1, true)}, {chain(1, false)}, 3);
    auto q = step(p, MuBind{false, "X", {0}}, clocks({2}));
    auto t = finish(q, MuJump{"X", {}});
    EXPECT_EQ(t.winner, Player::D);
    EXPECT_EQ(t.reason, "clock-exhausted");
    // For a greatest fixpoint the right side carries S's clocks.
    auto r = step(p, MuBind{true, "Y", {0}}, clocks({2}));
    EXPECT_EQ(finish(r, MuJump{"Y", {}}).reason, "clock-exhausted");
}

TEST(MuGame, JumpDropsRightModelsAtClockZero) {
    auto p = start({chain(2, true)}, {chain(2, false)}, 4);
    auto q = step(p, MuBind{false, "X", {2}}, clocks({0}));
    auto in = inspect(q, MuJump{"X", {1}});
    EXPECT_TRUE(in.d_side.empty());
    auto r = step(q, MuJump{"X", {1}}, clocks({}));
    EXPECT_EQ(r.current, q.current);
    EXPECT_EQ(r.cur().label.kind, MuKind::Var);
    EXPECT_TRUE(cm::new_part(r.cur().right).empty());
    ASSERT_EQ(cm::new_part(r.cur().left).size(), 1u);
    EXPECT_EQ(cm::new_part(r.cur().left)[0].clocks.get("X"), 1);
    EXPECT_EQ(r.cur().res, q.cur().res);
}

TEST(MuGame, JumpResetsInnerClocks) {
    auto p = start({chain(2, true)}, {chain(2, false)}, 6);
    auto q = step(p, MuBind{false, "X", {3}}, clocks({3}));
    q = step(q, MuBind{true, "Y", {2}}, clocks({2}));
    auto r = step(q, MuJump{"X", {2}}, clocks({1}));
    EXPECT_EQ(r.current, 1);
    for (const auto& x : cm::new_part(r.cur().left)) EXPECT_FALSE(x.clocks.has("Y"));
    check_position(r);
}

TEST(MuGame, LabelledOrSplitsOnlyNewModels) {
    auto a = chain(2, true), b = chain(2, false);
    auto p = start({a}, {b}, 6);
    p = step(p, MuBind{false, "X", {3}}, clocks({3}));
    const int u = p.current;
    auto A = p.cur().left;
    p = step(p, MuOr{A, A, 2, 2}, MuBranch{2});
    const int v1 = p.vertices[u].children[0];
    p = step(p, MuJump{"X", {2}}, clocks({2}));
    ASSERT_EQ(p.current, u);
    EXPECT_EQ(p.cur().left.size(), 2u);  // Old copy with clock 3, New copy with clock 2
    auto Anew = cm::new_part(p.cur().left);
    auto Bnew = cm::new_part(p.cur().right);
    ASSERT_EQ(Anew.size(), 1u);
    EXPECT_THROW(inspect(p, MuOr{p.cur().left, {}, 0, 0}), InputError);
    EXPECT_THROW(inspect(p, MuAnd{p.cur().right, {}, 0, 0}), InputError);  // label dictates or
    auto before = p.vertices.size();
    auto q = step(p, MuOr{Anew, {}, 0, 0}, MuBranch{1});
    EXPECT_EQ(q.vertices.size(), before);
    EXPECT_EQ(q.current, v1);
    EXPECT_EQ(q.cur().res, 2);
    for (const auto& x : Bnew) EXPECT_TRUE(std::binary_search(q.cur().right.begin(), q.cur().right.end(), x));
    for (const auto& x : cm::aged(p.cur().right)) {
        if (x.clocks.get("X") == 2) {
            EXPECT_FALSE(std::binary_search(q.cur().right.begin(), q.cur().right.end(), x));
        }
    }
    EXPECT_TRUE(cm::new_part(q.vertices[u].left).empty());
    check_position(q);
}

TEST(MuGame, DResponseEnumeration) {
    auto p = start({chain(2, true)}, {chain(2, false), chain(1, false)}, 4);
    auto box = legal_s_moves(p);
    MuMove m = MuBox{};
    for (const auto& x : box)
        if (std::holds_alternative<MuBox>(x)) m = x;
    auto all = d_responses(p, m);
    EXPECT_EQ(all.size(), 8u);  // one left successor, two right images
    EXPECT_EQ(d_responses(p, m, {true, 12}).size(), 1u);
    auto bind = d_responses(p, MuBind{false, "X", {1}});
    EXPECT_EQ(bind.size(), static_cast<std::size_t>((p.clock_max + 1) * (p.clock_max + 1)));
}

TEST(MuGame, JsonDump) {
    auto p = start({chain(1, true)}, {chain(1, false)}, 3);
    auto q = step(p, MuBind{false, "X", {1}}, clocks({1}));
    auto j = position_json(q);
    EXPECT_EQ(j["current"], 1);
    EXPECT_EQ(j["vertices"][0]["label"], "mu X");
    EXPECT_EQ(j["vertices"][1]["left"][0]["clocks"]["X"], 1);
    EXPECT_EQ(mu_move_json(MuJump{"X", {0}})["move"], "var");
}

TEST(MuPlay, RandomPlaysTerminateWithDecreasingMeasure) {
    testgen::Rng rng(7);
    auto props = testgen::prop_names(1);
    std::size_t plays = 0, jumps = 0;
    for (int i = 0; i < 2000; ++i) {
        auto A = random_side(rng, 2, 3, props), B = random_side(rng, 2, 3, props);
        int k = testgen::uniform(rng, 1, 6);
        RandomMuS s(rng());
        RandomMuD d(rng());
        auto t = play_mu(initial_position(A, B, k), s, d, {100000, true, true, false});
        ++plays;
        bool jumped = false;
        for (const auto& st : t.steps) jumped = jumped || std::holds_alternative<MuJump>(st.move);
        jumps += jumped;
        if (!jumped) {
            EXPECT_LE(t.steps.size(), static_cast<std::size_t>(k));
        }
    }
    EXPECT_EQ(plays, 2000u);
    EXPECT_GT(jumps, 100u);
}

TEST(MuPlay, CollectionsGrowBetweenReturns) {
    testgen::Rng rng(11);
    auto props = testgen::prop_names(1);
    std::size_t checked = 0;
    for (int i = 0; i < 1500; ++i) {
        auto A = random_side(rng, 2, 3, props), B = random_side(rng, 2, 3, props);
        NoModalS s(rng());
        RandomMuD d(rng());
        auto t = play_mu(initial_position(A, B, testgen::uniform(rng, 2, 6)), s, d, {100000, true, true, true});
        checked += t.steps.size();
    }
    EXPECT_GT(checked, 1000u);
}

// A labelled and can park the right models at a nu-variable leaf, which
// collects nothing on the right, so the collection above it shrinks.
TEST(MuCollections, VariableLeafChildCanShrinkCollection) {
    auto a = chain(1, true), b = chain(1, false);
    auto p = start({a}, {b}, 6);
    p = step(p, MuBind{true, "X", {3}}, clocks({3}));
    const int u = p.current;
    EXPECT_EQ(right_collection(p, u), ModelSet{b});
    p = step(p, MuAnd{p.cur().right, {}, 2, 2}, MuBranch{1});
    p = step(p, MuJump{"X", {2}}, clocks({2}));
    ASSERT_EQ(p.current, u);
    auto q = step(p, MuAnd{cm::new_part(p.cur().right), {}, 0, 0}, MuBranch{2});
    EXPECT_TRUE(right_collection(q, u).empty());
    EXPECT_TRUE(new_at_variable_leaf(q));
}

TEST(MuPlay, MeasureOrdering) {
    MuMeasure a, b;
    a.tokens = {{{3, 1000}}};
    b.tokens = {{{2, 1000}}, {{2, 1000}}, {{1, 1000}}};
    EXPECT_TRUE(measure_decreased(a, b));
    EXPECT_FALSE(measure_decreased(b, a));
    a.res = 2, b.res = 1;
    b.tokens = a.tokens;
    EXPECT_TRUE(measure_decreased(a, b));
}

TEST(MuCollections, Clauses) {
    auto a = chain(1, true), b = chain(1, false), c = chain(2, true);
    auto p = start({a, c}, {b}, 6);
    EXPECT_EQ(left_collection(p, 0), normalize(ModelSet{a, c}));
    EXPECT_EQ(right_collection(p, 0), ModelSet{b});
    auto q = step(p, MuBind{false, "X", {2, 2}}, clocks({2}));
    auto A = q.cur().left;
    auto r = step(q, MuOr{{A[0]}, {A[1]}, 2, 2}, MuBranch{1});
    EXPECT_EQ(left_collection(r, 1), normalize(ModelSet{a, c}));  // union over or
    EXPECT_EQ(right_collection(r, 1), ModelSet{b});                // intersection over or
    // A mu-variable leaf collects nothing on the left and everything on the right.
    auto s = step(r, MuJump{"X", {1}}, clocks({1}));
    int leaf = r.current;
    EXPECT_TRUE(left_collection(s, leaf).empty());
    EXPECT_EQ(right_collection(s, leaf), ModelSet{b});
    auto t = step(r, MuDia{{successors_clocked(r.cur().left[0])[0]}}, MuSubsets{});
    EXPECT_THROW(left_collection(t, 0), InputError);
}

TEST(MuUniform, ChainExampleBeatsEveryD) {
    Formula phi = parse_mu("mu X. (p | <>X)");
    auto a = chain(2, true), b = chain(2, false);
    UniformS s(phi, {a}, {b}, 5);
    auto p0 = initial_position({a}, {b}, 5);
    MuSearchOptions opt;
    opt.on_position = [&](const MuPosition& p) {
        auto copy = s;
        copy.check_embedding(p);
    };
    auto r = exhaustive_d_search(p0, s, opt);
    EXPECT_FALSE(r.d_can_win) << r.first_d_win;
    EXPECT_EQ(r.d_wins, 0u);
    EXPECT_GT(r.s_wins, 10u);
}

TEST(MuUniform, BindClockIsTheFixpointStage) {
    Formula phi = parse_mu("mu X. (p | <>X)");
    auto a = chain(2, true), b = chain(2, false);
    UniformS s(phi, {a}, {b}, 5);
    auto p = start({a}, {b}, 5);
    auto m = s.choose(p);
    ASSERT_TRUE(std::holds_alternative<MuBind>(m));
    EXPECT_EQ(std::get<MuBind>(m).clocks, std::vector<int>{2});
    auto a1 = chain(1, true);
    UniformS s1(phi, {a1}, {b}, 5);
    EXPECT_EQ(std::get<MuBind>(s1.choose(start({a1}, {b}, 5))).clocks, std::vector<int>{1});
}

TEST(MuUniform, LiteralFormulaPlaysLiteral) {
    auto a = chain(0, true), b = chain(0, false);
    UniformS s(Formula::prop("p"), {a}, {b}, 1);
    GreedyMuD d;
    auto t = play_mu(initial_position({a}, {b}, 1), s, d);
    EXPECT_EQ(t.outcome.winner, Player::S);
    EXPECT_EQ(t.steps.size(), 1u);
}

TEST(MuUniform, PreconditionsChecked) {
    auto a = chain(2, true), b = chain(2, false);
    Formula phi = parse_mu("mu X. (p | <>X)");
    EXPECT_THROW(UniformS(phi, {b}, {a}, 5), InputError);
    EXPECT_THROW(UniformS(phi, {a}, {b}, 4), InputError);
    EXPECT_THROW(UniformS(Formula::var("X"), {a}, {b}, 4), InputError);
}

TEST(MuUniform, RandomCorpusNeverLoses) {
    testgen::Rng rng(23);
    auto props = testgen::prop_names(1);
    int instances = 0;
    for (int i = 0; i < 3000 && instances < 150; ++i) {
        int sz = testgen::uniform(rng, 1, 5);
        Formula phi = i % 2 ? testgen::random_mu_sentence(rng, sz, props) : testgen::random_fixpoint_sentence(rng, std::max(sz, 2), props);
        auto A = random_side(rng, 2, 3, props), B = random_side(rng, 2, 3, props);
        if (!separates(phi, A, B)) continue;
        ++instances;
        int k0 = static_cast<int>(size(phi)) + testgen::uniform(rng, 0, 1);
        UniformS s(phi, A, B, k0);
        MuSearchOptions opt;
        opt.responses.max_clocks_only = true;
        opt.on_position = [&](const MuPosition& p) {
            auto copy = s;
            copy.check_embedding(p);
        };
        auto r = exhaustive_d_search(initial_position(A, B, k0), s, opt);
        EXPECT_FALSE(r.d_can_win) << print(phi) << " " << r.first_d_win;
    }
    EXPECT_GE(instances, 150);
}

// Keeping every model and taking the largest clocks never costs D a win.
TEST(MuUniform, DominantResponsesFindTheSameDWins) {
    testgen::Rng rng(31);
    auto props = testgen::prop_names(1);
    int compared = 0, d_can_win = 0;
    for (int i = 0; i < 300; ++i) {
        int sz = testgen::uniform(rng, 2, 4);
        Formula phi = testgen::random_fixpoint_sentence(rng, sz, props);
        auto A = random_side(rng, 2, 2, props), B = random_side(rng, 2, 2, props);
        int k0 = static_cast<int>(size(phi));
        UniformS s(phi, A, B, k0, false);
        auto p0 = initial_position(A, B, k0);
        MuSearchOptions full, dom;
        dom.responses.dominant_only = true;
        auto rf = exhaustive_d_search(p0, s, full);
        auto rd = exhaustive_d_search(p0, s, dom);
        EXPECT_EQ(rf.d_can_win, rd.d_can_win) << print(phi);
        EXPECT_EQ(rd.d_can_win, !separates(phi, A, B)) << print(phi);
        ++compared;
        d_can_win += rf.d_can_win;
    }
    EXPECT_EQ(compared, 300);
    EXPECT_GT(d_can_win, 25);
}

TEST(MuBisimilar, Preconditions) {
    auto a = chain(2, false), b = chain(1, false);
    EXPECT_THROW(BisimilarMuD(start({a}, {b}, 3)), InputError);
    auto loop = PointedModel(KripkeModel::make({"x"}, {{"x", "x"}}, {}), 0);
    EXPECT_THROW(BisimilarMuD(start({loop}, {loop}, 3)), InputError);
    EXPECT_NO_THROW(BisimilarMuD(start({a}, {chain(2, false)}, 3)));
}

TEST(MuBisimilar, LiteralCannotSeparate) {
    auto a = chain(2, true), b = chain(2, true);
    auto p = start({a}, {b}, 3);
    BisimilarMuD d(p);
    for (const auto& l : literals_for(p.props)) EXPECT_EQ(finish(p, MuLit{l}).winner, Player::D);
}

TEST(MuBisimilar, LoopingJumpsRunOutOfClock) {
    auto a = chain(2, true), b = chain(2, true);
    auto p0 = initial_position({a}, {b}, 4);
    std::vector<std::function<MuMove(const MuPosition&)>> script{[](const MuPosition& p) { return MuBind{false, "X", {std::vector<int>(1, p.clock_max)}}; }};
    for (int i = 0; i < 10; ++i)
        script.push_back([](const MuPosition& p) {
            auto S = cm::new_part(p.cur().left);
            std::vector<int> c;
            for (const auto& x : S) c.push_back(std::max(0, x.clocks.get("X") - 1));
            return MuJump{"X", c};
        });
    ScriptS s(script);
    BisimilarMuD d(apply_initial(p0, keep_all(p0)));
    auto t = play_mu(p0, s, d);
    EXPECT_EQ(t.outcome.winner, Player::D);
    EXPECT_EQ(t.outcome.reason, "clock-exhausted");
}

TEST(MuBisimilar, WinsAgainstBoundedExhaustiveS) {
    auto a = chain(2, true), b = chain(2, true);
    std::map<std::string, std::vector<std::string>> val{{"p", {"z"}}};
    auto fork = PointedModel(KripkeModel::make({"r", "x", "y", "z"}, {{"r", "x"}, {"r", "y"}, {"x", "z"}}, val), 0);
    auto p0 = initial_position({a, fork}, {b}, 4);
    BisimilarMuD d(apply_initial(p0, keep_all(p0)));
    MuMoveOptions cap;
    cap.clock_menu = {0, 2, p0.clock_max};
    cap.uniform_clocks = true;
    auto r = exhaustive_s_search_mu(p0, d, cap);
    EXPECT_FALSE(r.s_can_win);
    EXPECT_GT(r.lines, 1000u);
}

TEST(MuSuccinctness, FS1OnC2D2) {
    auto C = build_C(2), D = build_D(2);
    auto p0 = initial_position(C, D, 1);
    SuccinctnessMuD d(p0);
    auto init = d.initial(p0);
    EXPECT_EQ(init.A.size(), 4u);
    EXPECT_EQ(init.B.size(), 6u);
    MuMoveOptions cap;
    cap.clock_menu = {0, 1, p0.clock_max};
    cap.max_images = 64;
    auto r = exhaustive_s_search_mu(p0, d, cap);
    EXPECT_FALSE(r.s_can_win);
    EXPECT_GT(r.lines, 10u);
}

TEST(MuSuccinctness, FS2OnC2D2NeedsTheWeakBound) {
    auto C = build_C(2), D = build_D(2);
    auto p0 = initial_position(C, D, 2);
    EXPECT_THROW(SuccinctnessMuD(p0, true), InputError);
    SuccinctnessMuD d(p0, false);
    MuMoveOptions cap;
    cap.clock_menu = {0, 1, p0.clock_max};
    cap.uniform_clocks = true;
    cap.max_images = 16;
    auto r = exhaustive_s_search_mu(p0, d, cap);
    EXPECT_FALSE(r.s_can_win);
}

TEST(MuSuccinctness, ModalMoveHandsOverToBisimilarD) {
    auto C = build_C(2), D = build_D(2);
    auto p0 = initial_position(C, D, 2);
    SuccinctnessMuD d(p0, false);
    auto p = apply_initial(p0, d.initial(p0));
    std::vector<ClockedModel> img;
    for (const auto& x : p.cur().right) img.push_back([&] {
        auto y = successors_clocked(x)[0];
        y.age = Age::New;
        return y;
    }());
    MuMove m = MuBox{img};
    auto r = d.respond(p, m);
    EXPECT_TRUE(d.delegated());
    auto q = step(p, m, r);
    EXPECT_NO_THROW(d.observe(q));
}

TEST(MuSuccinctness, C3UpToResourceThree) {
    auto C = build_C(3), D = build_D(3);
    for (int k = 1; k <= 3; ++k) {
        auto p0 = initial_position(C, D, k);
        SuccinctnessMuD d(p0);
        MuMoveOptions cap;
        cap.clock_menu = {0, p0.clock_max};
        cap.uniform_clocks = true;
        cap.max_images = 4;
        cap.max_covers = 40;
        cap.seed = 5;
        auto r = exhaustive_s_search_mu(p0, d, cap, 20'000'000);
        EXPECT_FALSE(r.s_can_win) << k;
    }
}
