#pragma once

#include <memory>
#include <optional>
#include <random>

#include "fsg/bisimulation.hpp"
#include "fsg/graph.hpp"
#include "fsg/ml_game.hpp"
#include "fsg/ml_solver.hpp"

namespace fsg {

// Plays a winning move whenever the solver finds one, otherwise a seeded random move.
class SolverS : public MLSAgent {
public:
    SolverS(std::shared_ptr<MLSolver> solver, std::uint64_t seed) : solver_(std::move(solver)), rng_(seed) {}
    MLMove choose(const MLPosition& p) override {
        if (auto m = solver_->winning_move(p)) return *m;
        return random_move(p, rng_);
    }
    std::unique_ptr<MLSAgent> clone() const override { return std::make_unique<SolverS>(*this); }

private:
    std::shared_ptr<MLSolver> solver_;
    std::mt19937_64 rng_;
};

class RandomS : public MLSAgent {
public:
    explicit RandomS(std::uint64_t seed) : rng_(seed) {}
    MLMove choose(const MLPosition& p) override { return random_move(p, rng_); }
    std::unique_ptr<MLSAgent> clone() const override { return std::make_unique<RandomS>(*this); }

private:
    std::mt19937_64 rng_;
};

// Takes a branch the solver marks as a D win when there is one, else branch 1.
class SolverD : public MLDAgent {
public:
    explicit SolverD(std::shared_ptr<MLSolver> solver) : solver_(std::move(solver)) {}
    int respond(const MLPosition& p, const MLMove& m) override {
        if (!std::holds_alternative<OrMove>(m) && !std::holds_alternative<AndMove>(m)) return 0;
        for (int b : {1, 2}) {
            auto next = apply(p, m, b);
            if (auto* t = std::get_if<Terminal>(&next)) {
                if (t->winner == Player::D) return b;
            } else if (solver_->solve(std::get<MLPosition>(next)).winner == Player::D) {
                return b;
            }
        }
        return 1;
    }
    std::unique_ptr<MLDAgent> clone() const override { return std::make_unique<SolverD>(*this); }

private:
    std::shared_ptr<MLSolver> solver_;
};

class RandomD : public MLDAgent {
public:
    explicit RandomD(std::uint64_t seed) : rng_(seed) {}
    int respond(const MLPosition&, const MLMove&) override { return std::uniform_int_distribution<int>(1, 2)(rng_); }
    std::unique_ptr<MLDAgent> clone() const override { return std::make_unique<RandomD>(*this); }

private:
    std::mt19937_64 rng_;
};

// Keeps a cross pair (a, b) that is (m-1)-bisimilar whenever the resource is m.
class BisimD : public MLDAgent {
public:
    BisimD(const MLPosition& p, PointedModel a, PointedModel b, int n)
        : bisim_(std::make_shared<Bisimulation>(set_union(p.A, p.B))), a_(std::move(a)), b_(std::move(b)) {
        require(contains(p.A, a_) && contains(p.B, b_), "pair must lie in A x B");
        require(n >= p.k - 1, "pair must be (k-1)-bisimilar");
        require(p.k <= 0 || bisim_->n_bisimilar(a_, b_, p.k - 1), "pair is not (k-1)-bisimilar");
    }

    int respond(const MLPosition& p, const MLMove& m) override {
        int next = p.k - 2;  // bisimilarity level needed after a modal move
        if (auto* o = std::get_if<OrMove>(&m)) return contains(normalize(o->A1), a_) ? 1 : 2;
        if (auto* o = std::get_if<AndMove>(&m)) return contains(normalize(o->B1), b_) ? 1 : 2;
        if (auto* d = std::get_if<DiaMove>(&m)) {
            a_ = d->image[index_of(p.A, a_)];
            b_ = matching(b_, a_, next);
        } else if (auto* bx = std::get_if<BoxMove>(&m)) {
            b_ = bx->image[index_of(p.B, b_)];
            a_ = matching(a_, b_, next);
        }
        return 0;
    }
    std::unique_ptr<MLDAgent> clone() const override { return std::make_unique<BisimD>(*this); }
    const PointedModel& left() const { return a_; }
    const PointedModel& right() const { return b_; }

private:
    static std::size_t index_of(const ModelSet& s, const PointedModel& pm) {
        auto it = std::lower_bound(s.begin(), s.end(), pm);
        ensure(it != s.end() && *it == pm, "tracked model left the position");
        return static_cast<std::size_t>(it - s.begin());
    }
    // A successor of `from` that is n-bisimilar to `target`.
    PointedModel matching(const PointedModel& from, const PointedModel& target, int n) const {
        for (const auto& s : successors(from))
            if (n < 0 || bisim_->n_bisimilar(s, target, n)) return s;
        if (n < 0) return from;  // resource is exhausted; the pair no longer matters
        throw InvariantViolation("no bisimilar successor: back-and-forth failed");
    }

    std::shared_ptr<Bisimulation> bisim_;
    PointedModel a_, b_;
};

inline bool two_pow_at_most(int k, int chi) { return k < 31 && (1 << k) <= chi; }

// Splits: keep a branch whose separation graph still has chromatic number at
// least 2^resource. After a modal move the next position shares a model on both
// sides, and play continues with BisimD on that pair.
class ColoringD : public MLDAgent {
public:
    explicit ColoringD(const MLPosition& p) {
        auto g = build_graph(p.A, p.B);
        require(two_pow_at_most(p.k, chromatic_number(g)), "coloring strategy needs 2^k <= chi(G(A, B))");
    }

    int respond(const MLPosition& p, const MLMove& m) override {
        if (bisim_) return bisim_->respond(p, m);
        if (auto* o = std::get_if<OrMove>(&m)) {
            if (two_pow_at_most(o->k1, chromatic_number(build_graph(o->A1, p.B)))) return 1;
            ensure(two_pow_at_most(o->k2, chromatic_number(build_graph(o->A2, p.B))), "additive coloring bound failed");
            return 2;
        }
        if (auto* a = std::get_if<AndMove>(&m)) {
            if (two_pow_at_most(a->k1, chromatic_number(build_graph(p.A, a->B1)))) return 1;
            ensure(two_pow_at_most(a->k2, chromatic_number(build_graph(p.A, a->B2))), "multiplicative coloring bound failed");
            return 2;
        }
        if (std::holds_alternative<LitMove>(m)) return 0;
        // Modal move: find a model present on both sides of the next position.
        auto next = std::get<MLPosition>(apply(p, m, 0));
        for (const auto& x : next.A)
            for (const auto& y : next.B)
                if (x.name() == y.name() && bisimilar(x, y)) {
                    bisim_ = std::make_unique<BisimD>(next, x, y, next.k);
                    return 0;
                }
        if (next.k > 0) throw InvariantViolation("modal move left no common model");
        return 0;
    }

    std::unique_ptr<MLDAgent> clone() const override {
        std::unique_ptr<ColoringD> c(new ColoringD());
        if (bisim_) c->bisim_ = std::make_unique<BisimD>(*bisim_);
        return c;
    }
    bool delegated() const { return bisim_ != nullptr; }

private:
    ColoringD() = default;
    std::unique_ptr<BisimD> bisim_;
};

// Searches every S line (all legal moves, zero resource parts included) against
// a fixed D agent. Returns the number of S lines explored; `s_can_win` is set if
// any line ends in an S win.
inline std::size_t exhaustive_s_search(const MLPosition& p, const MLDAgent& d, bool& s_can_win,
                                       std::size_t budget = 10'000'000) {
    std::size_t lines = 0;
    auto go = [&](auto&& self, const MLPosition& pos, const MLDAgent& agent) -> void {
        if (s_can_win) return;
        if (pos.k <= 0) {
            ++lines;
            return;
        }
        for (const auto& m : legal_moves(pos, true)) {
            if (lines > budget) throw BudgetExceeded("exhaustive S search budget exhausted");
            auto dd = agent.clone();
            int branch = dd->respond(pos, m);
            auto next = apply(pos, m, branch);
            if (auto* t = std::get_if<Terminal>(&next)) {
                ++lines;
                if (t->winner == Player::S) {
                    s_can_win = true;
                    return;
                }
                continue;
            }
            self(self, std::get<MLPosition>(next), *dd);
            if (s_can_win) return;
        }
    };
    s_can_win = false;
    go(go, p, d);
    return lines;
}

}  // namespace fsg
