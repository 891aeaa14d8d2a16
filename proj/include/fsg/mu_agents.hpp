#pragma once

#include <map>
#include <memory>
#include <tuple>

#include "fsg/approximant.hpp"
#include "fsg/bisimulation.hpp"
#include "fsg/eval.hpp"
#include "fsg/graph.hpp"
#include "fsg/mu_game.hpp"
#include "fsg/syntax_tree.hpp"

namespace fsg {

// Follows the syntax tree of a separating sentence. The embedding g maps each
// game vertex to the occurrence it stands for; New left models at v satisfy the
// approximant at g(v) and New right models falsify it.
class UniformS : public MuSAgent {
public:
    UniformS(const Formula& phi, const std::vector<PointedModel>& A0, const std::vector<PointedModel>& B0, int k0,
             bool check = true)
        : s_(std::make_shared<Shared>(phi)) {
        if (!check) return;
        require(is_sentence(phi), "uniform strategy needs a sentence with distinct binders");
        require(static_cast<int>(size(phi)) <= k0, "formula is larger than the resource");
        for (const auto& a : A0) require(eval_mu_at(phi, a), "formula fails on left model " + a.name());
        for (const auto& b : B0) require(!eval_mu_at(phi, b), "formula holds on right model " + b.name());
    }

    MuMove choose(const MuPosition& p) override {
        auto g = embedding(p);
        const int v = p.current, s = g[v];
        const auto& node = s_->tree.vertices[s];
        const Formula& f = node.label;
        const int k = p.cur().res;
        auto A = detail::active(p, true), B = detail::active(p, false);
        if (f.is_literal()) return MuLit{f};
        switch (f.op()) {
            case Op::Or:
            case Op::And: {
                bool is_or = f.op() == Op::Or;
                int s1 = node.children[0];
                ClockedSet X1, X2;
                for (const auto& x : is_or ? A : B) (holds(s1, x) == is_or ? X1 : X2).push_back(x);
                int k1 = p.cur().labelled() ? 0 : static_cast<int>(size(s_->tree.vertices[s1].label));
                int k2 = p.cur().labelled() ? 0 : k - 1 - k1;
                if (is_or) return MuOr{X1, X2, k1, k2};
                return MuAnd{X1, X2, k1, k2};
            }
            case Op::Dia:
            case Op::Box: {
                bool dia = f.op() == Op::Dia;
                std::vector<ClockedModel> image;
                for (const auto& x : dia ? A : B) {
                    auto succ = successors_clocked(x);
                    if (succ.empty()) return MuLit{Formula::top()};  // only reachable when the formula does not separate
                    ClockedModel pick = succ.front();
                    for (const auto& y : succ)
                        if (holds(node.children[0], y) == dia) {
                            pick = y;
                            break;
                        }
                    pick.age = Age::New;
                    image.push_back(pick);
                }
                if (dia) return MuDia{image};
                return MuBox{image};
            }
            case Op::Mu:
            case Op::Nu: {
                bool nu = f.op() == Op::Nu;
                std::vector<int> clocks;
                for (auto x : nu ? B : A) {
                    int alpha = 0;
                    for (; alpha < p.clock_max; ++alpha) {
                        x.clocks.set(f.name(), alpha);
                        if (holds(node.children[0], x) != nu) break;
                    }
                    clocks.push_back(alpha);
                }
                return MuBind{nu, f.name(), clocks};
            }
            case Op::Var: {
                bool nu = s_->tree.vertices[node.binder].label.op() == Op::Nu;
                auto S = cm::new_part(nu ? B : A);
                std::vector<int> clocks;
                for (const auto& x : S) {
                    int c = x.clocks.get(f.name());
                    if (c == 0) return MuJump{f.name(), {}};
                    clocks.push_back(c - 1);
                }
                if (cm::new_part(A).empty() && cm::new_part(B).empty()) return MuJump{f.name(), {}};
                return MuJump{f.name(), clocks};
            }
            default: ensure(false, "unexpected operator in syntax tree"); return MuLit{};
        }
    }

    std::unique_ptr<MuSAgent> clone() const override { return std::make_unique<UniformS>(*this); }

    const Formula& formula() const { return s_->phi; }

    // g(v) for every game vertex; children map to children with the same index.
    std::vector<int> embedding(const MuPosition& p) const {
        std::vector<int> g(p.vertices.size(), -1);
        g[0] = 0;
        for (std::size_t v = 1; v < p.vertices.size(); ++v) {
            int u = p.vertices[v].parent;
            ensure(u >= 0 && u < static_cast<int>(v) && g[u] >= 0, "game tree not in creation order");
            const auto& kids = p.vertices[u].children;
            auto i = static_cast<std::size_t>(std::find(kids.begin(), kids.end(), static_cast<int>(v)) - kids.begin());
            const auto& fk = s_->tree.vertices[g[u]].children;
            ensure(i < fk.size(), "game vertex has no counterpart in the syntax tree");
            g[v] = fk[i];
        }
        return g;
    }

    // Asserts the embedding conditions and the satisfaction invariant for New models.
    void check_embedding(const MuPosition& p) {
        auto g = embedding(p);
        for (std::size_t v = 0; v < p.vertices.size(); ++v) {
            const auto& vx = p.vertices[v];
            const auto& node = s_->tree.vertices[g[v]];
            const Formula& f = node.label;
            ensure(static_cast<int>(size(f)) <= vx.res || vx.res == 0, "resource below subformula size at vertex " + std::to_string(v));
            switch (vx.label.kind) {
                case MuKind::None: break;
                case MuKind::Or: ensure(f.op() == Op::Or, "label mismatch"); break;
                case MuKind::And: ensure(f.op() == Op::And, "label mismatch"); break;
                case MuKind::Dia: ensure(f.op() == Op::Dia, "label mismatch"); break;
                case MuKind::Box: ensure(f.op() == Op::Box, "label mismatch"); break;
                case MuKind::Mu: ensure(f.op() == Op::Mu && f.name() == vx.label.var, "label mismatch"); break;
                case MuKind::Nu: ensure(f.op() == Op::Nu && f.name() == vx.label.var, "label mismatch"); break;
                case MuKind::Var:
                    ensure(f.op() == Op::Var && f.name() == vx.label.var, "label mismatch");
                    ensure(g[vx.back] == node.back, "back edge does not follow the syntax tree");
                    break;
                case MuKind::Lit: ensure(f.is_literal(), "label mismatch"); break;
            }
            for (const auto& x : cm::new_part(vx.left))
                ensure(holds(g[v], x), "left model " + cm::describe(x) + " fails its subformula at vertex " + std::to_string(v));
            for (const auto& x : cm::new_part(vx.right))
                ensure(!holds(g[v], x), "right model " + cm::describe(x) + " satisfies its subformula at vertex " + std::to_string(v));
        }
    }

private:
    struct Shared {
        explicit Shared(Formula f) : phi(std::move(f)), tree(syntax_tree(phi)) {}
        Formula phi;
        SyntaxTree tree;
        std::map<const KripkeModel*, std::pair<ModelPtr, std::unique_ptr<ApproximantEvaluator>>> evals;
        std::map<std::tuple<const KripkeModel*, int, Clocks>, WorldSet> memo;
    };

    bool holds(int s, const ClockedModel& x) {
        const KripkeModel* m = x.pm.model.get();
        auto key = std::make_tuple(m, s, x.clocks);
        auto it = s_->memo.find(key);
        if (it == s_->memo.end()) {
            auto& e = s_->evals[m];
            if (!e.second) e = {x.pm.model, std::make_unique<ApproximantEvaluator>(s_->tree, *m)};
            it = s_->memo.emplace(key, e.second->denotation(s, x.clocks)).first;
        }
        return it->second.test(x.pm.point);
    }

    std::shared_ptr<Shared> s_;
};

namespace detail {

inline std::vector<ModelPtr> models_in(const MuPosition& p) {
    std::vector<ModelPtr> out;
    for (const auto& vx : p.vertices)
        for (const auto* side : {&vx.left, &vx.right})
            for (const auto& x : *side)
                if (std::find(out.begin(), out.end(), x.pm.model) == out.end()) out.push_back(x.pm.model);
    return out;
}

}  // namespace detail

// D's clocks are at least the depth of the model (strictly: greater).
inline bool suitable(const MuPosition& p, const ClockedModel& x, bool on_left, bool strict) {
    int d = static_cast<int>(depth(x.pm));
    for (const auto& [var, c] : x.clocks.items()) {
        auto kind = binder_kind(p, var);
        bool d_clock = on_left ? kind == MuKind::Nu : kind == MuKind::Mu;
        if (d_clock && (strict ? c <= d : c < d)) return false;
    }
    return true;
}

// Keeps a bisimilar pair (a, b) with a on the left and b on the right of the
// current vertex, at least one of them New. A literal cannot separate them and
// the empty-jump win is out of reach, so S never wins while such a pair exists.
// Branches follow the pair, modal moves keep every successor, binds set D's
// clocks to the depth and jumps lower them to the depth where possible. When a
// return leaves D's New copy below the depth, the Old copy at the target takes over.
class BisimilarMuD : public MuDAgent {
public:
    explicit BisimilarMuD(const MuPosition& p, bool require_strict = true)
        : bisim_(std::make_shared<Bisimulation>(detail::models_in(p))) {
        for (const auto& m : detail::models_in(p))
            for (std::size_t w = 0; w < m->size(); ++w)
                require(is_acyclic_from(PointedModel(m, static_cast<int>(w))), "bisimilar strategy needs finite tree models");
        bool found = false;
        for (const auto& a : cm::new_part(p.cur().left))
            for (const auto& b : cm::new_part(p.cur().right))
                found = found || (bisim_->bisimilar(a.pm, b.pm) &&
                                  (!require_strict || (suitable(p, a, true, true) && suitable(p, b, false, true))));
        require(found, require_strict ? "needs strictly suitable bisimilar New models at the current vertex"
                                      : "needs bisimilar New models at the current vertex");
    }

    MuResponse respond(const MuPosition& p, const MuMove& m) override {
        auto in = inspect(p, m);
        if (in.need == MuNeed::Branch) {
            int best = 1, best_score = -2;
            for (int i : {1, 2}) {
                auto next = apply_mu(p, m, MuBranch{i});
                int sc = std::holds_alternative<Terminal>(next) ? (std::get<Terminal>(next).winner == Player::D ? 100 : -2)
                                                                : score(std::get<MuPosition>(next));
                if (sc > best_score) best = i, best_score = sc;
            }
            return MuBranch{best};
        }
        if (in.need == MuNeed::Clocks) {
            MuClocks c;
            auto* j = std::get_if<MuJump>(&m);
            for (const auto& x : in.d_side) {
                int d = std::min(static_cast<int>(depth(x.pm)), p.clock_max);
                c.clocks.push_back(j ? std::min(d, x.clocks.get(j->var) - 1) : d);
            }
            return c;
        }
        auto r = d_responses(p, m, {true, 0});
        return r.empty() ? MuResponse{} : r.front();
    }

    void observe(const MuPosition& p) override { ensure(score(p) >= 0, "bisimilar pair lost at vertex " + std::to_string(p.current)); }

    std::unique_ptr<MuDAgent> clone() const override { return std::make_unique<BisimilarMuD>(*this); }

    // Best pair at the current vertex: -1 none; higher is better (suitable, strict, both New).
    int score(const MuPosition& p) const {
        const auto& v = p.cur();
        int best = -1;
        for (const auto& a : v.left)
            for (const auto& b : v.right) {
                if (a.age == Age::Old && b.age == Age::Old) continue;
                if (!bisim_->bisimilar(a.pm, b.pm)) continue;
                int s = 0;
                if (suitable(p, a, true, false) && suitable(p, b, false, false)) s += 4;
                if (suitable(p, a, true, true) && suitable(p, b, false, true)) s += 2;
                if (a.age == Age::New && b.age == Age::New) s += 1;
                best = std::max(best, s);
            }
        return best;
    }

private:
    std::shared_ptr<Bisimulation> bisim_;
};

inline bool pow2_below(int k, int chi, bool strict) {
    if (k >= 31) return false;
    return strict ? (1 << k) < chi : (1 << k) <= chi;
}

// Keeps res(v) < log2 chi(G(L(v), R(v))) over the collections at the current
// vertex; with strict = false the weaker 2^res <= chi is kept instead. The
// first modal move lands on a shared successor on both sides and play
// continues with BisimilarMuD.
class SuccinctnessMuD : public MuDAgent {
public:
    explicit SuccinctnessMuD(const MuPosition& p, bool strict = true) : strict_(strict) {
        require(p.vertices.size() == 1 && !p.cur().labelled(), "succinctness strategy starts at the initial position");
        require(condition(p), "initial resource too large for the chromatic bound");
    }

    MuResponse respond(const MuPosition& p, const MuMove& m) override {
        if (bisim_) return bisim_->respond(p, m);
        auto in = inspect(p, m);
        switch (in.need) {
            case MuNeed::None: return std::monostate{};
            case MuNeed::Branch:
                for (int i : {1, 2}) {
                    auto next = apply_mu(p, m, MuBranch{i});
                    if (std::holds_alternative<Terminal>(next) || condition(std::get<MuPosition>(next))) return MuBranch{i};
                }
                throw InvariantViolation("neither branch keeps the chromatic bound");
            case MuNeed::Clocks: {
                MuClocks c;
                auto* j = std::get_if<MuJump>(&m);
                for (const auto& x : in.d_side)
                    c.clocks.push_back(j ? x.clocks.get(j->var) - 1 : std::min(static_cast<int>(depth(x.pm)), p.clock_max));
                return c;
            }
            case MuNeed::Subsets: {
                auto full = d_responses(p, m, {true, 0}).front();
                auto next = apply_mu(p, m, full);
                if (auto* q = std::get_if<MuPosition>(&next)) hand_over(*q);
                return full;
            }
        }
        return std::monostate{};
    }

    void observe(const MuPosition& p) override {
        if (bisim_) {
            bisim_->observe(p);
            return;
        }
        // A variable directly under its binder collects nothing on one side.
        if (p.cur().label.kind == MuKind::Var) return;
        ensure(condition(p), "chromatic bound violated at vertex " + std::to_string(p.current));
        ++checks_;
    }

    std::unique_ptr<MuDAgent> clone() const override {
        auto c = std::make_unique<SuccinctnessMuD>(*this);
        return c;
    }
    SuccinctnessMuD(const SuccinctnessMuD& o) : strict_(o.strict_), checks_(o.checks_) {
        if (o.bisim_) bisim_ = std::make_unique<BisimilarMuD>(*o.bisim_);
    }

    bool delegated() const { return bisim_ != nullptr; }
    std::size_t checks() const { return checks_; }

    bool condition(const MuPosition& p) const {
        auto L = left_collection(p, p.current), R = right_collection(p, p.current);
        int chi = L.empty() ? 0 : chromatic_number(build_graph(L, R));
        return pow2_below(p.cur().res, chi, strict_);
    }

private:
    void hand_over(const MuPosition& q) {
        for (bool strict : {true, false}) {
            try {
                bisim_ = std::make_unique<BisimilarMuD>(q, strict);
                return;
            } catch (const InputError&) {
            }
            if (q.cur().res > 1) break;  // with more than one move left, strict suitability is needed
        }
        throw InvariantViolation("modal move left no suitable bisimilar pair");
    }

    bool strict_;
    std::size_t checks_ = 0;
    std::unique_ptr<BisimilarMuD> bisim_;
};

// ---------------------------------------------------------------------------
// Exhaustive searches.

struct MuSearchOptions {
    MuResponseOptions responses;
    bool enumerate_initial = true;  // all subset pairs at the first D move
    std::size_t budget = 5'000'000;  // distinct positions expanded
    bool check_invariants = true;
    bool stop_at_d_win = true;
    std::function<void(const MuPosition&)> on_position;  // called once per distinct non-terminal position
};

struct MuSearchResult {
    std::size_t positions = 0;
    std::size_t s_wins = 0, d_wins = 0;  // terminal outcomes met while expanding
    bool d_can_win = false;
    std::string first_d_win;  // reason of the first D-won line, for diagnostics
};

// Canonical text of a position up to Old models. Old models never influence a
// later move: labelled vertices act on New models only and literals are only
// played at unlabelled vertices, which hold no Old models.
inline std::string position_key(const MuPosition& p) {
    std::string k = std::to_string(p.current) + ";";
    auto side = [&](const ClockedSet& s) {
        for (const auto& x : s) {
            if (x.age == Age::Old) continue;
            k += std::to_string(x.pm.model->serial()) + "." + std::to_string(x.pm.point);
            for (const auto& [v, c] : x.clocks.items()) k += v + "=" + std::to_string(c) + ",";
            k += " ";
        }
        k += "|";
    };
    for (const auto& v : p.vertices) {
        k += std::to_string(v.parent) + ":" + std::to_string(static_cast<int>(v.label.kind)) + v.label.var + ":" + std::to_string(v.back) +
             ":" + std::to_string(v.res) + ":";
        side(v.left);
        side(v.right);
        k += "/";
    }
    return k;
}

// Plays a memoryless S agent against every D response sequence. Identical
// positions are expanded once, so this decides whether some D line wins.
// Memoized search for D wins against a positional S strategy. The memo is
// shared by every query, so a D agent can consult it move after move.
class DSearch {
public:
    DSearch(const MuSAgent& s, MuSearchOptions opt) : s_(s.clone()), opt_(std::move(opt)) {}

    bool wins_from(const MuPosition& p) {
        if (p.cur().res <= 0) return leaf({Player::D, "resource-exhausted"});
        if (!s_can_move(p)) return leaf({Player::D, "stuck"});
        auto key = position_key(p);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++res_.positions > opt_.budget) throw BudgetExceeded("exhaustive D search budget exhausted");
        if (opt_.check_invariants) check_position(p);
        if (opt_.on_position) opt_.on_position(p);
        MuMove m = s_->clone()->choose(p);
        auto in = inspect(p, m);
        bool d_wins = false;
        if (in.terminal) {
            d_wins = leaf(*in.terminal);
        } else {
            for (const auto& r : d_responses(p, m, opt_.responses)) {
                d_wins = wins_after(p, m, r) || d_wins;
                if (d_wins && opt_.stop_at_d_win) break;
            }
        }
        memo_.emplace(std::move(key), d_wins);
        return d_wins;
    }

    bool wins_after(const MuPosition& p, const MuMove& m, const MuResponse& r) {
        auto next = apply_mu(p, m, r);
        if (auto* t = std::get_if<Terminal>(&next)) return leaf(*t);
        const auto& q = std::get<MuPosition>(next);
        if (opt_.check_invariants)
            ensure(measure_decreased(termination_measure(p), termination_measure(q)), "termination measure did not decrease");
        return wins_from(q);
    }

    // Every subset pair for the first D move, or just the full sets.
    std::vector<MuInitial> initial_options(const MuPosition& p0) const {
        std::vector<MuInitial> starts;
        const auto& L = p0.vertices[0].left;
        const auto& R = p0.vertices[0].right;
        std::size_t n = L.size() + R.size();
        if (!opt_.enumerate_initial || opt_.responses.dominant_only || n > opt_.responses.max_subset_elements) {
            starts.push_back(keep_all(p0));
            return starts;
        }
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            MuInitial r;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) (i < L.size() ? r.A : r.B).push_back(i < L.size() ? L[i] : R[i - L.size()]);
            starts.push_back(std::move(r));
        }
        return starts;
    }

    const MuSearchOptions& options() const { return opt_; }
    MuSearchResult& result() { return res_; }

private:
    bool leaf(const Terminal& t) {
        if (t.winner == Player::S) {
            ++res_.s_wins;
            return false;
        }
        if (res_.d_wins++ == 0) res_.first_d_win = t.reason;
        return true;
    }

    std::shared_ptr<const MuSAgent> s_;
    MuSearchOptions opt_;
    MuSearchResult res_;
    std::map<std::string, bool> memo_;  // position -> D can win
};

inline MuSearchResult exhaustive_d_search(const MuPosition& p0, const MuSAgent& s, const MuSearchOptions& opt = {}) {
    DSearch search(s, opt);
    auto& res = search.result();
    for (const auto& st : search.initial_options(p0)) {
        res.d_can_win = search.wins_from(apply_initial(p0, st)) || res.d_can_win;
        if (res.d_can_win && opt.stop_at_d_win) break;
    }
    return res;
}

// Plays responses that the search proves winning against a known positional S;
// falls back to the first response when none is.
class SearchMuD : public MuDAgent {
public:
    SearchMuD(const MuSAgent& s, MuSearchOptions opt = {}) : search_(std::make_shared<DSearch>(s, std::move(opt))) {}

    MuInitial initial(const MuPosition& p0) override {
        auto starts = search_->initial_options(p0);
        for (const auto& st : starts)
            if (search_->wins_from(apply_initial(p0, st))) return st;
        return keep_all(p0);
    }
    MuResponse respond(const MuPosition& p, const MuMove& m) override {
        auto rs = d_responses(p, m, search_->options().responses);
        for (const auto& r : rs)
            if (search_->wins_after(p, m, r)) return r;
        return rs.empty() ? MuResponse{} : rs.front();
    }
    std::unique_ptr<MuDAgent> clone() const override { return std::make_unique<SearchMuD>(*this); }

private:
    std::shared_ptr<DSearch> search_;
};

struct MuSSearchResult {
    std::size_t lines = 0;
    bool s_can_win = false;
    MuMoveOptions cap;
};

// Tries every S move from a capped alphabet against a fixed D agent.
inline MuSSearchResult exhaustive_s_search_mu(const MuPosition& p0, const MuDAgent& d, const MuMoveOptions& cap = {},
                                              std::size_t budget = 5'000'000) {
    MuSSearchResult res;
    res.cap = cap;
    auto go = [&](auto&& self, const MuPosition& p, const MuDAgent& agent) -> void {
        if (res.s_can_win) return;
        if (p.cur().res <= 0 || !s_can_move(p)) {
            ++res.lines;
            return;
        }
        auto probe = agent.clone();
        probe->observe(p);
        for (const auto& m : legal_s_moves(p, cap)) {
            if (res.lines > budget) throw BudgetExceeded("exhaustive S search budget exhausted");
            auto dd = probe->clone();
            auto in = inspect(p, m);
            MuResponse r;
            if (!in.terminal) {
                r = dd->respond(p, m);
                check_response(p, m, in, r);
            }
            auto next = apply_mu(p, m, r);
            if (auto* t = std::get_if<Terminal>(&next)) {
                ++res.lines;
                if (t->winner == Player::S) {
                    res.s_can_win = true;
                    return;
                }
                continue;
            }
            self(self, std::get<MuPosition>(next), *dd);
            if (res.s_can_win) return;
        }
    };
    auto d0 = d.clone();
    go(go, apply_initial(p0, d0->initial(p0)), *d0);
    return res;
}

}  // namespace fsg
