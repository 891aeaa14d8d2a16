#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fsg/eval.hpp"
#include "fsg/formula.hpp"
#include "fsg/kripke.hpp"

namespace fsg {

using ModelSet = std::vector<PointedModel>;  // sorted, duplicate free

inline ModelSet normalize(ModelSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool contains(const ModelSet& s, const PointedModel& pm) { return std::binary_search(s.begin(), s.end(), pm); }

inline bool is_subset(const ModelSet& a, const ModelSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline ModelSet set_union(const ModelSet& a, const ModelSet& b) {
    ModelSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline ModelSet all_successors(const ModelSet& s) {
    ModelSet out;
    for (const auto& pm : s)
        for (const auto& x : successors(pm)) out.push_back(x);
    return normalize(out);
}

struct MLPosition {
    int k = 0;
    ModelSet A, B;
};

inline MLPosition make_position(int k, ModelSet A, ModelSet B) { return {k, normalize(std::move(A)), normalize(std::move(B))}; }

struct OrMove {
    int k1 = 0, k2 = 0;
    ModelSet A1, A2;
};
struct AndMove {
    int k1 = 0, k2 = 0;
    ModelSet B1, B2;
};
// image[i] is the chosen successor of A[i] (resp. B[i]).
struct DiaMove {
    std::vector<PointedModel> image;
};
struct BoxMove {
    std::vector<PointedModel> image;
};
struct LitMove {
    Formula lit;
};
using MLMove = std::variant<OrMove, AndMove, DiaMove, BoxMove, LitMove>;

enum class Player { S, D };
inline const char* to_string(Player p) { return p == Player::S ? "S" : "D"; }

struct Terminal {
    Player winner;
    std::string reason;
};

inline std::string move_name(const MLMove& m) {
    static const char* names[] = {"or", "and", "dia", "box", "lit"};
    return names[m.index()];
}

// Literal alphabet of a position: T, F, then p, ~p for each proposition in sorted order.
inline std::vector<Formula> literals_for(const std::vector<std::string>& props) {
    std::vector<Formula> out{Formula::top(), Formula::bot()};
    for (const auto& p : props) {
        out.push_back(Formula::prop(p));
        out.push_back(Formula::neg_prop(p));
    }
    return out;
}

inline std::vector<std::string> props_of(const ModelSet& a, const ModelSet& b) {
    std::set<std::string> s;
    for (const auto* set : {&a, &b})
        for (const auto& pm : *set)
            for (const auto& p : pm.model->props()) s.insert(p);
    return {s.begin(), s.end()};
}

inline bool literal_true(const Formula& lit, const PointedModel& pm) {
    switch (lit.op()) {
        case Op::Top: return true;
        case Op::Bot: return false;
        case Op::Prop: return pm.model->holds(lit.name(), pm.point);
        case Op::NegProp: return !pm.model->holds(lit.name(), pm.point);
        default: throw InputError("not a literal: " + print(lit));
    }
}

inline bool separates(const Formula& f, const ModelSet& A, const ModelSet& B) {
    for (const auto& pm : A)
        if (!eval_ml(f, pm)) return false;
    for (const auto& pm : B)
        if (eval_ml(f, pm)) return false;
    return true;
}

inline bool literal_separates(const Formula& lit, const ModelSet& A, const ModelSet& B) {
    for (const auto& pm : A)
        if (!literal_true(lit, pm)) return false;
    for (const auto& pm : B)
        if (literal_true(lit, pm)) return false;
    return true;
}

namespace detail {
// All pairs (X1, X2) of subsets with X1 ∪ X2 = X, in a fixed order.
inline std::vector<std::pair<ModelSet, ModelSet>> covers(const ModelSet& X) {
    std::vector<std::pair<ModelSet, ModelSet>> out;
    std::size_t n = X.size();
    require(n <= 12, "too many models to enumerate splits");
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        ModelSet a, b;
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i, c /= 3) {
            if (c % 3 != 1) a.push_back(X[i]);
            if (c % 3 != 0) b.push_back(X[i]);
        }
        out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

inline void choice_functions(const ModelSet& X, std::size_t i, std::vector<PointedModel>& cur,
                             std::vector<std::vector<PointedModel>>& out, std::size_t cap) {
    if (i == X.size()) {
        require(out.size() < cap, "too many choice functions to enumerate");
        out.push_back(cur);
        return;
    }
    for (const auto& s : successors(X[i])) {
        cur.push_back(s);
        choice_functions(X, i + 1, cur, out, cap);
        cur.pop_back();
    }
}
}  // namespace detail

// Every legal S move. Resource parts are >= 1 unless `allow_zero_parts`.
inline std::vector<MLMove> legal_moves(const MLPosition& p, bool allow_zero_parts = false) {
    std::vector<MLMove> out;
    if (p.k <= 0) return out;
    for (const auto& l : literals_for(props_of(p.A, p.B))) out.push_back(LitMove{l});
    int lo = allow_zero_parts ? 0 : 1;
    for (int k1 = lo; k1 <= p.k - 1 - lo; ++k1) {
        int k2 = p.k - 1 - k1;
        for (auto& [a1, a2] : detail::covers(p.A)) out.push_back(OrMove{k1, k2, a1, a2});
        for (auto& [b1, b2] : detail::covers(p.B)) out.push_back(AndMove{k1, k2, b1, b2});
    }
    const std::size_t cap = 1u << 16;
    std::vector<PointedModel> cur;
    std::vector<std::vector<PointedModel>> fs;
    detail::choice_functions(p.A, 0, cur, fs, cap);
    for (auto& f : fs) out.push_back(DiaMove{std::move(f)});
    fs.clear();
    detail::choice_functions(p.B, 0, cur, fs, cap);
    for (auto& g : fs) out.push_back(BoxMove{std::move(g)});
    return out;
}

inline bool is_legal(const MLPosition& p, const MLMove& m) {
    if (p.k <= 0) return false;
    auto ok_split = [&](int k1, int k2, const ModelSet& x1, const ModelSet& x2, const ModelSet& x) {
        if (k1 < 0 || k2 < 0 || k1 + k2 + 1 != p.k) return false;
        auto n1 = normalize(x1), n2 = normalize(x2);
        return is_subset(n1, x) && is_subset(n2, x) && set_union(n1, n2) == x;
    };
    auto ok_choice = [](const ModelSet& x, const std::vector<PointedModel>& img) {
        if (img.size() != x.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            auto s = successors(x[i]);
            if (std::find(s.begin(), s.end(), img[i]) == s.end()) return false;
        }
        return true;
    };
    return std::visit(
        [&](const auto& mv) -> bool {
            using T = std::decay_t<decltype(mv)>;
            if constexpr (std::is_same_v<T, OrMove>) return ok_split(mv.k1, mv.k2, mv.A1, mv.A2, p.A);
            if constexpr (std::is_same_v<T, AndMove>) return ok_split(mv.k1, mv.k2, mv.B1, mv.B2, p.B);
            if constexpr (std::is_same_v<T, DiaMove>) return ok_choice(p.A, mv.image);
            if constexpr (std::is_same_v<T, BoxMove>) return ok_choice(p.B, mv.image);
            if constexpr (std::is_same_v<T, LitMove>) return mv.lit.valid() && mv.lit.is_literal() && mv.lit.mod() == 0;
            return false;
        },
        m);
}

// Branch choice is 1 or 2 for or/and moves and ignored otherwise.
inline std::variant<MLPosition, Terminal> apply(const MLPosition& p, const MLMove& m, int branch = 0) {
    require(is_legal(p, m), "illegal move " + move_name(m));
    if (auto* o = std::get_if<OrMove>(&m)) {
        require(branch == 1 || branch == 2, "or-move needs a branch choice");
        return branch == 1 ? make_position(o->k1, o->A1, p.B) : make_position(o->k2, o->A2, p.B);
    }
    if (auto* a = std::get_if<AndMove>(&m)) {
        require(branch == 1 || branch == 2, "and-move needs a branch choice");
        return branch == 1 ? make_position(a->k1, p.A, a->B1) : make_position(a->k2, p.A, a->B2);
    }
    if (auto* d = std::get_if<DiaMove>(&m)) return make_position(p.k - 1, d->image, all_successors(p.B));
    if (auto* b = std::get_if<BoxMove>(&m)) return make_position(p.k - 1, all_successors(p.A), b->image);
    const auto& lit = std::get<LitMove>(m).lit;
    if (literal_separates(lit, p.A, p.B)) return Terminal{Player::S, "literal " + print(lit) + " separates"};
    return Terminal{Player::D, "literal " + print(lit) + " does not separate"};
}

// Uniformly random legal move, generated directly rather than by enumeration.
template <class Rng>
MLMove random_move(const MLPosition& p, Rng& rng) {
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    bool dia_ok = !p.A.empty(), box_ok = !p.B.empty();
    for (const auto& pm : p.A) dia_ok = dia_ok && !successors(pm).empty();
    for (const auto& pm : p.B) box_ok = box_ok && !successors(pm).empty();
    std::vector<int> kinds{4};
    if (p.k >= 3) kinds.insert(kinds.end(), {0, 1});
    if (dia_ok) kinds.push_back(2);
    if (box_ok) kinds.push_back(3);
    int kind = kinds[pick(static_cast<int>(kinds.size()))];
    auto split = [&](const ModelSet& x) {
        ModelSet a, b;
        for (const auto& pm : x) {
            int r = pick(3);
            if (r != 1) a.push_back(pm);
            if (r != 0) b.push_back(pm);
        }
        return std::make_pair(a, b);
    };
    auto choose = [&](const ModelSet& x) {
        std::vector<PointedModel> img;
        for (const auto& pm : x) {
            auto s = successors(pm);
            img.push_back(s[pick(static_cast<int>(s.size()))]);
        }
        return img;
    };
    switch (kind) {
        case 0: {
            int k1 = 1 + pick(p.k - 2);
            auto [a, b] = split(p.A);
            return OrMove{k1, p.k - 1 - k1, a, b};
        }
        case 1: {
            int k1 = 1 + pick(p.k - 2);
            auto [a, b] = split(p.B);
            return AndMove{k1, p.k - 1 - k1, a, b};
        }
        case 2: return DiaMove{choose(p.A)};
        case 3: return BoxMove{choose(p.B)};
        default: {
            auto lits = literals_for(props_of(p.A, p.B));
            return LitMove{lits[pick(static_cast<int>(lits.size()))]};
        }
    }
}

// Agents. D agents see every move (including modal ones) so they can track state.
class MLSAgent {
public:
    virtual ~MLSAgent() = default;
    virtual MLMove choose(const MLPosition& p) = 0;
    virtual std::unique_ptr<MLSAgent> clone() const = 0;
};

class MLDAgent {
public:
    virtual ~MLDAgent() = default;
    // Returns 1 or 2 for or/and moves, 0 otherwise.
    virtual int respond(const MLPosition& p, const MLMove& m) = 0;
    virtual std::unique_ptr<MLDAgent> clone() const = 0;
};

struct MLStep {
    MLPosition position;
    MLMove move;
    int branch = 0;
};

struct MLTranscript {
    std::vector<MLStep> steps;
    MLPosition final_position;
    Terminal outcome{Player::D, ""};
};

class AgentFault : public InputError {
public:
    AgentFault(Player who, const std::string& msg) : InputError(std::string(to_string(who)) + " agent fault: " + msg), who(who) {}
    Player who;
};

inline MLTranscript play(MLPosition p, MLSAgent& s, MLDAgent& d, std::size_t max_steps = 100000) {
    MLTranscript t;
    while (true) {
        if (p.k <= 0) {
            t.final_position = p;
            t.outcome = {Player::D, "resource exhausted"};
            return t;
        }
        ensure(t.steps.size() < max_steps, "play exceeded step bound");
        MLMove m = s.choose(p);
        if (!is_legal(p, m)) throw AgentFault(Player::S, "illegal " + move_name(m) + " move");
        int branch = d.respond(p, m);
        bool needs_branch = std::holds_alternative<OrMove>(m) || std::holds_alternative<AndMove>(m);
        if (needs_branch && branch != 1 && branch != 2) throw AgentFault(Player::D, "branch must be 1 or 2");
        t.steps.push_back({p, m, needs_branch ? branch : 0});
        auto next = apply(p, m, branch);
        if (auto* term = std::get_if<Terminal>(&next)) {
            t.final_position = p;
            t.outcome = *term;
            return t;
        }
        MLPosition np = std::get<MLPosition>(next);
        ensure(np.k < p.k, "resource did not decrease");
        p = std::move(np);
    }
}

inline nlohmann::json model_set_json(const ModelSet& s) {
    auto j = nlohmann::json::array();
    for (const auto& pm : s) j.push_back(pm.name());
    return j;
}

inline nlohmann::json move_json(const MLMove& m) {
    nlohmann::json j;
    j["move"] = move_name(m);
    std::visit(
        [&](const auto& mv) {
            using T = std::decay_t<decltype(mv)>;
            if constexpr (std::is_same_v<T, OrMove>) {
                j["k1"] = mv.k1;
                j["k2"] = mv.k2;
                j["A1"] = model_set_json(normalize(mv.A1));
                j["A2"] = model_set_json(normalize(mv.A2));
            } else if constexpr (std::is_same_v<T, AndMove>) {
                j["k1"] = mv.k1;
                j["k2"] = mv.k2;
                j["B1"] = model_set_json(normalize(mv.B1));
                j["B2"] = model_set_json(normalize(mv.B2));
            } else if constexpr (std::is_same_v<T, LitMove>) {
                j["literal"] = print(mv.lit);
            } else {
                j["image"] = model_set_json(mv.image);
            }
        },
        m);
    return j;
}

inline nlohmann::json transcript_json(const MLTranscript& t) {
    nlohmann::json j;
    auto steps = nlohmann::json::array();
    for (const auto& s : t.steps) {
        nlohmann::json js;
        js["k"] = s.position.k;
        js["A"] = model_set_json(s.position.A);
        js["B"] = model_set_json(s.position.B);
        js["s"] = move_json(s.move);
        if (s.branch) js["d"] = s.branch;
        steps.push_back(js);
    }
    j["steps"] = steps;
    j["winner"] = to_string(t.outcome.winner);
    j["reason"] = t.outcome.reason;
    return j;
}

}  // namespace fsg
