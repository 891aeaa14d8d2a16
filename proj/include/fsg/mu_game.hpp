#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fsg/formula.hpp"
#include "fsg/kripke.hpp"
#include "fsg/ml_game.hpp"

namespace fsg {

using ClockedSet = std::vector<ClockedModel>;  // sorted, duplicate free

namespace cm {

inline ClockedSet normalize(ClockedSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline ClockedSet unite(const ClockedSet& a, const ClockedSet& b) {
    ClockedSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline bool is_subset(const ClockedSet& a, const ClockedSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

inline ClockedSet new_part(const ClockedSet& s) {
    ClockedSet out;
    for (const auto& m : s)
        if (m.age == Age::New) out.push_back(m);
    return out;
}

inline ClockedSet aged(ClockedSet s) {
    for (auto& m : s) m.age = Age::Old;
    return normalize(std::move(s));
}

inline ClockedSet clock(const std::vector<PointedModel>& pms) {
    ClockedSet out;
    for (const auto& pm : pms) out.push_back({pm, {}, Age::New});
    return normalize(std::move(out));
}

inline ModelSet points(const ClockedSet& s) {
    ModelSet out;
    for (const auto& m : s) out.push_back(m.pm);
    return normalize(std::move(out));
}

inline std::string describe(const ClockedModel& m) {
    std::string s = m.pm.name() + "{";
    bool first = true;
    for (const auto& [x, v] : m.clocks.items()) {
        if (!first) s += ",";
        first = false;
        s += x + "=" + std::to_string(v);
    }
    return s + "}" + (m.age == Age::Old ? "o" : "");
}

}  // namespace cm

enum class MuKind { None, Or, And, Dia, Box, Mu, Nu, Var, Lit };

struct MuLabel {
    MuKind kind = MuKind::None;
    std::string var;  // binder or variable name
    Formula lit;      // for Lit
};

struct MuVertex {
    int parent = -1;
    std::vector<int> children;
    int back = -1;
    MuLabel label;
    int res = 0;
    ClockedSet left, right;
    bool labelled() const { return label.kind != MuKind::None; }
};

struct MuPosition {
    std::vector<MuVertex> vertices;
    int current = 0;
    int clock_max = 0;  // clocks range over 0..clock_max
    std::vector<std::string> props;
    bool lit_new_only = false;  // Lit test on New models only instead of all models at the vertex

    const MuVertex& at(int v) const {
        require(v >= 0 && static_cast<std::size_t>(v) < vertices.size(), "vertex outside position");
        return vertices[v];
    }
    const MuVertex& cur() const { return at(current); }
};

// S moves. Model lists in Dia/Box and clock vectors are aligned with the New
// models on the relevant side of the current vertex, in sorted order.
struct MuOr {
    ClockedSet A1, A2;
    int k1 = 0, k2 = 0;  // ignored at labelled vertices
};
struct MuAnd {
    ClockedSet B1, B2;
    int k1 = 0, k2 = 0;
};
struct MuDia {
    std::vector<ClockedModel> image;
};
struct MuBox {
    std::vector<ClockedModel> image;
};
struct MuBind {
    bool nu = false;
    std::string var;
    std::vector<int> clocks;  // S side: left for mu, right for nu
};
struct MuJump {
    std::string var;
    std::vector<int> clocks;  // S side New models
};
struct MuLit {
    Formula lit;
};
using MuMove = std::variant<MuOr, MuAnd, MuDia, MuBox, MuBind, MuJump, MuLit>;

// D responses.
struct MuBranch {
    int i = 1;
};
struct MuSubsets {
    ClockedSet A, B;
};
struct MuClocks {
    std::vector<int> clocks;  // D side models in sorted order
};
using MuResponse = std::variant<std::monostate, MuBranch, MuSubsets, MuClocks>;
struct MuInitial {
    ClockedSet A, B;
};

inline std::string move_name(const MuMove& m) {
    if (auto* b = std::get_if<MuBind>(&m)) return b->nu ? "nu" : "mu";
    static const char* names[] = {"or", "and", "dia", "box", "bind", "var", "lit"};
    return names[m.index()];
}

inline std::string kind_name(MuKind k) {
    static const char* names[] = {"", "|", "&", "<>", "[]", "mu", "nu", "var", "lit"};
    return names[static_cast<int>(k)];
}

inline MuPosition initial_position(const std::vector<PointedModel>& A0, const std::vector<PointedModel>& B0, int k0) {
    require(k0 >= 0, "resource must be non-negative");
    MuPosition p;
    MuVertex root;
    root.res = k0;
    root.left = cm::clock(A0);
    root.right = cm::clock(B0);
    p.vertices.push_back(std::move(root));
    std::size_t w = 0;
    for (const auto* side : {&A0, &B0})
        for (const auto& pm : *side) w = std::max(w, pm.model->size());
    p.clock_max = static_cast<int>(w) + 1;
    p.props = props_of(normalize(A0), normalize(B0));
    return p;
}

inline MuPosition apply_initial(MuPosition p, const MuInitial& r) {
    require(p.vertices.size() == 1 && !p.vertices[0].labelled(), "initial response only at the starting position");
    auto A = cm::normalize(r.A), B = cm::normalize(r.B);
    require(cm::is_subset(A, p.vertices[0].left) && cm::is_subset(B, p.vertices[0].right),
            "initial response must choose subsets of the starting sets");
    p.vertices[0].left = std::move(A);
    p.vertices[0].right = std::move(B);
    return p;
}

inline MuInitial keep_all(const MuPosition& p) { return {p.vertices[0].left, p.vertices[0].right}; }

// Closest vertex strictly above v labelled by a fixpoint binding `var`, or -1.
inline int find_binder(const MuPosition& p, int v, const std::string& var) {
    for (int u = p.at(v).parent; u >= 0; u = p.vertices[u].parent) {
        const auto& l = p.vertices[u].label;
        if ((l.kind == MuKind::Mu || l.kind == MuKind::Nu) && l.var == var) return u;
    }
    return -1;
}

// The fixpoint kind binding `var` anywhere in the tree (binder names are unique).
inline std::optional<MuKind> binder_kind(const MuPosition& p, const std::string& var) {
    for (const auto& vx : p.vertices)
        if ((vx.label.kind == MuKind::Mu || vx.label.kind == MuKind::Nu) && vx.label.var == var) return vx.label.kind;
    return std::nullopt;
}

inline bool is_binder_name(const MuPosition& p, const std::string& var) { return binder_kind(p, var).has_value(); }

inline std::string fresh_variable(const MuPosition& p) {
    for (int i = 0;; ++i) {
        std::string x = "X" + std::to_string(i);
        if (!is_binder_name(p, x)) return x;
    }
}

// Variables bound strictly above v, outermost first.
inline std::vector<std::string> bound_above(const MuPosition& p, int v) {
    std::vector<std::string> out;
    for (int u = p.at(v).parent; u >= 0; u = p.vertices[u].parent) {
        const auto& l = p.vertices[u].label;
        if (l.kind == MuKind::Mu || l.kind == MuKind::Nu) out.push_back(l.var);
    }
    return {out.rbegin(), out.rend()};
}

inline bool is_ancestor(const MuPosition& p, int a, int v) {
    for (int u = v; u >= 0; u = p.vertices[u].parent)
        if (u == a) return true;
    return false;
}

namespace detail {

// Models on the side the move works on: everything at an unlabelled vertex,
// the New part at a labelled one.
inline ClockedSet active(const MuPosition& p, bool left) {
    const auto& v = p.cur();
    const auto& s = left ? v.left : v.right;
    return v.labelled() ? cm::new_part(s) : s;
}

inline MuKind expected_kind(const MuMove& m) {
    switch (m.index()) {
        case 0: return MuKind::Or;
        case 1: return MuKind::And;
        case 2: return MuKind::Dia;
        case 3: return MuKind::Box;
        case 4: return std::get<MuBind>(m).nu ? MuKind::Nu : MuKind::Mu;
        case 5: return MuKind::Var;
        default: return MuKind::Lit;
    }
}

struct JumpInfo {
    int binder = -1;  // -1: no binder above
    int target = -1;
    bool nu = false;
};

inline JumpInfo jump_info(const MuPosition& p, const std::string& var) {
    const auto& v = p.cur();
    JumpInfo j;
    if (v.labelled()) {
        j.target = v.back;
        j.binder = p.vertices[v.back].parent;
    } else {
        j.binder = find_binder(p, p.current, var);
        if (j.binder < 0) return j;
        j.target = p.vertices[j.binder].children.at(0);
    }
    j.nu = p.vertices[j.binder].label.kind == MuKind::Nu;
    return j;
}

inline bool is_successor(const ClockedModel& from, const ClockedModel& to) {
    if (to.clocks != from.clocks || to.age != Age::New || to.pm.model != from.pm.model) return false;
    const auto& s = from.pm.model->succ(from.pm.point);
    return std::binary_search(s.begin(), s.end(), to.pm.point);
}

inline ClockedSet successors_of(const ClockedSet& s) {
    ClockedSet out;
    for (const auto& m : s)
        for (auto c : successors_clocked(m)) {
            c.age = Age::New;
            out.push_back(std::move(c));
        }
    return cm::normalize(std::move(out));
}

}  // namespace detail

// What a move needs from D, or the terminal outcome it causes on its own.
enum class MuNeed { None, Branch, Subsets, Clocks };

struct MuInspection {
    std::optional<Terminal> terminal;
    MuNeed need = MuNeed::None;
    ClockedSet d_side;  // models D assigns clocks to, in order
    int clock_limit = 0;  // D clocks lie in 0..clock_limit-1 (per model for jumps: below its own clock)
};

// Validates an S move at the current vertex. Throws InputError if it is illegal.
inline MuInspection inspect(const MuPosition& p, const MuMove& m) {
    const auto& v = p.cur();
    require(v.res > 0, "no moves once the resource is exhausted");
    require(v.label.kind != MuKind::Lit, "play already ended at a literal");
    if (v.labelled())
        require(detail::expected_kind(m) == v.label.kind,
                "labelled vertex dictates a " + kind_name(v.label.kind) + " move, got " + move_name(m));
    MuInspection out;
    const int k = v.res;

    if (auto* o = std::get_if<MuOr>(&m)) {
        auto A = detail::active(p, true);
        auto A1 = cm::normalize(o->A1), A2 = cm::normalize(o->A2);
        require(cm::is_subset(A1, A) && cm::is_subset(A2, A) && cm::unite(A1, A2) == A, "or split must cover the left set");
        if (!v.labelled()) require(o->k1 > 0 && o->k2 > 0 && o->k1 + o->k2 + 1 == k, "or resources must be positive with k1 + k2 + 1 = k");
        out.need = MuNeed::Branch;
    } else if (auto* a = std::get_if<MuAnd>(&m)) {
        auto B = detail::active(p, false);
        auto B1 = cm::normalize(a->B1), B2 = cm::normalize(a->B2);
        require(cm::is_subset(B1, B) && cm::is_subset(B2, B) && cm::unite(B1, B2) == B, "and split must cover the right set");
        if (!v.labelled()) require(a->k1 > 0 && a->k2 > 0 && a->k1 + a->k2 + 1 == k, "and resources must be positive with k1 + k2 + 1 = k");
        out.need = MuNeed::Branch;
    } else if (std::holds_alternative<MuDia>(m) || std::holds_alternative<MuBox>(m)) {
        bool dia = std::holds_alternative<MuDia>(m);
        const auto& image = dia ? std::get<MuDia>(m).image : std::get<MuBox>(m).image;
        auto X = detail::active(p, dia);
        require(image.size() == X.size(), "modal move must pick one successor per model");
        for (std::size_t i = 0; i < X.size(); ++i)
            require(detail::is_successor(X[i], image[i]), "modal image is not a successor of " + X[i].pm.name());
        out.need = MuNeed::Subsets;
    } else if (auto* b = std::get_if<MuBind>(&m)) {
        if (v.labelled())
            require(b->var == v.label.var, "labelled binder fixes the variable");
        else
            require(!b->var.empty() && !is_binder_name(p, b->var), "binder variable must be fresh");
        auto S = detail::active(p, !b->nu);
        require(b->clocks.size() == S.size(), "one clock per S-side model");
        for (int c : b->clocks) require(c >= 0 && c <= p.clock_max, "clock outside 0.." + std::to_string(p.clock_max));
        out.need = MuNeed::Clocks;
        out.d_side = detail::active(p, b->nu);
        out.clock_limit = p.clock_max + 1;
    } else if (auto* j = std::get_if<MuJump>(&m)) {
        if (v.labelled()) require(j->var == v.label.var, "labelled variable fixes the jump");
        auto info = detail::jump_info(p, j->var);
        if (info.binder < 0) {
            out.terminal = Terminal{Player::D, "no-binder"};
            return out;
        }
        auto A = detail::active(p, true), B = detail::active(p, false);
        if (cm::new_part(A).empty() && cm::new_part(B).empty()) {
            out.terminal = Terminal{Player::S, "empty-jump"};
            return out;
        }
        auto S = cm::new_part(info.nu ? B : A);
        for (const auto& x : S)
            if (x.clocks.get(j->var) == 0) {
                out.terminal = Terminal{Player::D, "clock-exhausted"};
                return out;
            }
        require(j->clocks.size() == S.size(), "one clock per S-side New model");
        for (std::size_t i = 0; i < S.size(); ++i)
            require(j->clocks[i] >= 0 && j->clocks[i] < S[i].clocks.get(j->var), "jump clock must be below the current clock");
        for (const auto& x : cm::new_part(info.nu ? A : B))
            if (x.clocks.get(j->var) != 0) out.d_side.push_back(x);
        out.need = MuNeed::Clocks;
    } else {
        const auto& l = std::get<MuLit>(m).lit;
        require(l.valid() && l.is_literal(), "lit move needs a literal");
        if (l.op() == Op::Prop || l.op() == Op::NegProp)
            require(std::binary_search(p.props.begin(), p.props.end(), l.name()), "literal over unknown proposition " + l.name());
        auto A = p.lit_new_only ? cm::new_part(v.left) : v.left;
        auto B = p.lit_new_only ? cm::new_part(v.right) : v.right;
        bool ok = true;
        for (const auto& x : A) ok = ok && literal_true(l, x.pm);
        for (const auto& x : B) ok = ok && !literal_true(l, x.pm);
        out.terminal = ok ? Terminal{Player::S, "literal"} : Terminal{Player::D, "literal"};
    }
    return out;
}

inline void check_response(const MuPosition& p, const MuMove& m, const MuInspection& in, const MuResponse& r) {
    switch (in.need) {
        case MuNeed::None: return;
        case MuNeed::Branch: {
            auto* b = std::get_if<MuBranch>(&r);
            require(b && (b->i == 1 || b->i == 2), "D must choose branch 1 or 2");
            return;
        }
        case MuNeed::Subsets: {
            auto* s = std::get_if<MuSubsets>(&r);
            require(s != nullptr, "D must choose successor subsets");
            bool dia = std::holds_alternative<MuDia>(m);
            const auto& image = dia ? std::get<MuDia>(m).image : std::get<MuBox>(m).image;
            auto img = cm::normalize(image);
            auto all = detail::successors_of(detail::active(p, !dia));
            require(cm::is_subset(cm::normalize(s->A), dia ? img : all) && cm::is_subset(cm::normalize(s->B), dia ? all : img),
                    "D subsets must lie within the chosen images and successor sets");
            return;
        }
        case MuNeed::Clocks: {
            auto* c = std::get_if<MuClocks>(&r);
            require(c && c->clocks.size() == in.d_side.size(), "D must give one clock per D-side model");
            auto* j = std::get_if<MuJump>(&m);
            for (std::size_t i = 0; i < in.d_side.size(); ++i) {
                int limit = j ? in.d_side[i].clocks.get(j->var) : in.clock_limit;
                require(c->clocks[i] >= 0 && c->clocks[i] < limit, "D clock out of range");
            }
            return;
        }
    }
}

// Legal D responses for a move. Keeping every model is never worse for D:
// extra models only add constraints for S. A larger D clock is never worse
// either: it leaves D every option of a smaller one at later jumps.
// `dominant_only` applies both prunings; `max_clocks_only` prunes clocks alone.
struct MuResponseOptions {
    bool dominant_only = false;
    std::size_t max_subset_elements = 12;  // beyond this only the full subsets are offered
    bool max_clocks_only = false;
};

inline std::vector<MuResponse> d_responses(const MuPosition& p, const MuMove& m, const MuResponseOptions& opt = {}) {
    auto in = inspect(p, m);
    std::vector<MuResponse> out;
    if (in.terminal) return out;
    switch (in.need) {
        case MuNeed::None: out.emplace_back(std::monostate{}); break;
        case MuNeed::Branch:
            out.emplace_back(MuBranch{1});
            out.emplace_back(MuBranch{2});
            break;
        case MuNeed::Subsets: {
            bool dia = std::holds_alternative<MuDia>(m);
            auto img = cm::normalize(dia ? std::get<MuDia>(m).image : std::get<MuBox>(m).image);
            auto all = detail::successors_of(detail::active(p, !dia));
            ClockedSet L = dia ? img : all, R = dia ? all : img;
            std::size_t n = L.size() + R.size();
            if (opt.dominant_only || n > opt.max_subset_elements) {
                out.emplace_back(MuSubsets{L, R});
                break;
            }
            for (std::uint64_t mask = (std::uint64_t{1} << n); mask-- > 0;) {
                MuSubsets s;
                for (std::size_t i = 0; i < n; ++i)
                    if (mask >> i & 1) (i < L.size() ? s.A : s.B).push_back(i < L.size() ? L[i] : R[i - L.size()]);
                out.emplace_back(std::move(s));
            }
            break;
        }
        case MuNeed::Clocks: {
            auto* j = std::get_if<MuJump>(&m);
            std::vector<int> limits;
            for (const auto& x : in.d_side) limits.push_back(j ? x.clocks.get(j->var) : in.clock_limit);
            if (opt.dominant_only || opt.max_clocks_only) {
                std::vector<int> c;
                for (int l : limits) c.push_back(l - 1);
                out.emplace_back(MuClocks{c});
                break;
            }
            std::vector<int> c(limits.size(), 0);
            while (true) {
                out.emplace_back(MuClocks{c});
                std::size_t i = 0;
                while (i < c.size() && ++c[i] == limits[i]) c[i++] = 0;
                if (i == c.size()) break;
            }
            break;
        }
    }
    return out;
}

namespace detail {

inline void set_clocks(ClockedSet& s, const std::string& var, const std::vector<int>& clocks) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i].clocks.set(var, clocks[i]);
}

}  // namespace detail

inline std::variant<MuPosition, Terminal> apply_mu(const MuPosition& p, const MuMove& m, const MuResponse& r) {
    auto in = inspect(p, m);
    if (in.terminal) return *in.terminal;
    check_response(p, m, in, r);

    MuPosition q = p;
    const int v = p.current;
    const bool labelled = p.cur().labelled();
    const int k = p.cur().res;

    // Adds a child of v if v is unlabelled, otherwise returns the existing one.
    auto child = [&](std::size_t idx, int res) -> int {
        if (labelled) return q.vertices[v].children.at(idx);
        MuVertex c;
        c.parent = v;
        c.res = res;
        q.vertices.push_back(std::move(c));
        int id = static_cast<int>(q.vertices.size()) - 1;
        q.vertices[v].children.push_back(id);
        return id;
    };
    auto age_current = [&]() {
        q.vertices[v].left = cm::aged(q.vertices[v].left);
        q.vertices[v].right = cm::aged(q.vertices[v].right);
    };
    auto add = [&](int target, const ClockedSet& A, const ClockedSet& B) {
        q.vertices[target].left = cm::unite(q.vertices[target].left, cm::normalize(A));
        q.vertices[target].right = cm::unite(q.vertices[target].right, cm::normalize(B));
    };

    if (std::holds_alternative<MuOr>(m) || std::holds_alternative<MuAnd>(m)) {
        bool is_or = std::holds_alternative<MuOr>(m);
        ClockedSet X1, X2;
        int k1, k2;
        if (is_or) {
            const auto& o = std::get<MuOr>(m);
            X1 = o.A1, X2 = o.A2, k1 = o.k1, k2 = o.k2;
        } else {
            const auto& a = std::get<MuAnd>(m);
            X1 = a.B1, X2 = a.B2, k1 = a.k1, k2 = a.k2;
        }
        auto other = detail::active(p, !is_or);  // copied to both children
        int v1 = child(0, k1), v2 = child(1, k2);
        if (!labelled) q.vertices[v].label.kind = is_or ? MuKind::Or : MuKind::And;
        age_current();
        if (is_or) {
            add(v1, X1, other);
            add(v2, X2, other);
        } else {
            add(v1, other, X1);
            add(v2, other, X2);
        }
        q.current = std::get<MuBranch>(r).i == 1 ? v1 : v2;
    } else if (std::holds_alternative<MuDia>(m) || std::holds_alternative<MuBox>(m)) {
        const auto& s = std::get<MuSubsets>(r);
        int c = child(0, k - 1);
        if (!labelled) q.vertices[v].label.kind = std::holds_alternative<MuDia>(m) ? MuKind::Dia : MuKind::Box;
        age_current();
        add(c, s.A, s.B);
        q.current = c;
    } else if (auto* b = std::get_if<MuBind>(&m)) {
        auto A = detail::active(p, true), B = detail::active(p, false);
        const auto& dc = std::get<MuClocks>(r).clocks;
        detail::set_clocks(A, b->var, b->nu ? dc : b->clocks);
        detail::set_clocks(B, b->var, b->nu ? b->clocks : dc);
        int c = child(0, k - 1);
        if (!labelled) q.vertices[v].label = {b->nu ? MuKind::Nu : MuKind::Mu, b->var, {}};
        age_current();
        add(c, A, B);
        q.current = c;
    } else if (auto* j = std::get_if<MuJump>(&m)) {
        auto info = detail::jump_info(p, j->var);
        auto Snew = cm::new_part(detail::active(p, !info.nu));
        const auto& dc = std::get<MuClocks>(r).clocks;
        // Clocks of fixpoints strictly between the binder and v are forgotten.
        std::vector<std::string> reset;
        for (int u = p.vertices[v].parent; u >= 0 && u != info.binder; u = p.vertices[u].parent) {
            const auto& l = p.vertices[u].label;
            if (l.kind == MuKind::Mu || l.kind == MuKind::Nu) reset.push_back(l.var);
        }
        auto moved = [&](ClockedModel x, int c) {
            x.clocks.set(j->var, c);
            for (const auto& y : reset) x.clocks.erase(y);
            x.age = Age::New;
            return x;
        };
        ClockedSet S, D;
        for (std::size_t i = 0; i < Snew.size(); ++i) S.push_back(moved(Snew[i], j->clocks[i]));
        for (std::size_t i = 0; i < in.d_side.size(); ++i) D.push_back(moved(in.d_side[i], dc[i]));
        if (!labelled) {
            q.vertices[v].label = {MuKind::Var, j->var, {}};
            q.vertices[v].back = info.target;
        }
        age_current();
        if (info.nu)
            add(info.target, D, S);
        else
            add(info.target, S, D);
        q.current = info.target;
    } else {
        ensure(false, "unreachable: literal moves are terminal");
    }
    if (q.cur().res == 0) return Terminal{Player::D, "resource-exhausted"};
    return q;
}

// Some move is available to S. Only a labelled modal vertex with a dead-end
// New model on its side blocks S.
inline bool s_can_move(const MuPosition& p) {
    const auto& v = p.cur();
    if (v.label.kind == MuKind::Dia || v.label.kind == MuKind::Box) {
        for (const auto& x : cm::new_part(v.label.kind == MuKind::Dia ? v.left : v.right))
            if (x.pm.model->succ(x.pm.point).empty()) return false;
    }
    return true;
}

// Enumeration of S moves. Caps keep exhaustive searches finite at larger scales;
// the defaults enumerate everything.
struct MuMoveOptions {
    std::size_t max_covers = std::numeric_limits<std::size_t>::max();
    std::size_t max_images = std::numeric_limits<std::size_t>::max();
    std::vector<int> clock_menu;  // empty: every legal clock value
    bool uniform_clocks = false;  // one clock value for all models of a move
    std::uint64_t seed = 0;       // for sampled covers when over the cap
};

namespace detail {

inline std::vector<std::pair<ClockedSet, ClockedSet>> clocked_covers(const ClockedSet& X, const MuMoveOptions& opt) {
    std::vector<std::pair<ClockedSet, ClockedSet>> out;
    std::size_t n = X.size();
    double total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    auto build = [&](const std::vector<int>& code) {
        std::pair<ClockedSet, ClockedSet> c;
        for (std::size_t i = 0; i < n; ++i) {
            if (code[i] != 1) c.first.push_back(X[i]);
            if (code[i] != 0) c.second.push_back(X[i]);
        }
        return c;
    };
    if (total <= static_cast<double>(opt.max_covers)) {
        std::vector<int> code(n, 0);
        while (true) {
            out.push_back(build(code));
            std::size_t i = 0;
            while (i < n && ++code[i] == 3) code[i++] = 0;
            if (i == n) break;
        }
        return out;
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> d(0, 2);
    std::set<std::vector<int>> seen;
    for (std::size_t t = 0; out.size() < opt.max_covers && t < 4 * opt.max_covers; ++t) {
        std::vector<int> code(n);
        for (auto& c : code) c = d(rng);
        if (seen.insert(code).second) out.push_back(build(code));
    }
    return out;
}

// Clock vectors with per-model exclusive upper limits.
inline std::vector<std::vector<int>> clock_vectors(const std::vector<int>& limits, const MuMoveOptions& opt) {
    std::vector<std::vector<int>> out;
    auto allowed = [&](int v, int limit) {
        if (v >= limit) return false;
        return opt.clock_menu.empty() || std::find(opt.clock_menu.begin(), opt.clock_menu.end(), v) != opt.clock_menu.end();
    };
    int top = limits.empty() ? 0 : *std::max_element(limits.begin(), limits.end());
    if (opt.uniform_clocks) {
        for (int v = 0; v < top; ++v) {
            std::vector<int> c;
            for (int l : limits) c.push_back(std::min(v, l - 1));
            if (!allowed(v, top)) continue;
            if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
        }
        if (limits.empty()) out.push_back({});
        return out;
    }
    std::vector<std::vector<int>> menus;
    for (int l : limits) {
        std::vector<int> m;
        for (int v = 0; v < l; ++v)
            if (allowed(v, l)) m.push_back(v);
        if (m.empty()) m.push_back(l - 1);
        menus.push_back(m);
    }
    std::vector<std::size_t> idx(menus.size(), 0);
    while (true) {
        std::vector<int> c;
        for (std::size_t i = 0; i < menus.size(); ++i) c.push_back(menus[i][idx[i]]);
        out.push_back(c);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == menus[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

inline std::vector<std::vector<ClockedModel>> images(const ClockedSet& X, std::size_t cap) {
    std::vector<std::vector<ClockedModel>> menus;
    for (const auto& x : X) {
        auto s = successors_clocked(x);
        if (s.empty()) return {};
        for (auto& y : s) y.age = Age::New;
        menus.push_back(s);
    }
    std::vector<std::vector<ClockedModel>> out;
    std::vector<std::size_t> idx(menus.size(), 0);
    while (out.size() < cap) {
        std::vector<ClockedModel> img;
        for (std::size_t i = 0; i < menus.size(); ++i) img.push_back(menus[i][idx[i]]);
        out.push_back(img);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == menus[i].size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

}  // namespace detail

inline std::vector<MuMove> legal_s_moves(const MuPosition& p, const MuMoveOptions& opt = {}) {
    std::vector<MuMove> out;
    const auto& v = p.cur();
    if (v.res <= 0) return out;
    const int k = v.res;
    auto A = detail::active(p, true), B = detail::active(p, false);
    auto want = [&](MuKind kind) { return !v.labelled() || v.label.kind == kind; };

    if (!v.labelled())
        for (const auto& l : literals_for(p.props)) out.emplace_back(MuLit{l});
    for (bool is_or : {true, false}) {
        if (!want(is_or ? MuKind::Or : MuKind::And)) continue;
        std::vector<std::pair<int, int>> splits;
        if (v.labelled())
            splits.push_back({0, 0});
        else
            for (int k1 = 1; k1 + 1 < k; ++k1) splits.push_back({k1, k - 1 - k1});
        if (splits.empty()) continue;
        auto cov = detail::clocked_covers(is_or ? A : B, opt);
        for (auto [k1, k2] : splits)
            for (const auto& [X1, X2] : cov) {
                if (is_or)
                    out.emplace_back(MuOr{X1, X2, k1, k2});
                else
                    out.emplace_back(MuAnd{X1, X2, k1, k2});
            }
    }
    for (bool dia : {true, false}) {
        if (!want(dia ? MuKind::Dia : MuKind::Box)) continue;
        const auto& X = dia ? A : B;
        if (X.empty()) {
            if (dia)
                out.emplace_back(MuDia{});
            else
                out.emplace_back(MuBox{});
            continue;
        }
        for (auto& img : detail::images(X, opt.max_images)) {
            if (dia)
                out.emplace_back(MuDia{img});
            else
                out.emplace_back(MuBox{img});
        }
    }
    for (bool nu : {false, true}) {
        if (!want(nu ? MuKind::Nu : MuKind::Mu)) continue;
        std::string x = v.labelled() ? v.label.var : fresh_variable(p);
        std::vector<int> limits((nu ? B : A).size(), p.clock_max + 1);
        for (auto& c : detail::clock_vectors(limits, opt)) out.emplace_back(MuBind{nu, x, c});
    }
    if (want(MuKind::Var)) {
        std::vector<std::string> vars = v.labelled() ? std::vector<std::string>{v.label.var} : bound_above(p, p.current);
        for (const auto& x : vars) {
            auto info = detail::jump_info(p, x);
            auto S = cm::new_part(info.nu ? B : A);
            std::vector<int> limits;
            bool zero = false;
            for (const auto& m : S) {
                limits.push_back(m.clocks.get(x));
                zero = zero || limits.back() == 0;
            }
            bool empty = cm::new_part(A).empty() && cm::new_part(B).empty();
            if (zero || empty) {
                out.emplace_back(MuJump{x, {}});
                continue;
            }
            for (auto& c : detail::clock_vectors(limits, opt)) out.emplace_back(MuJump{x, c});
        }
    }
    return out;
}

// A uniformly random legal S move; move kinds are drawn first.
inline MuMove random_s_move(const MuPosition& p, std::mt19937_64& rng) {
    const auto& v = p.cur();
    const int k = v.res;
    auto A = detail::active(p, true), B = detail::active(p, false);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    auto subset_cover = [&](const ClockedSet& X) {
        std::pair<ClockedSet, ClockedSet> c;
        for (const auto& x : X) {
            int r = pick(3);
            if (r != 1) c.first.push_back(x);
            if (r != 0) c.second.push_back(x);
        }
        return c;
    };
    auto random_image = [&](const ClockedSet& X) {
        std::vector<ClockedModel> img;
        for (const auto& x : X) {
            auto s = successors_clocked(x);
            auto y = s[pick(static_cast<int>(s.size()))];
            y.age = Age::New;
            img.push_back(y);
        }
        return img;
    };
    auto has_succ = [](const ClockedSet& X) {
        for (const auto& x : X)
            if (x.pm.model->succ(x.pm.point).empty()) return false;
        return true;
    };
    std::vector<MuKind> kinds;
    if (v.labelled()) {
        kinds.push_back(v.label.kind);
    } else {
        kinds.push_back(MuKind::Lit);
        if (k >= 3) kinds.insert(kinds.end(), {MuKind::Or, MuKind::And});
        if (has_succ(A)) kinds.push_back(MuKind::Dia);
        if (has_succ(B)) kinds.push_back(MuKind::Box);
        kinds.insert(kinds.end(), {MuKind::Mu, MuKind::Nu});
        if (!bound_above(p, p.current).empty()) kinds.insert(kinds.end(), {MuKind::Var, MuKind::Var});
    }
    MuKind kind = kinds[pick(static_cast<int>(kinds.size()))];
    switch (kind) {
        case MuKind::Lit: {
            auto lits = literals_for(p.props);
            return MuLit{lits[pick(static_cast<int>(lits.size()))]};
        }
        case MuKind::Or:
        case MuKind::And: {
            auto [X1, X2] = subset_cover(kind == MuKind::Or ? A : B);
            int k1 = 0, k2 = 0;
            if (!v.labelled()) {
                k1 = 1 + pick(k - 2);
                k2 = k - 1 - k1;
            }
            if (kind == MuKind::Or) return MuOr{X1, X2, k1, k2};
            return MuAnd{X1, X2, k1, k2};
        }
        case MuKind::Dia: return MuDia{random_image(A)};
        case MuKind::Box: return MuBox{random_image(B)};
        case MuKind::Mu:
        case MuKind::Nu: {
            bool nu = kind == MuKind::Nu;
            std::vector<int> c;
            for (std::size_t i = 0; i < (nu ? B : A).size(); ++i) c.push_back(pick(p.clock_max + 1));
            return MuBind{nu, v.labelled() ? v.label.var : fresh_variable(p), c};
        }
        case MuKind::Var: {
            std::string x;
            if (v.labelled()) {
                x = v.label.var;
            } else {
                auto vars = bound_above(p, p.current);
                x = vars[pick(static_cast<int>(vars.size()))];
            }
            auto info = detail::jump_info(p, x);
            std::vector<int> c;
            for (const auto& m : cm::new_part(info.nu ? B : A)) {
                int lim = m.clocks.get(x);
                if (lim == 0) return MuJump{x, {}};
                c.push_back(pick(lim));
            }
            return MuJump{x, c};
        }
        default: ensure(false, "unexpected move kind"); return MuLit{};
    }
}

inline MuResponse random_d_response(const MuPosition& p, const MuMove& m, std::mt19937_64& rng) {
    auto in = inspect(p, m);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    switch (in.need) {
        case MuNeed::None: return std::monostate{};
        case MuNeed::Branch: return MuBranch{1 + pick(2)};
        case MuNeed::Subsets: {
            auto all = d_responses(p, m, {true, 0});
            auto s = std::get<MuSubsets>(all.front());
            if (pick(2) == 0) return s;
            MuSubsets r;
            for (const auto& x : s.A)
                if (pick(2)) r.A.push_back(x);
            for (const auto& x : s.B)
                if (pick(2)) r.B.push_back(x);
            return r;
        }
        case MuNeed::Clocks: {
            auto* j = std::get_if<MuJump>(&m);
            MuClocks c;
            for (const auto& x : in.d_side) c.clocks.push_back(pick(j ? x.clocks.get(j->var) : in.clock_limit));
            return c;
        }
    }
    return std::monostate{};
}

// ---------------------------------------------------------------------------
// Collections (defined while no vertex carries a modal label).

inline bool has_modal_label(const MuPosition& p) {
    for (const auto& vx : p.vertices)
        if (vx.label.kind == MuKind::Dia || vx.label.kind == MuKind::Box) return true;
    return false;
}

namespace detail {

inline ModelSet collection(const MuPosition& p, int s, bool left) {
    const auto& vx = p.vertices[s];
    const auto& own = left ? vx.left : vx.right;
    // On the left, mu-variables contribute nothing and or takes unions; the right is dual.
    MuKind empty_var = left ? MuKind::Mu : MuKind::Nu;
    MuKind union_op = left ? MuKind::Or : MuKind::And;
    switch (vx.label.kind) {
        case MuKind::None: return cm::points(own);
        case MuKind::Var: return binder_kind(p, vx.label.var) == empty_var ? ModelSet{} : cm::points(own);
        case MuKind::Mu:
        case MuKind::Nu: return set_union(cm::points(cm::new_part(own)), collection(p, vx.children[0], left));
        case MuKind::Or:
        case MuKind::And: {
            auto c1 = collection(p, vx.children[0], left), c2 = collection(p, vx.children[1], left);
            ModelSet merged;
            if (vx.label.kind == union_op)
                merged = set_union(c1, c2);
            else
                std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(merged));
            return set_union(cm::points(cm::new_part(own)), merged);
        }
        default: throw InputError("collections are undefined below modal or literal labels");
    }
}

inline void check_collectable(const MuPosition& p, int s) {
    p.at(s);
    require(p.cur().label.kind != MuKind::Lit, "collections need a non-literal current vertex");
    require(!has_modal_label(p), "collections are only defined before any modal move");
}

}  // namespace detail

inline ModelSet left_collection(const MuPosition& p, int s) {
    detail::check_collectable(p, s);
    return detail::collection(p, s, true);
}

inline ModelSet right_collection(const MuPosition& p, int s) {
    detail::check_collectable(p, s);
    return detail::collection(p, s, false);
}

// ---------------------------------------------------------------------------
// Position invariants and the termination measure.

// Every clocked model's clock domain is the set of variables bound above its vertex.
inline void check_clock_domains(const MuPosition& p) {
    for (std::size_t s = 0; s < p.vertices.size(); ++s) {
        auto vars = bound_above(p, static_cast<int>(s));
        std::sort(vars.begin(), vars.end());
        for (const auto* side : {&p.vertices[s].left, &p.vertices[s].right})
            for (const auto& m : *side) {
                std::vector<std::string> got;
                for (const auto& [x, c] : m.clocks.items()) got.push_back(x);
                ensure(got == vars, "clock domain mismatch at vertex " + std::to_string(s) + " for " + cm::describe(m));
            }
    }
}

// New models live only at the current vertex or at children of and/or vertices
// waiting for a later visit.
inline void check_aging(const MuPosition& p) {
    for (std::size_t s = 0; s < p.vertices.size(); ++s) {
        if (static_cast<int>(s) == p.current) continue;
        const auto& vx = p.vertices[s];
        bool waiting = vx.parent >= 0 && (p.vertices[vx.parent].label.kind == MuKind::Or || p.vertices[vx.parent].label.kind == MuKind::And);
        if (waiting) continue;
        ensure(cm::new_part(vx.left).empty() && cm::new_part(vx.right).empty(),
               "New model outside the current vertex at vertex " + std::to_string(s));
    }
}

// Each New model gets the potential ((res(u1), c(X1)), ..., (res(uk), c(Xk)), (res(s), inf))
// over the binders u1..uk above its vertex s. Every move replaces the New models
// at the current vertex by finitely many strictly smaller ones, so the multiset
// of potentials falls in the multiset ordering; moves that carry no New models
// go down a tree edge and lower res(current).
struct MuMeasure {
    using Potential = std::vector<std::pair<int, int>>;
    std::vector<Potential> tokens;  // sorted
    int res = 0;
};

inline MuMeasure termination_measure(const MuPosition& p) {
    constexpr int inf = std::numeric_limits<int>::max();
    MuMeasure m;
    for (std::size_t s = 0; s < p.vertices.size(); ++s) {
        std::vector<int> chain;
        for (int u = p.vertices[s].parent; u >= 0; u = p.vertices[u].parent)
            if (p.vertices[u].label.kind == MuKind::Mu || p.vertices[u].label.kind == MuKind::Nu) chain.push_back(u);
        std::reverse(chain.begin(), chain.end());
        for (const auto* side : {&p.vertices[s].left, &p.vertices[s].right})
            for (const auto& x : cm::new_part(*side)) {
                MuMeasure::Potential pot;
                for (int u : chain) pot.push_back({p.vertices[u].res, x.clocks.get(p.vertices[u].label.var)});
                pot.push_back({p.vertices[s].res, inf});
                m.tokens.push_back(std::move(pot));
            }
    }
    std::sort(m.tokens.begin(), m.tokens.end());
    m.res = p.cur().res;
    return m;
}

// Multiset ordering (total order on potentials): after < before iff the removed
// part is nonempty and its maximum exceeds every added potential.
inline bool measure_decreased(const MuMeasure& before, const MuMeasure& after) {
    std::vector<MuMeasure::Potential> removed, added;
    std::set_difference(before.tokens.begin(), before.tokens.end(), after.tokens.begin(), after.tokens.end(), std::back_inserter(removed));
    std::set_difference(after.tokens.begin(), after.tokens.end(), before.tokens.begin(), before.tokens.end(), std::back_inserter(added));
    if (removed.empty() && added.empty()) return after.res < before.res;
    if (removed.empty()) return false;
    return added.empty() || added.back() < removed.back();
}

// ---------------------------------------------------------------------------
// Agents and play.

class MuSAgent {
public:
    virtual ~MuSAgent() = default;
    virtual MuMove choose(const MuPosition& p) = 0;
    virtual std::unique_ptr<MuSAgent> clone() const = 0;
};

class MuDAgent {
public:
    virtual ~MuDAgent() = default;
    virtual MuInitial initial(const MuPosition& p) { return keep_all(p); }
    virtual MuResponse respond(const MuPosition& p, const MuMove& m) = 0;
    // Called at every non-terminal position of a play, before S moves.
    virtual void observe(const MuPosition&) {}
    virtual std::unique_ptr<MuDAgent> clone() const = 0;
};

class RandomMuS : public MuSAgent {
public:
    explicit RandomMuS(std::uint64_t seed) : rng_(seed) {}
    MuMove choose(const MuPosition& p) override { return random_s_move(p, rng_); }
    std::unique_ptr<MuSAgent> clone() const override { return std::make_unique<RandomMuS>(*this); }

private:
    std::mt19937_64 rng_;
};

class RandomMuD : public MuDAgent {
public:
    explicit RandomMuD(std::uint64_t seed) : rng_(seed) {}
    MuInitial initial(const MuPosition& p) override {
        MuInitial r;
        for (const auto& x : p.vertices[0].left)
            if (coin()) r.A.push_back(x);
        for (const auto& x : p.vertices[0].right)
            if (coin()) r.B.push_back(x);
        return r;
    }
    MuResponse respond(const MuPosition& p, const MuMove& m) override { return random_d_response(p, m, rng_); }
    std::unique_ptr<MuDAgent> clone() const override { return std::make_unique<RandomMuD>(*this); }

private:
    bool coin() { return std::uniform_int_distribution<int>(0, 3)(rng_) != 0; }
    std::mt19937_64 rng_;
};

// Keeps every model and uses the largest clocks; picks branch 1.
class GreedyMuD : public MuDAgent {
public:
    MuResponse respond(const MuPosition& p, const MuMove& m) override {
        auto r = d_responses(p, m, {true, 0});
        return r.empty() ? MuResponse{} : r.front();
    }
    std::unique_ptr<MuDAgent> clone() const override { return std::make_unique<GreedyMuD>(*this); }
};

struct MuStep {
    MuPosition position;
    MuMove move;
    MuResponse response;
};

struct MuTranscript {
    MuInitial initial;
    std::vector<MuStep> steps;
    MuPosition final_position;
    Terminal outcome{Player::D, ""};
};

struct MuPlayOptions {
    std::size_t max_steps = 1'000'000;
    bool check_measure = true;
    bool check_invariants = true;
    bool check_lrsets = false;
};

// Runtime check that left/right collections only grow. A snapshot is taken
// whenever the current vertex is the successor of a fixpoint vertex; it stays
// live until a jump returns strictly above that vertex or a modal move happens.
// Positions where New models wait at a variable leaf are not checked: such a
// leaf collects nothing on one side until a jump moves its models on, so the
// inclusion can fail there (see the counterexample test).
inline bool new_at_variable_leaf(const MuPosition& p) {
    for (const auto& vx : p.vertices)
        if (vx.label.kind == MuKind::Var && (!cm::new_part(vx.left).empty() || !cm::new_part(vx.right).empty())) return true;
    return p.cur().label.kind == MuKind::Var;
}

class LrsetsMonitor {
public:
    void observe(const MuPosition& p) {
        if (dead_ || has_modal_label(p)) {
            dead_ = true;
            return;
        }
        if (new_at_variable_leaf(p)) return;
        const auto& v = p.cur();
        for (const auto& s : snaps_) {
            auto L = left_collection(p, s.u), R = right_collection(p, s.u);
            if (!is_subset(s.L, L) || !is_subset(s.R, R))
                throw InvariantViolation("collection shrank at vertex " + std::to_string(s.u));
        }
        if (v.parent >= 0) {
            auto k = p.vertices[v.parent].label.kind;
            if (k == MuKind::Mu || k == MuKind::Nu)
                snaps_.push_back({p.current, left_collection(p, p.current), right_collection(p, p.current)});
        }
        ++checks_;
    }
    void after_move(const MuPosition& before, const MuMove& m) {
        if (dead_ || !std::holds_alternative<MuJump>(m)) return;
        auto info = detail::jump_info(before, std::get<MuJump>(m).var);
        if (info.target < 0) return;
        std::erase_if(snaps_, [&](const Snap& s) { return s.u != info.target && is_ancestor(before, info.target, s.u); });
    }
    std::size_t checks() const { return checks_; }

private:
    struct Snap {
        int u;
        ModelSet L, R;
    };
    std::vector<Snap> snaps_;
    bool dead_ = false;
    std::size_t checks_ = 0;
};

inline void check_position(const MuPosition& p) {
    check_clock_domains(p);
    check_aging(p);
}

inline MuTranscript play_mu(const MuPosition& p0, MuSAgent& s, MuDAgent& d, const MuPlayOptions& opt = {}) {
    MuTranscript t;
    t.initial = d.initial(p0);
    MuPosition p;
    try {
        p = apply_initial(p0, t.initial);
    } catch (const InputError& e) {
        throw AgentFault(Player::D, e.what());
    }
    LrsetsMonitor lr;
    while (true) {
        t.final_position = p;
        if (p.cur().res <= 0) {
            t.outcome = {Player::D, "resource-exhausted"};
            return t;
        }
        if (!s_can_move(p)) {
            t.outcome = {Player::D, "stuck"};
            return t;
        }
        if (opt.check_invariants) check_position(p);
        if (opt.check_lrsets) lr.observe(p);
        d.observe(p);
        ensure(t.steps.size() < opt.max_steps, "play exceeded step bound");
        MuMove m = s.choose(p);
        MuInspection in;
        try {
            in = inspect(p, m);
        } catch (const InputError& e) {
            throw AgentFault(Player::S, e.what());
        }
        MuResponse r;
        if (!in.terminal) {
            r = d.respond(p, m);
            try {
                check_response(p, m, in, r);
            } catch (const InputError& e) {
                throw AgentFault(Player::D, e.what());
            }
        }
        t.steps.push_back({p, m, r});
        auto next = apply_mu(p, m, r);
        if (auto* term = std::get_if<Terminal>(&next)) {
            t.outcome = *term;
            return t;
        }
        auto& q = std::get<MuPosition>(next);
        if (opt.check_measure)
            ensure(measure_decreased(termination_measure(p), termination_measure(q)), "termination measure did not decrease");
        if (opt.check_lrsets) lr.after_move(p, m);
        p = std::move(q);
    }
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json clocked_json(const ClockedModel& m) {
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [x, v] : m.clocks.items()) c[x] = v;
    return {{"model", m.pm.name()}, {"clocks", c}, {"age", m.age == Age::New ? "new" : "old"}};
}

inline nlohmann::json clocked_set_json(const ClockedSet& s) {
    auto j = nlohmann::json::array();
    for (const auto& m : s) j.push_back(clocked_json(m));
    return j;
}

inline std::string label_text(const MuLabel& l) {
    switch (l.kind) {
        case MuKind::None: return "";
        case MuKind::Mu: return "mu " + l.var;
        case MuKind::Nu: return "nu " + l.var;
        case MuKind::Var: return l.var;
        case MuKind::Lit: return print(l.lit);
        default: return kind_name(l.kind);
    }
}

inline nlohmann::json position_json(const MuPosition& p) {
    auto vs = nlohmann::json::array();
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        const auto& v = p.vertices[i];
        vs.push_back({{"id", i},
                      {"parent", v.parent},
                      {"children", v.children},
                      {"back", v.back},
                      {"label", label_text(v.label)},
                      {"res", v.res},
                      {"left", clocked_set_json(v.left)},
                      {"right", clocked_set_json(v.right)}});
    }
    return {{"current", p.current}, {"clock_max", p.clock_max}, {"vertices", vs}};
}

inline nlohmann::json mu_move_json(const MuMove& m) {
    nlohmann::json j{{"move", move_name(m)}};
    auto names = [](const std::vector<ClockedModel>& s) { return clocked_set_json(s); };
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MuOr>) {
                j["A1"] = names(x.A1), j["A2"] = names(x.A2), j["k1"] = x.k1, j["k2"] = x.k2;
            } else if constexpr (std::is_same_v<T, MuAnd>) {
                j["B1"] = names(x.B1), j["B2"] = names(x.B2), j["k1"] = x.k1, j["k2"] = x.k2;
            } else if constexpr (std::is_same_v<T, MuDia> || std::is_same_v<T, MuBox>) {
                j["image"] = names(x.image);
            } else if constexpr (std::is_same_v<T, MuBind> || std::is_same_v<T, MuJump>) {
                j["var"] = x.var, j["clocks"] = x.clocks;
            } else {
                j["literal"] = print(x.lit);
            }
        },
        m);
    return j;
}

inline nlohmann::json mu_response_json(const MuResponse& r) {
    if (auto* b = std::get_if<MuBranch>(&r)) return {{"branch", b->i}};
    if (auto* s = std::get_if<MuSubsets>(&r)) return {{"A", clocked_set_json(s->A)}, {"B", clocked_set_json(s->B)}};
    if (auto* c = std::get_if<MuClocks>(&r)) return {{"clocks", c->clocks}};
    return nullptr;
}

inline nlohmann::json mu_transcript_json(const MuTranscript& t) {
    auto steps = nlohmann::json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"current", s.position.current},
                         {"res", s.position.cur().res},
                         {"move", mu_move_json(s.move)},
                         {"response", mu_response_json(s.response)}});
    return {{"initial", {{"A", clocked_set_json(t.initial.A)}, {"B", clocked_set_json(t.initial.B)}}},
            {"steps", steps},
            {"winner", to_string(t.outcome.winner)},
            {"reason", t.outcome.reason}};
}

}  // namespace fsg
