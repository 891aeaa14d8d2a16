#pragma once

#include <map>
#include <string>
#include <utility>

#include "fsg/formula.hpp"
#include "fsg/kripke.hpp"

namespace fsg {

using Valuation = std::map<std::string, WorldSet>;

// Worlds with at least one successor in s.
inline WorldSet pre_dia(const KripkeModel& m, const WorldSet& s) {
    WorldSet out(m.size());
    for (std::size_t w = 0; w < m.size(); ++w)
        for (int v : m.succ(static_cast<int>(w)))
            if (s.test(v)) {
                out.set(w);
                break;
            }
    return out;
}

// Worlds all of whose successors lie in s.
inline WorldSet pre_box(const KripkeModel& m, const WorldSet& s) {
    WorldSet out(m.size());
    for (std::size_t w = 0; w < m.size(); ++w) {
        bool all = true;
        for (int v : m.succ(static_cast<int>(w)))
            if (!s.test(v)) {
                all = false;
                break;
            }
        if (all) out.set(w);
    }
    return out;
}

inline WorldSet literal_denotation(const Formula& f, const KripkeModel& m) {
    switch (f.op()) {
        case Op::Top: return WorldSet(m.size()).set();
        case Op::Bot: return WorldSet(m.size());
        case Op::Prop: return m.prop(f.name());
        case Op::NegProp: return ~m.prop(f.name());
        default: throw InvariantViolation("not a literal");
    }
}

// Denotation with fixpoints computed by Kleene iteration: least fixpoints from
// the empty set upward, greatest fixpoints from the full set downward.
inline WorldSet eval_mu(const Formula& f, const KripkeModel& m, const Valuation& rho = {}) {
    switch (f.op()) {
        case Op::Var: {
            auto it = rho.find(f.name());
            require(it != rho.end(), "unbound variable " + f.name());
            require(it->second.size() == m.size(), "valuation of " + f.name() + " has wrong size");
            return it->second;
        }
        case Op::Or: return eval_mu(f.left(), m, rho) | eval_mu(f.right(), m, rho);
        case Op::And: return eval_mu(f.left(), m, rho) & eval_mu(f.right(), m, rho);
        case Op::Dia:
            require(f.mod() == 0, "indexed modality in a one-dimensional formula");
            return pre_dia(m, eval_mu(f.child(), m, rho));
        case Op::Box:
            require(f.mod() == 0, "indexed modality in a one-dimensional formula");
            return pre_box(m, eval_mu(f.child(), m, rho));
        case Op::Mu:
        case Op::Nu: {
            Valuation inner = rho;
            WorldSet cur(m.size());
            if (f.op() == Op::Nu) cur.set();
            while (true) {
                inner[f.name()] = cur;
                WorldSet next = eval_mu(f.child(), m, inner);
                if (next == cur) return cur;
                cur = std::move(next);
            }
        }
        default: return literal_denotation(f, m);
    }
}

inline WorldSet eval_ml_set(const Formula& f, const KripkeModel& m) { return eval_mu(f, m); }

inline bool eval_ml(const Formula& f, const PointedModel& pm) { return eval_mu(f, *pm.model).test(pm.point); }

inline bool eval_mu_at(const Formula& f, const PointedModel& pm) { return eval_mu(f, *pm.model).test(pm.point); }

// Two-dimensional evaluation on the diagonal lift (W, R, R, V). A pair (u, v) is
// encoded as u * |W| + v; propositions are read at the first coordinate.
inline WorldSet eval_ml2_set(const Formula& f, const KripkeModel& m) {
    std::size_t n = m.size();
    WorldSet out(n * n);
    switch (f.op()) {
        case Op::Top: return out.set();
        case Op::Bot: return out;
        case Op::Prop:
        case Op::NegProp: {
            WorldSet p = literal_denotation(f, m);
            for (std::size_t u = 0; u < n; ++u)
                if (p.test(u))
                    for (std::size_t v = 0; v < n; ++v) out.set(u * n + v);
            return out;
        }
        case Op::Or: return eval_ml2_set(f.left(), m) | eval_ml2_set(f.right(), m);
        case Op::And: return eval_ml2_set(f.left(), m) & eval_ml2_set(f.right(), m);
        case Op::Dia:
        case Op::Box: {
            require(f.mod() == 1 || f.mod() == 2, "ML2 modalities need an index");
            WorldSet s = eval_ml2_set(f.child(), m);
            bool dia = f.op() == Op::Dia;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = 0; v < n; ++v) {
                    bool any = false, all = true;
                    const auto& succ = m.succ(static_cast<int>(f.mod() == 1 ? u : v));
                    for (int x : succ) {
                        bool in = f.mod() == 1 ? s.test(x * n + v) : s.test(u * n + x);
                        any = any || in;
                        all = all && in;
                    }
                    if (dia ? any : all) out.set(u * n + v);
                }
            return out;
        }
        default: throw InputError("fixpoints are not part of ML2");
    }
}

inline bool eval_ml2(const Formula& f, const KripkeModel& m, int u, int v) {
    return eval_ml2_set(f, m).test(static_cast<std::size_t>(u) * m.size() + v);
}

}  // namespace fsg
