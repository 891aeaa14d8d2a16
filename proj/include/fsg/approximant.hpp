#pragma once

#include <map>
#include <string>
#include <utility>

#include "fsg/eval.hpp"
#include "fsg/syntax_tree.hpp"

namespace fsg {

// Evaluates the clocked approximant of a sentence at a syntax-tree vertex
// without building it. Clocks are naturals; the limit clauses never arise.
class ApproximantEvaluator {
public:
    ApproximantEvaluator(const SyntaxTree& tree, const KripkeModel& model) : t_(tree), m_(model) {}

    // dom(clocks) must be exactly the fixpoint variables above s.
    WorldSet denotation(int s, const Clocks& clocks) {
        t_.at(s);
        check_domain(s, clocks);
        return denot(s, clocks, {});
    }

    bool holds(int s, const Clocks& clocks, int world) { return denotation(s, clocks).test(world); }

private:
    void check_domain(int s, const Clocks& clocks) const {
        std::vector<std::string> expect;
        for (int u : t_.fixpoints_above(s)) expect.push_back(t_.vertices[u].label.name());
        std::sort(expect.begin(), expect.end());
        std::vector<std::string> got;
        for (const auto& [x, v] : clocks.items()) {
            require(v >= 0, "negative clock");
            got.push_back(x);
        }
        require(expect == got, "clock domain must equal the fixpoint variables above the vertex");
    }

    WorldSet denot(int s, const Clocks& c, const Valuation& rho) {
        const auto& vx = t_.vertices[s];
        const Formula& f = vx.label;
        switch (f.op()) {
            case Op::Or: return denot(vx.children[0], c, rho) | denot(vx.children[1], c, rho);
            case Op::And: return denot(vx.children[0], c, rho) & denot(vx.children[1], c, rho);
            case Op::Dia: return pre_dia(m_, denot(vx.children[0], c, rho));
            case Op::Box: return pre_box(m_, denot(vx.children[0], c, rho));
            case Op::Mu:
            case Op::Nu: {
                // Not approximated from here: an ordinary fixpoint whose
                // variable occurrences below are free.
                Valuation inner = rho;
                WorldSet cur(m_.size());
                if (f.op() == Op::Nu) cur.set();
                while (true) {
                    inner[f.name()] = cur;
                    WorldSet next = denot(vx.children[0], c, inner);
                    if (next == cur) return cur;
                    cur = std::move(next);
                }
            }
            case Op::Var: {
                if (!c.has(f.name())) {
                    auto it = rho.find(f.name());
                    ensure(it != rho.end(), "variable without clock or valuation");
                    return it->second;
                }
                int alpha = c.get(f.name());
                bool least = t_.vertices[vx.binder].label.op() == Op::Mu;
                if (alpha == 0) return least ? WorldSet(m_.size()) : WorldSet(m_.size()).set();
                Clocks next = c;
                next.set(f.name(), alpha - 1);
                // Forget clocks of fixpoints nested inside the binder.
                for (int u : t_.fixpoints_above(s))
                    if (t_.is_below(u, vx.binder) && u != vx.binder) next.erase(t_.vertices[u].label.name());
                return jump(vx.back, next);
            }
            default: return literal_denotation(f, m_);
        }
    }

    // The jump target's approximant is closed, so it does not depend on rho.
    WorldSet jump(int u, const Clocks& c) {
        auto key = std::make_pair(u, c);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        WorldSet r = denot(u, c, {});
        memo_.emplace(std::move(key), r);
        return r;
    }

    const SyntaxTree& t_;
    const KripkeModel& m_;
    std::map<std::pair<int, Clocks>, WorldSet> memo_;
};

inline bool approximant_holds(const SyntaxTree& tree, int s, const Clocks& clocks, const PointedModel& pm) {
    ApproximantEvaluator ev(tree, *pm.model);
    return ev.holds(s, clocks, pm.point);
}

}  // namespace fsg
