#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fsg/errors.hpp"

namespace fsg {

// One AST shared by ML, the mu-calculus and two-dimensional ML. All formulas
// are in negation normal form: negation only appears inside NegProp.
enum class Op { Top, Bot, Prop, NegProp, Var, Or, And, Dia, Box, Mu, Nu };

enum class Logic { ML, Mu, ML2 };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;  // proposition or variable name
    int mod = 0;       // 0 for one-dimensional modalities, 1 or 2 for ML2
    NodePtr a, b;      // children; `a` is the only child of unary nodes
};

class Formula {
public:
    Formula() = default;
    explicit Formula(NodePtr n) : n_(std::move(n)) {}

    static Formula top() { return mk(Op::Top); }
    static Formula bot() { return mk(Op::Bot); }
    static Formula prop(std::string p) { return mk(Op::Prop, std::move(p)); }
    static Formula neg_prop(std::string p) { return mk(Op::NegProp, std::move(p)); }
    static Formula var(std::string x) { return mk(Op::Var, std::move(x)); }
    static Formula lor(const Formula& f, const Formula& g) { return mk(Op::Or, "", 0, f.n_, g.n_); }
    static Formula land(const Formula& f, const Formula& g) { return mk(Op::And, "", 0, f.n_, g.n_); }
    static Formula dia(const Formula& f, int mod = 0) { return mk(Op::Dia, "", mod, f.n_); }
    static Formula box(const Formula& f, int mod = 0) { return mk(Op::Box, "", mod, f.n_); }
    static Formula mu(std::string x, const Formula& f) { return mk(Op::Mu, std::move(x), 0, f.n_); }
    static Formula nu(std::string x, const Formula& f) { return mk(Op::Nu, std::move(x), 0, f.n_); }

    Op op() const { return n_->op; }
    const std::string& name() const { return n_->name; }
    int mod() const { return n_->mod; }
    Formula left() const { return Formula(n_->a); }
    Formula right() const { return Formula(n_->b); }
    Formula child() const { return Formula(n_->a); }
    const NodePtr& node() const { return n_; }
    bool valid() const { return n_ != nullptr; }

    bool is_literal() const {
        return op() == Op::Top || op() == Op::Bot || op() == Op::Prop || op() == Op::NegProp;
    }
    bool is_binary() const { return op() == Op::Or || op() == Op::And; }
    bool is_modal() const { return op() == Op::Dia || op() == Op::Box; }
    bool is_fixpoint() const { return op() == Op::Mu || op() == Op::Nu; }

private:
    static Formula mk(Op op, std::string name = "", int mod = 0, NodePtr a = nullptr, NodePtr b = nullptr) {
        return Formula(std::make_shared<const Node>(Node{op, std::move(name), mod, std::move(a), std::move(b)}));
    }
    NodePtr n_;
};

using MLFormula = Formula;
using MuFormula = Formula;
using ML2Formula = Formula;

// Literals cost 1, binary nodes add 1 to their children, unary nodes add 1.
inline std::size_t size(const Formula& f) {
    switch (f.op()) {
        case Op::Or:
        case Op::And: return size(f.left()) + size(f.right()) + 1;
        case Op::Dia:
        case Op::Box:
        case Op::Mu:
        case Op::Nu: return size(f.child()) + 1;
        default: return 1;
    }
}
inline std::size_t size_ml(const Formula& f) { return size(f); }
inline std::size_t size_mu(const Formula& f) { return size(f); }
inline std::size_t size_ml2(const Formula& f) { return size(f); }

inline std::size_t modal_depth(const Formula& f) {
    switch (f.op()) {
        case Op::Or:
        case Op::And: return std::max(modal_depth(f.left()), modal_depth(f.right()));
        case Op::Dia:
        case Op::Box: return modal_depth(f.child()) + 1;
        case Op::Mu:
        case Op::Nu: return modal_depth(f.child());
        default: return 0;
    }
}

inline bool structurally_equal(const Formula& f, const Formula& g) {
    if (f.op() != g.op() || f.name() != g.name() || f.mod() != g.mod()) return false;
    if (f.is_binary()) return structurally_equal(f.left(), g.left()) && structurally_equal(f.right(), g.right());
    if (f.is_modal() || f.is_fixpoint()) return structurally_equal(f.child(), g.child());
    return true;
}

inline std::set<std::string> props_of(const Formula& f) {
    std::set<std::string> out;
    auto go = [&](auto&& self, const Formula& g) -> void {
        if (g.op() == Op::Prop || g.op() == Op::NegProp) out.insert(g.name());
        if (g.is_binary()) {
            self(self, g.left());
            self(self, g.right());
        } else if (g.is_modal() || g.is_fixpoint()) {
            self(self, g.child());
        }
    };
    go(go, f);
    return out;
}

inline std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    auto go = [&](auto&& self, const Formula& g, std::set<std::string>& bound) -> void {
        switch (g.op()) {
            case Op::Var:
                if (!bound.count(g.name())) out.insert(g.name());
                break;
            case Op::Or:
            case Op::And:
                self(self, g.left(), bound);
                self(self, g.right(), bound);
                break;
            case Op::Dia:
            case Op::Box: self(self, g.child(), bound); break;
            case Op::Mu:
            case Op::Nu: {
                bool added = bound.insert(g.name()).second;
                self(self, g.child(), bound);
                if (added) bound.erase(g.name());
                break;
            }
            default: break;
        }
    };
    std::set<std::string> bound;
    go(go, f, bound);
    return out;
}

// Bound variables in preorder; duplicates are reported by `distinct_binders`.
inline std::vector<std::string> binders(const Formula& f) {
    std::vector<std::string> out;
    auto go = [&](auto&& self, const Formula& g) -> void {
        if (g.is_fixpoint()) out.push_back(g.name());
        if (g.is_binary()) {
            self(self, g.left());
            self(self, g.right());
        } else if (g.is_modal() || g.is_fixpoint()) {
            self(self, g.child());
        }
    };
    go(go, f);
    return out;
}

inline bool distinct_binders(const Formula& f) {
    auto b = binders(f);
    std::set<std::string> s(b.begin(), b.end());
    return s.size() == b.size();
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty() && distinct_binders(f); }

// True if the formula only uses constructors of the given logic.
inline bool fits_logic(const Formula& f, Logic logic) {
    switch (f.op()) {
        case Op::Var:
        case Op::Mu:
        case Op::Nu:
            if (logic != Logic::Mu) return false;
            return f.op() == Op::Var || fits_logic(f.child(), logic);
        case Op::Or:
        case Op::And: return fits_logic(f.left(), logic) && fits_logic(f.right(), logic);
        case Op::Dia:
        case Op::Box:
            if ((logic == Logic::ML2) != (f.mod() != 0)) return false;
            return fits_logic(f.child(), logic);
        default: return true;
    }
}

namespace detail {
inline std::string modal_prefix(const Formula& f) {
    std::string m = f.mod() ? std::to_string(f.mod()) : "";
    return f.op() == Op::Dia ? "<" + m + ">" : "[" + m + "]";
}

// `tail` is true when nothing follows this subformula before a closing
// parenthesis or end of input; fixpoint bodies extend as far right as
// possible, so a fixpoint in non-tail position needs parentheses.
inline void print_into(const Formula& f, bool tail, std::string& out) {
    switch (f.op()) {
        case Op::Top: out += "T"; break;
        case Op::Bot: out += "F"; break;
        case Op::Prop:
        case Op::Var: out += f.name(); break;
        case Op::NegProp: out += "~" + f.name(); break;
        case Op::Or:
        case Op::And:
            out += "(";
            print_into(f.left(), false, out);
            out += f.op() == Op::Or ? " | " : " & ";
            print_into(f.right(), true, out);
            out += ")";
            break;
        case Op::Dia:
        case Op::Box:
            out += modal_prefix(f);
            print_into(f.child(), tail, out);
            break;
        case Op::Mu:
        case Op::Nu:
            if (!tail) out += "(";
            out += (f.op() == Op::Mu ? "mu " : "nu ") + f.name() + ". ";
            print_into(f.child(), true, out);
            if (!tail) out += ")";
            break;
    }
}
}  // namespace detail

inline std::string print(const Formula& f) {
    std::string out;
    detail::print_into(f, true, out);
    return out;
}
inline std::string print_ml(const Formula& f) { return print(f); }
inline std::string print_mu(const Formula& f) { return print(f); }
inline std::string print_ml2(const Formula& f) { return print(f); }

}  // namespace fsg
