#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fsg/errors.hpp"

namespace fsg {

// First-order formulas kept only for size accounting. Atoms are opaque tokens.
struct FONode;
using FOPtr = std::shared_ptr<const FONode>;

struct FONode {
    enum class Kind { Atom, Not, Or, And, Exists, Forall } kind;
    std::string label;  // atom text or quantified variable
    FOPtr a, b;
};

namespace fo {
inline FOPtr atom(std::string t) { return std::make_shared<const FONode>(FONode{FONode::Kind::Atom, std::move(t), nullptr, nullptr}); }
inline FOPtr lnot(FOPtr f) { return std::make_shared<const FONode>(FONode{FONode::Kind::Not, "", std::move(f), nullptr}); }
inline FOPtr lor(FOPtr f, FOPtr g) { return std::make_shared<const FONode>(FONode{FONode::Kind::Or, "", std::move(f), std::move(g)}); }
inline FOPtr land(FOPtr f, FOPtr g) { return std::make_shared<const FONode>(FONode{FONode::Kind::And, "", std::move(f), std::move(g)}); }
inline FOPtr exists(std::string x, FOPtr f) { return std::make_shared<const FONode>(FONode{FONode::Kind::Exists, std::move(x), std::move(f), nullptr}); }
inline FOPtr forall(std::string x, FOPtr f) { return std::make_shared<const FONode>(FONode{FONode::Kind::Forall, std::move(x), std::move(f), nullptr}); }
// a -> b  as  ~a | b
inline FOPtr implies(FOPtr a, FOPtr b) { return lor(lnot(std::move(a)), std::move(b)); }
// a <-> b  as  (a & b) | (~a & ~b)
inline FOPtr iff(const FOPtr& a, const FOPtr& b) { return lor(land(a, b), land(lnot(a), lnot(b))); }
}  // namespace fo

// Negation is free; binary connectives and quantifiers add one.
inline std::size_t size_fo(const FOPtr& f) {
    using K = FONode::Kind;
    switch (f->kind) {
        case K::Atom: return 1;
        case K::Not: return size_fo(f->a);
        case K::Or:
        case K::And: return size_fo(f->a) + size_fo(f->b) + 1;
        case K::Exists:
        case K::Forall: return size_fo(f->a) + 1;
    }
    return 0;
}

inline std::string print_fo(const FOPtr& f) {
    using K = FONode::Kind;
    switch (f->kind) {
        case K::Atom: return f->label;
        case K::Not: return "~" + print_fo(f->a);
        case K::Or: return "(" + print_fo(f->a) + " | " + print_fo(f->b) + ")";
        case K::And: return "(" + print_fo(f->a) + " & " + print_fo(f->b) + ")";
        case K::Exists: return "E" + f->label + "." + print_fo(f->a);
        case K::Forall: return "A" + f->label + "." + print_fo(f->a);
    }
    return "";
}

namespace detail {
inline FOPtr R(const std::string& x, const std::string& y) { return fo::atom("R(" + x + "," + y + ")"); }

// psi_n(x, y) expresses n-bisimilarity of x and y; fresh variable names per level.
inline FOPtr psi(std::size_t n, const std::string& x, const std::string& y) {
    if (n == 1) return fo::iff(fo::exists("s1", R(x, "s1")), fo::exists("t1", R(y, "t1")));
    std::string s = "s" + std::to_string(n), t = "t" + std::to_string(n);
    auto body = fo::land(fo::land(fo::implies(R(x, s), R(y, t)), fo::implies(R(y, s), R(x, t))),
                         fo::implies(fo::lor(R(x, s), R(y, s)), psi(n - 1, s, t)));
    return fo::forall(s, fo::exists(t, body));
}
}  // namespace detail

inline FOPtr build_psi(std::size_t n) {
    require(n >= 1, "build_psi needs n >= 1");
    return detail::psi(n, "x", "y");
}

inline FOPtr build_phi(std::size_t n) {
    require(n >= 1, "build_phi needs n >= 1");
    using detail::R;
    return fo::forall("y", fo::forall("z", fo::implies(fo::land(R("x", "y"), R("x", "z")), detail::psi(n, "y", "z"))));
}

}  // namespace fsg
