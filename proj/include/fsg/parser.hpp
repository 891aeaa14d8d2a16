#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "fsg/formula.hpp"

namespace fsg {

// Grammar (| binds weakest, & tighter, both left-associative):
//   or    := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := 'T' | 'F' | ident | '~' ident | '(' or ')'
//          | modal unary | ('mu' | 'nu') ident '.' or
//   modal := '<>' | '[]' | '<1>' | '<2>' | '[1]' | '[2]'
// An identifier is a variable when an enclosing fixpoint binds it.
class Parser {
public:
    Parser(std::string text, Logic logic) : s_(std::move(text)), logic_(logic) {}

    Formula parse() {
        Formula f = parse_or();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        for (const auto& p : props_)
            if (binders_.count(p)) fail("identifier " + p + " is used both as a proposition and as a bound variable");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek_str(const std::string& t) {
        skip_ws();
        return s_.compare(pos_, t.size(), t) == 0;
    }
    bool accept(const std::string& t) {
        if (!peek_str(t)) return false;
        pos_ += t.size();
        return true;
    }
    void expect(const std::string& t) {
        if (!accept(t)) fail("expected '" + t + "'");
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
            ++pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        }
        if (start == pos_) fail("expected identifier");
        return s_.substr(start, pos_ - start);
    }
    static bool reserved(const std::string& id) { return id == "T" || id == "F" || id == "mu" || id == "nu"; }

    Formula parse_or() {
        Formula f = parse_and();
        while (accept("|")) f = Formula::lor(f, parse_and());
        return f;
    }
    Formula parse_and() {
        Formula f = parse_unary();
        while (accept("&")) f = Formula::land(f, parse_unary());
        return f;
    }

    Formula parse_modal(Op op, int mod) {
        bool two_dim = logic_ == Logic::ML2;
        if (two_dim != (mod != 0)) fail(two_dim ? "use indexed modalities <1>, <2>, [1], [2]" : "indexed modalities are only allowed in ML2");
        Formula body = parse_unary();
        return op == Op::Dia ? Formula::dia(body, mod) : Formula::box(body, mod);
    }

    Formula parse_unary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (accept("(")) {
            Formula f = parse_or();
            expect(")");
            return f;
        }
        if (accept("<>")) return parse_modal(Op::Dia, 0);
        if (accept("[]")) return parse_modal(Op::Box, 0);
        if (accept("<1>")) return parse_modal(Op::Dia, 1);
        if (accept("<2>")) return parse_modal(Op::Dia, 2);
        if (accept("[1]")) return parse_modal(Op::Box, 1);
        if (accept("[2]")) return parse_modal(Op::Box, 2);
        if (accept("~")) {
            std::string p = ident();
            if (reserved(p)) fail("cannot negate " + p);
            if (is_bound(p)) fail("negated bound variable " + p);
            props_.insert(p);
            return Formula::neg_prop(p);
        }
        std::size_t at = pos_;
        std::string id = ident();
        if (id == "T") return Formula::top();
        if (id == "F") return Formula::bot();
        if (id == "mu" || id == "nu") {
            if (logic_ != Logic::Mu) {
                pos_ = at;
                fail("fixpoints are only allowed in the mu-calculus");
            }
            std::string x = ident();
            if (reserved(x)) fail("reserved word used as variable: " + x);
            if (binders_.count(x)) fail("duplicate bound variable " + x);
            binders_.insert(x);
            expect(".");
            scope_.push_back(x);
            Formula body = parse_or();
            scope_.pop_back();
            return id == "mu" ? Formula::mu(x, body) : Formula::nu(x, body);
        }
        if (is_bound(id)) return Formula::var(id);
        props_.insert(id);
        return Formula::prop(id);
    }

    bool is_bound(const std::string& id) const {
        for (const auto& x : scope_)
            if (x == id) return true;
        return false;
    }

    std::string s_;
    Logic logic_;
    std::size_t pos_ = 0;
    std::vector<std::string> scope_;
    std::set<std::string> binders_;
    std::set<std::string> props_;
};

inline Formula parse(const std::string& text, Logic logic) { return Parser(text, logic).parse(); }
inline Formula parse_ml(const std::string& text) { return parse(text, Logic::ML); }
inline Formula parse_mu(const std::string& text) { return parse(text, Logic::Mu); }
inline Formula parse_ml2(const std::string& text) { return parse(text, Logic::ML2); }

}  // namespace fsg
