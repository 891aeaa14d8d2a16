#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "fsg/errors.hpp"

namespace fsg::hf {

// Hereditarily finite sets are identified with their canonical brace string:
// "{" + sorted distinct element strings joined by "," + "}".
// Elements sort by (length, text), so the empty set comes first.

inline bool canonical_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline std::string make(std::vector<std::string> elems) {
    std::sort(elems.begin(), elems.end(), canonical_less);
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    std::string out = "{";
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out += ",";
        out += elems[i];
    }
    out += "}";
    return out;
}

inline std::string empty() { return "{}"; }

// Splits a canonical encoding into its top-level element encodings.
inline std::vector<std::string> elements(const std::string& s) {
    require(s.size() >= 2 && s.front() == '{' && s.back() == '}', "not an hfset encoding: " + s);
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 1;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        char c = s[i];
        if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            require(depth >= 0, "unbalanced hfset encoding: " + s);
        } else if (c == ',') {
            if (depth == 0) {
                out.push_back(s.substr(start, i - start));
                start = i + 1;
            }
        } else {
            throw InputError("bad character in hfset encoding: " + s);
        }
    }
    require(depth == 0, "unbalanced hfset encoding: " + s);
    if (s.size() > 2) out.push_back(s.substr(start, s.size() - 1 - start));
    for (const auto& e : out) require(!e.empty(), "empty element in hfset encoding: " + s);
    return out;
}

inline bool is_canonical(const std::string& s) {
    try {
        auto el = elements(s);
        for (const auto& e : el)
            if (!is_canonical(e)) return false;
        return make(el) == s;
    } catch (const InputError&) {
        return false;
    }
}

inline std::size_t rank(const std::string& s) {
    std::size_t r = 0;
    for (const auto& e : elements(s)) r = std::max(r, rank(e) + 1);
    return r;
}

inline bool member(const std::string& elem, const std::string& set) {
    for (const auto& e : elements(set))
        if (e == elem) return true;
    return false;
}

// V_n in canonical order: V_0 = {}, V_{n+1} = powerset(V_n).
inline std::vector<std::string> level(std::size_t n) {
    require(n <= 5, "cumulative level too large");
    std::vector<std::string> cur;
    for (std::size_t i = 0; i < n; ++i) {
        require(cur.size() < 20, "cumulative level too large");
        std::vector<std::string> next;
        std::size_t m = cur.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            std::vector<std::string> el;
            for (std::size_t j = 0; j < m; ++j)
                if (mask >> j & 1) el.push_back(cur[j]);
            next.push_back(make(el));
        }
        std::sort(next.begin(), next.end(), canonical_less);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace fsg::hf
