#pragma once

#include <vector>

#include "fsg/kripke.hpp"

namespace fsg {

// (M_a, a) for every a in V_{n+1}, in canonical order.
inline std::vector<PointedModel> hierarchy_submodels(std::size_t n) {
    auto f = cumulative_level(n + 1);
    std::vector<PointedModel> out;
    for (const auto& a : f->names()) out.emplace_back(generated_submodel(*f, a), a);
    return out;
}

// C_n: one-successor joins over V_{n+1}.
inline std::vector<PointedModel> build_C(std::size_t n) {
    require(n >= 1 && n <= 3, "build_C supports 1 <= n <= 3");
    std::vector<PointedModel> out;
    for (const auto& m : hierarchy_submodels(n)) out.push_back(join({m}));
    return out;
}

// D_n: two-successor joins over unordered pairs of distinct elements of V_{n+1}.
inline std::vector<PointedModel> build_D(std::size_t n) {
    require(n >= 1 && n <= 3, "build_D supports 1 <= n <= 3");
    auto subs = hierarchy_submodels(n);
    std::vector<PointedModel> out;
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = i + 1; j < subs.size(); ++j) out.push_back(join({subs[i], subs[j]}));
    return out;
}

}  // namespace fsg
