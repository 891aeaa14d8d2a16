#pragma once

#include <cstdint>
#include <limits>

#include "fsg/formula.hpp"
#include "fsg/parser.hpp"

namespace fsg {

// tower(0) = 1, tower(n+1) = 2^tower(n); errors once the value leaves 64 bits.
inline std::uint64_t tower(std::size_t n) {
    std::uint64_t t = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (t >= 64) throw InputError("tower(" + std::to_string(n) + ") overflows 64 bits");
        t = std::uint64_t{1} << t;
    }
    return t;
}

// rho_1 = <1>T <-> <2>T, expanded as (a & b) | (~a & ~b) in negation normal form.
// rho_{n+1} = [1]<2>rho_n & [2]<1>rho_n.
inline Formula build_rho(std::size_t n) {
    require(n >= 1, "build_rho needs n >= 1");
    Formula r = Formula::lor(Formula::land(Formula::dia(Formula::top(), 1), Formula::dia(Formula::top(), 2)),
                             Formula::land(Formula::box(Formula::bot(), 1), Formula::box(Formula::bot(), 2)));
    for (std::size_t i = 1; i < n; ++i)
        r = Formula::land(Formula::box(Formula::dia(r, 2), 1), Formula::box(Formula::dia(r, 1), 2));
    return r;
}

inline Formula build_zeta(std::size_t n) { return Formula::box(Formula::box(build_rho(n), 2), 1); }

// The hand-built separator of C_1 from D_1.
inline Formula c1_separator() { return parse_ml("([]([]F) | []<>T)"); }

}  // namespace fsg
