#pragma once

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsg/bisimulation.hpp"
#include "fsg/cd_models.hpp"
#include "fsg/families.hpp"
#include "fsg/fo_skeleton.hpp"
#include "fsg/graph.hpp"
#include "fsg/ml_agents.hpp"
#include "fsg/ml_synth.hpp"
#include "fsg/mu_agents.hpp"
#include "fsg/workers.hpp"

namespace fsg {

struct ReportRow {
    std::string experiment;
    int n = 0;
    std::string claim, expected, computed;
    bool pass = false;
};

struct Report {
    std::vector<ReportRow> rows;

    void add(std::string experiment, int n, std::string claim, std::string expected, std::string computed, bool pass) {
        rows.push_back({std::move(experiment), n, std::move(claim), std::move(expected), std::move(computed), pass});
    }
    void append(const Report& other) { rows.insert(rows.end(), other.rows.begin(), other.rows.end()); }
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string report_csv(const Report& r) {
    std::string out = "experiment,n,claim,expected,computed,status\n";
    for (const auto& row : r.rows)
        out += csv_field(row.experiment) + "," + std::to_string(row.n) + "," + csv_field(row.claim) + "," +
               csv_field(row.expected) + "," + csv_field(row.computed) + "," + (row.pass ? "PASS" : "FAIL") + "\n";
    return out;
}

inline nlohmann::json report_json(const Report& r) {
    auto out = nlohmann::json::array();
    for (const auto& row : r.rows)
        out.push_back({{"experiment", row.experiment},
                       {"n", row.n},
                       {"claim", row.claim},
                       {"expected", row.expected},
                       {"computed", row.computed},
                       {"status", row.pass ? "PASS" : "FAIL"}});
    return out;
}

// Decimal when it fits in 64 bits, then one level of exponent, then symbolic.
inline std::string tower_text(std::size_t n) {
    try {
        return std::to_string(tower(n));
    } catch (const InputError&) {
    }
    try {
        return "2^" + std::to_string(tower(n - 1));
    } catch (const InputError&) {
    }
    return "tower(" + std::to_string(n) + ")";
}

// ---- size tables ---------------------------------------------------------

struct SizeRow {
    std::size_t n, psi, phi, zeta;
    std::string tower;  // tower(n-1)
};

inline std::vector<SizeRow> fo_ml2_size_table(std::size_t n_max) {
    require(n_max >= 1 && n_max <= 10, "fo-ml2-sizes supports 1 <= n <= 10");
    std::vector<SizeRow> rows;
    for (std::size_t n = 1; n <= n_max; ++n)
        rows.push_back({n, size_fo(build_psi(n)), size_fo(build_phi(n)), size(build_zeta(n)), tower_text(n - 1)});
    return rows;
}

inline std::string size_table_csv(const std::vector<SizeRow>& rows) {
    std::string out = "n,psi,phi,zeta,tower\n";
    for (const auto& r : rows)
        out += std::to_string(r.n) + "," + std::to_string(r.psi) + "," + std::to_string(r.phi) + "," +
               std::to_string(r.zeta) + "," + r.tower + "\n";
    return out;
}

inline Report experiment_fo_ml2_sizes(std::size_t n_max) {
    Report rep;
    const std::string ex = "fo-ml2-sizes";
    for (const auto& r : fo_ml2_size_table(n_max)) {
        int n = static_cast<int>(r.n);
        std::size_t psi = 14 * r.n - 3, phi = 14 * r.n + 3, zeta = (std::size_t{1} << (r.n + 4)) - 3;
        rep.add(ex, n, "s(psi_n) = 14n-3", std::to_string(psi), std::to_string(r.psi), r.psi == psi);
        rep.add(ex, n, "s(phi_n) = 14n+3", std::to_string(phi), std::to_string(r.phi), r.phi == phi);
        rep.add(ex, n, "s(zeta_n) = 2^(n+4)-3", std::to_string(zeta), std::to_string(r.zeta), r.zeta == zeta);
    }
    return rep;
}

// ---- hierarchy facts -----------------------------------------------------

// Distinct elements of V_{n+1} give pairwise non-n-bisimilar pointed models.
inline bool verify_notbisim(std::size_t n) {
    require(n <= 3, "verify_notbisim supports n <= 3");
    auto v = hierarchy_submodels(n);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (n_bisimilar(v[i], v[j], static_cast<int>(n))) return false;
    return true;
}

inline Report experiment_notbisim(std::size_t n) {
    require(n <= 3, "notbisim supports n <= 3");
    Report rep;
    for (std::size_t m = 0; m <= n; ++m) {
        int mi = static_cast<int>(m);
        auto size = hierarchy_submodels(m).size();
        rep.add("notbisim", mi, "|V_{n+1}| = tower(n)", tower_text(m), std::to_string(size), size == tower(m));
        bool ok = verify_notbisim(m);
        rep.add("notbisim", mi, "distinct elements of V_{n+1} are not n-bisimilar", "true", ok ? "true" : "false", ok);
    }
    return rep;
}

// ---- modal logic lower bound ---------------------------------------------

inline Report experiment_ml_lower_bound(std::size_t n, std::size_t plays = 20) {
    require(n >= 1 && n <= 3, "ml-lower-bound supports 1 <= n <= 3");
    Report rep;
    const std::string ex = "ml-lower-bound";
    const int ni = static_cast<int>(n);
    auto C = build_C(n), D = build_D(n);
    const auto T = tower(n);
    const int t = static_cast<int>(tower(n - 1));
    const std::string ts = std::to_string(t);

    rep.add(ex, ni, "|C_n| = tower(n)", std::to_string(T), std::to_string(C.size()), C.size() == T);
    rep.add(ex, ni, "|D_n| = tower(n)(tower(n)-1)/2", std::to_string(T * (T - 1) / 2), std::to_string(D.size()),
            D.size() == T * (T - 1) / 2);
    bool classes = true;
    for (const auto& pm : C) classes = classes && in_class_An(pm, ni);
    for (const auto& pm : D) classes = classes && !in_class_An(pm, ni);
    rep.add(ex, ni, "C_n inside A_n and D_n outside", "true", classes ? "true" : "false", classes);

    auto g = build_graph(C, D);
    rep.add(ex, ni, "G(C_n, D_n) is complete", "K_" + std::to_string(T),
            (g.is_complete() ? "K_" : "incomplete on ") + std::to_string(g.vertices.size()),
            g.is_complete() && g.vertices.size() == T);
    int chi = chromatic_number(g);
    rep.add(ex, ni, "chi(G(C_n, D_n)) = tower(n)", std::to_string(T), std::to_string(chi), chi == static_cast<int>(T));

    auto none_upto = synthesize_min(C, D, t);
    rep.add(ex, ni, "no ML separator of size <= tower(n-1)", "none <= " + ts,
            none_upto ? "found size " + std::to_string(none_upto->size) : "none <= " + ts, !none_upto);

    auto verdict = solve(make_position(t, C, D));
    rep.add(ex, ni, "EF_{tower(n-1)}(C_n, D_n) is a D win", "D", to_string(verdict.winner), verdict.winner == Player::D);

    // The coloring strategy against a solver-driven S, one play per seed.
    auto start = make_position(t, C, D);
    std::vector<char> d_won(plays, 0);
    parallel_for(plays, worker_count(), [&](std::size_t i) {
        auto solver = std::make_shared<MLSolver>(set_union(start.A, start.B));
        SolverS s(solver, i);
        ColoringD d(start);
        d_won[i] = play(start, s, d).outcome.winner == Player::D;
    });
    std::size_t wins = std::count(d_won.begin(), d_won.end(), 1);
    rep.add(ex, ni, "coloring D beats solver S in every play", std::to_string(plays) + "/" + std::to_string(plays),
            std::to_string(wins) + "/" + std::to_string(plays), wins == plays);

    if (n <= 2) {
        ColoringD d(start);
        bool s_can_win = true;
        auto lines = exhaustive_s_search(start, d, s_can_win);
        rep.add(ex, ni, "coloring D beats every S line", "D", std::string(s_can_win ? "S" : "D") + " (" + std::to_string(lines) + " lines)",
                !s_can_win);
    }

    if (n == 1) {
        auto f = c1_separator();
        bool ok = separates(f, C, D) && size(f) <= 7;
        rep.add(ex, ni, "hand-built separator of size <= 7", "<= 7", print(f) + " size " + std::to_string(size(f)), ok);
    }

    // Exact minimum where it is reachable; a bounded search otherwise.
    const int bound = n <= 2 ? 40 : 20;
    auto best = synthesize_min(C, D, bound);
    if (best) {
        rep.add(ex, ni, "minimal separator size exceeds tower(n-1)", "> " + ts,
                std::to_string(best->size) + " " + print(best->formula),
                static_cast<int>(best->size) > t && separates(best->formula, C, D));
    } else {
        rep.add(ex, ni, "minimal separator size exceeds tower(n-1)", "> " + ts, "> " + std::to_string(bound), bound > t);
    }
    return rep;
}

// ---- mu-calculus lower bound ---------------------------------------------

inline std::string describe_cap(const MuMoveOptions& cap) {
    std::string c = "clocks {";
    for (std::size_t i = 0; i < cap.clock_menu.size(); ++i) c += (i ? "," : "") + std::to_string(cap.clock_menu[i]);
    c += "}";
    if (cap.uniform_clocks) c += " uniform";
    if (cap.max_images != std::numeric_limits<std::size_t>::max()) c += ", images <= " + std::to_string(cap.max_images);
    return c;
}

inline Report experiment_mu_lower_bound(std::size_t n) {
    require(n == 1 || n == 2, "mu-lower-bound supports n in {1, 2}");
    Report rep;
    const std::string ex = "mu-lower-bound";
    const int ni = static_cast<int>(n);
    auto C = build_C(n), D = build_D(n);
    const int t = static_cast<int>(tower(n - 1));
    const int chi = chromatic_number(build_graph(C, D));
    rep.add(ex, ni, "log2 chi(G(C_n, D_n)) = tower(n-1)", std::to_string(t), std::to_string(std::bit_width(unsigned(chi)) - 1),
            chi == (1 << t));

    {
        auto p0 = initial_position(C, D, std::max(t - 1, 0));
        SuccinctnessMuD d(p0);
        auto init = d.initial(p0);
        std::string want = std::to_string(C.size()) + "/" + std::to_string(D.size());
        std::string got = std::to_string(init.A.size()) + "/" + std::to_string(init.B.size());
        rep.add(ex, ni, "initial response keeps C_n and D_n in full", want, got, want == got);
    }

    auto search = [&](int k, bool strict, const MuMoveOptions& cap, const std::string& claim) {
        auto p0 = initial_position(C, D, k);
        std::string computed;
        bool pass = false;
        try {
            SuccinctnessMuD d(p0, strict);
            auto r = exhaustive_s_search_mu(p0, d, cap);
            computed = std::string(r.s_can_win ? "S" : "D") + " (" + std::to_string(r.lines) + " lines; " + describe_cap(cap) + ")";
            pass = !r.s_can_win;
        } catch (const InvariantViolation& e) {
            computed = std::string("violation: ") + e.what();
        } catch (const BudgetExceeded& e) {
            computed = std::string("budget: ") + e.what();
        }
        rep.add(ex, ni, claim, "D", computed, pass);
    };

    for (int k = 0; k < t; ++k) {
        MuMoveOptions cap;
        cap.clock_menu = {0, 1, initial_position(C, D, k).clock_max};
        cap.max_images = 64;
        search(k, true, cap, "succinctness D wins FS_" + std::to_string(k) + "(C_n, D_n) with res < log2 chi");
    }
    {
        MuMoveOptions cap;
        cap.clock_menu = {0, 1, initial_position(C, D, t).clock_max};
        cap.uniform_clocks = true;
        cap.max_images = 16;
        search(t, false, cap, "succinctness D wins FS_" + std::to_string(t) + "(C_n, D_n) with res <= log2 chi");
    }

    // A box move on the right shares a successor with the left side.
    {
        auto p0 = initial_position(C, D, t);
        SuccinctnessMuD d(p0, false);
        auto p = apply_initial(p0, d.initial(p0));
        ClockedSet img;
        for (const auto& x : p.cur().right) {
            auto y = successors_clocked(x)[0];
            y.age = Age::New;
            img.push_back(y);
        }
        MuMove m = MuBox{cm::normalize(img)};
        std::string computed = "kept";
        bool pass = false;
        try {
            auto r = d.respond(p, m);
            auto next = apply_mu(p, m, r);
            if (auto* q = std::get_if<MuPosition>(&next)) {
                d.observe(*q);
                pass = d.delegated();
                computed = pass ? "handed over" : "kept";
            } else {
                pass = std::get<Terminal>(next).winner == Player::D;
                computed = std::string("play ends: ") + to_string(std::get<Terminal>(next).winner) + " wins";
            }
        } catch (const InvariantViolation& e) {
            computed = std::string("violation: ") + e.what();
        }
        rep.add(ex, ni, "modal move hands D a bisimilar win", "handed over or D wins", computed, pass);
    }
    return rep;
}

inline const std::vector<std::string>& experiment_suites() {
    static const std::vector<std::string> s{"ml-lower-bound", "mu-lower-bound", "fo-ml2-sizes", "notbisim"};
    return s;
}

inline Report run_experiment(const std::string& suite, std::size_t n) {
    if (suite == "ml-lower-bound") return experiment_ml_lower_bound(n);
    if (suite == "mu-lower-bound") return experiment_mu_lower_bound(n);
    if (suite == "fo-ml2-sizes") return experiment_fo_ml2_sizes(n);
    if (suite == "notbisim") return experiment_notbisim(n);
    throw InputError("unknown experiment suite '" + suite + "'");
}

}  // namespace fsg
