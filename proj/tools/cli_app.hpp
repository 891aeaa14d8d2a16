#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsg/bisimulation.hpp"
#include "fsg/eval.hpp"
#include "fsg/graph.hpp"
#include "fsg/ml_agents.hpp"
#include "fsg/ml_synth.hpp"
#include "fsg/model_json.hpp"
#include "fsg/mu_agents.hpp"
#include "fsg/parser.hpp"
#include "fsg/succinctness.hpp"

namespace fsg::cli {

// Short tags for loaded models: A1, A2, ... on the left and B1, ... on the right.
class Namer {
public:
    void tag(const std::vector<PointedModel>& models, const std::string& prefix) {
        for (std::size_t i = 0; i < models.size(); ++i)
            tags_.emplace(models[i].model->serial(), prefix + std::to_string(i + 1));
    }
    std::string operator()(const PointedModel& pm) const {
        auto it = tags_.find(pm.model->serial());
        return (it == tags_.end() ? std::string("?") : it->second) + ":" + pm.name();
    }
    std::string set(const ModelSet& s) const {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + (*this)(s[i]);
        return out + "}";
    }
    std::string clocked(const ClockedModel& c) const {
        std::string out = (*this)(c.pm);
        auto items = c.clocks.items();
        if (!items.empty()) {
            out += "[";
            bool first = true;
            for (const auto& [x, v] : items) {
                out += (first ? "" : ",") + x + "=" + std::to_string(v);
                first = false;
            }
            out += "]";
        }
        if (c.age == Age::Old) out += " old";
        return out;
    }
    std::string set(const ClockedSet& s) const {
        std::string out = "{";
        for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + clocked(s[i]);
        return out + "}";
    }

private:
    std::map<std::uint64_t, std::string> tags_;
};

inline std::string ints(const std::vector<int>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out + "]";
}

inline std::string ml_position_text(const MLPosition& p, const Namer& nm) {
    return "k=" + std::to_string(p.k) + " A=" + nm.set(p.A) + " B=" + nm.set(p.B);
}

inline std::string ml_move_text(const MLMove& m, const Namer& nm) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, OrMove>)
                return "or k1=" + std::to_string(x.k1) + " k2=" + std::to_string(x.k2) + " A1=" + nm.set(normalize(x.A1)) +
                       " A2=" + nm.set(normalize(x.A2));
            else if constexpr (std::is_same_v<T, AndMove>)
                return "and k1=" + std::to_string(x.k1) + " k2=" + std::to_string(x.k2) + " B1=" + nm.set(normalize(x.B1)) +
                       " B2=" + nm.set(normalize(x.B2));
            else if constexpr (std::is_same_v<T, DiaMove>)
                return "dia " + nm.set(normalize(x.image));
            else if constexpr (std::is_same_v<T, BoxMove>)
                return "box " + nm.set(normalize(x.image));
            else
                return "lit " + print(x.lit);
        },
        m);
}

inline std::string mu_position_text(const MuPosition& p, const Namer& nm) {
    const auto& v = p.cur();
    std::string label = label_text(v.label);
    return "v" + std::to_string(p.current) + " res=" + std::to_string(v.res) + (label.empty() ? "" : " label=" + label) +
           " L=" + nm.set(v.left) + " R=" + nm.set(v.right);
}

inline std::string mu_move_text(const MuMove& m, const Namer& nm) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MuOr>)
                return "or k1=" + std::to_string(x.k1) + " k2=" + std::to_string(x.k2) + " A1=" + nm.set(x.A1) + " A2=" + nm.set(x.A2);
            else if constexpr (std::is_same_v<T, MuAnd>)
                return "and k1=" + std::to_string(x.k1) + " k2=" + std::to_string(x.k2) + " B1=" + nm.set(x.B1) + " B2=" + nm.set(x.B2);
            else if constexpr (std::is_same_v<T, MuDia>)
                return "dia " + nm.set(x.image);
            else if constexpr (std::is_same_v<T, MuBox>)
                return "box " + nm.set(x.image);
            else if constexpr (std::is_same_v<T, MuBind>)
                return std::string(x.nu ? "nu " : "mu ") + x.var + " clocks=" + ints(x.clocks);
            else if constexpr (std::is_same_v<T, MuJump>)
                return "jump " + x.var + " clocks=" + ints(x.clocks);
            else
                return "lit " + print(x.lit);
        },
        m);
}

inline std::string mu_response_text(const MuResponse& r, const Namer& nm) {
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, MuBranch>)
                return "branch " + std::to_string(x.i);
            else if constexpr (std::is_same_v<T, MuSubsets>)
                return "keep A=" + nm.set(x.A) + " B=" + nm.set(x.B);
            else if constexpr (std::is_same_v<T, MuClocks>)
                return "clocks " + ints(x.clocks);
            else
                return "-";
        },
        r);
}

// Reads menu indices, one per line; blank lines and '#' comments are skipped.
// Interactive choosers print the menu and re-prompt on bad input; scripted ones fail.
class Chooser {
public:
    Chooser(std::shared_ptr<std::istream> in, std::ostream& out, bool interactive, std::string who)
        : in_(std::move(in)), out_(out), interactive_(interactive), who_(std::move(who)) {}

    std::size_t pick(const std::vector<std::string>& options) {
        require(!options.empty(), who_ + " has no options");
        if (interactive_)
            for (std::size_t i = 0; i < options.size(); ++i) out_ << "  [" << i << "] " << options[i] << "\n";
        while (true) {
            if (interactive_) out_ << who_ << "> " << std::flush;
            std::string line;
            if (!std::getline(*in_, line)) throw InputError(who_ + ": input ended");
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            long idx;
            if (!(ls >> idx)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            } else if (idx >= 0 && static_cast<std::size_t>(idx) < options.size()) {
                return static_cast<std::size_t>(idx);
            }
            if (!interactive_) throw InputError(who_ + ": bad choice '" + line + "'");
            out_ << "choose 0.." << options.size() - 1 << "\n";
        }
    }

private:
    std::shared_ptr<std::istream> in_;
    std::ostream& out_;
    bool interactive_;
    std::string who_;
};

class MenuMLS : public MLSAgent {
public:
    MenuMLS(std::shared_ptr<Chooser> c, Namer nm) : c_(std::move(c)), nm_(std::move(nm)) {}
    MLMove choose(const MLPosition& p) override {
        auto moves = legal_moves(p);
        std::vector<std::string> text;
        for (const auto& m : moves) text.push_back(ml_move_text(m, nm_));
        return moves[c_->pick(text)];
    }
    std::unique_ptr<MLSAgent> clone() const override { return std::make_unique<MenuMLS>(*this); }

private:
    std::shared_ptr<Chooser> c_;
    Namer nm_;
};

class MenuMLD : public MLDAgent {
public:
    explicit MenuMLD(std::shared_ptr<Chooser> c) : c_(std::move(c)) {}
    int respond(const MLPosition&, const MLMove& m) override {
        if (!std::holds_alternative<OrMove>(m) && !std::holds_alternative<AndMove>(m)) return 0;
        return static_cast<int>(c_->pick({"branch 1", "branch 2"})) + 1;
    }
    std::unique_ptr<MLDAgent> clone() const override { return std::make_unique<MenuMLD>(*this); }

private:
    std::shared_ptr<Chooser> c_;
};

class MenuMuS : public MuSAgent {
public:
    MenuMuS(std::shared_ptr<Chooser> c, Namer nm, MuMoveOptions cap) : c_(std::move(c)), nm_(std::move(nm)), cap_(std::move(cap)) {}
    MuMove choose(const MuPosition& p) override {
        auto moves = legal_s_moves(p, cap_);
        std::vector<std::string> text;
        for (const auto& m : moves) text.push_back(mu_move_text(m, nm_));
        return moves[c_->pick(text)];
    }
    std::unique_ptr<MuSAgent> clone() const override { return std::make_unique<MenuMuS>(*this); }

private:
    std::shared_ptr<Chooser> c_;
    Namer nm_;
    MuMoveOptions cap_;
};

class MenuMuD : public MuDAgent {
public:
    MenuMuD(std::shared_ptr<Chooser> c, Namer nm) : c_(std::move(c)), nm_(std::move(nm)) {}
    MuResponse respond(const MuPosition& p, const MuMove& m) override {
        auto rs = d_responses(p, m, {});
        if (rs.empty()) return {};
        std::vector<std::string> text;
        for (const auto& r : rs) text.push_back(mu_response_text(r, nm_));
        return rs[c_->pick(text)];
    }
    std::unique_ptr<MuDAgent> clone() const override { return std::make_unique<MenuMuD>(*this); }

private:
    std::shared_ptr<Chooser> c_;
    Namer nm_;
};

// Decorators that stream each position, move and response as a play unfolds.
class TraceMLS : public MLSAgent {
public:
    TraceMLS(MLSAgent& inner, std::ostream& out, const Namer& nm) : inner_(inner), out_(out), nm_(nm) {}
    MLMove choose(const MLPosition& p) override {
        out_ << ml_position_text(p, nm_) << "\n";
        auto m = inner_.choose(p);
        out_ << "S: " << ml_move_text(m, nm_) << "\n";
        return m;
    }
    std::unique_ptr<MLSAgent> clone() const override { return std::make_unique<TraceMLS>(*this); }

private:
    MLSAgent& inner_;
    std::ostream& out_;
    const Namer& nm_;
};

class TraceMLD : public MLDAgent {
public:
    TraceMLD(MLDAgent& inner, std::ostream& out) : inner_(inner), out_(out) {}
    int respond(const MLPosition& p, const MLMove& m) override {
        int b = inner_.respond(p, m);
        if (std::holds_alternative<OrMove>(m) || std::holds_alternative<AndMove>(m)) out_ << "D: branch " << b << "\n";
        return b;
    }
    std::unique_ptr<MLDAgent> clone() const override { return std::make_unique<TraceMLD>(*this); }

private:
    MLDAgent& inner_;
    std::ostream& out_;
};

class TraceMuS : public MuSAgent {
public:
    TraceMuS(MuSAgent& inner, std::ostream& out, const Namer& nm) : inner_(inner), out_(out), nm_(nm) {}
    MuMove choose(const MuPosition& p) override {
        out_ << mu_position_text(p, nm_) << "\n";
        auto m = inner_.choose(p);
        out_ << "S: " << mu_move_text(m, nm_) << "\n";
        return m;
    }
    std::unique_ptr<MuSAgent> clone() const override { return std::make_unique<TraceMuS>(*this); }

private:
    MuSAgent& inner_;
    std::ostream& out_;
    const Namer& nm_;
};

class TraceMuD : public MuDAgent {
public:
    TraceMuD(MuDAgent& inner, std::ostream& out, const Namer& nm) : inner_(inner), out_(out), nm_(nm) {}
    MuInitial initial(const MuPosition& p) override {
        auto r = inner_.initial(p);
        out_ << "D: keep A=" << nm_.set(r.A) << " B=" << nm_.set(r.B) << "\n";
        return r;
    }
    MuResponse respond(const MuPosition& p, const MuMove& m) override {
        auto r = inner_.respond(p, m);
        if (!std::holds_alternative<std::monostate>(r)) out_ << "D: " << mu_response_text(r, nm_) << "\n";
        return r;
    }
    void observe(const MuPosition& p) override { inner_.observe(p); }
    std::unique_ptr<MuDAgent> clone() const override { return std::make_unique<TraceMuD>(*this); }

private:
    MuDAgent& inner_;
    std::ostream& out_;
    const Namer& nm_;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline std::shared_ptr<Chooser> make_chooser(const std::string& mode, const std::string& script, Io& io, const std::string& who) {
    if (mode == "human") return std::make_shared<Chooser>(std::shared_ptr<std::istream>(&io.in, [](std::istream*) {}), io.out, true, who);
    require(!script.empty(), who + " script mode needs --" + who + "-script FILE");
    auto f = std::make_shared<std::ifstream>(script);
    require(f->good(), "cannot open " + script);
    return std::make_shared<Chooser>(f, io.out, false, who);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string world_set_text(const KripkeModel& m, const WorldSet& s) {
    std::string out = "{";
    bool first = true;
    for (std::size_t w = 0; w < m.size(); ++w)
        if (s.test(w)) {
            out += (first ? "" : ", ") + m.name(static_cast<int>(w));
            first = false;
        }
    return out + "}";
}

inline Logic parse_logic(const std::string& s) {
    if (s == "ml") return Logic::ML;
    if (s == "mu") return Logic::Mu;
    if (s == "ml2") return Logic::ML2;
    throw InputError("unknown logic '" + s + "'");
}

inline int cmd_eval(const std::string& logic_name, const std::string& text, const std::string& file, const std::string& point, Io& io) {
    Logic logic = parse_logic(logic_name);
    Formula f = parse(text, logic);
    auto pm = load_pointed(file);
    const auto& m = *pm.model;
    if (logic == Logic::ML2) {
        auto set = eval_ml2_set(f, m);
        if (!point.empty()) {
            auto comma = point.find(',');
            require(comma != std::string::npos, "ml2 --point needs u,v");
            int u = m.require_world(point.substr(0, comma)), v = m.require_world(point.substr(comma + 1));
            io.out << (set.test(static_cast<std::size_t>(u) * m.size() + v) ? "true" : "false") << "\n";
            return 0;
        }
        std::string out = "{";
        bool first = true;
        for (std::size_t u = 0; u < m.size(); ++u)
            for (std::size_t v = 0; v < m.size(); ++v)
                if (set.test(u * m.size() + v)) {
                    out += (first ? "(" : ", (") + m.name(static_cast<int>(u)) + "," + m.name(static_cast<int>(v)) + ")";
                    first = false;
                }
        io.out << out << "}\n";
        return 0;
    }
    require(logic == Logic::ML || is_sentence(f), "mu formula must be a sentence with distinct binders");
    auto set = eval_mu(f, m);
    if (!point.empty()) io.out << (set.test(m.require_world(point)) ? "true" : "false") << "\n";
    else io.out << world_set_text(m, set) << "\n";
    return 0;
}

inline SeparationGraph read_graph(const std::string& file) {
    SeparationGraph g;
    auto j = read_json_file(file);
    auto id = [](const nlohmann::json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    try {
        require(j.is_object() && j.contains("vertices"), "graph needs \"vertices\"");
        for (const auto& v : j.at("vertices")) {
            require(g.index(id(v)) < 0, "duplicate vertex " + id(v));
            g.vertices.push_back(id(v));
        }
        if (j.contains("edges"))
            for (const auto& e : j.at("edges")) {
                require(e.is_array() && e.size() == 2, "edge must be a pair");
                int a = g.index(id(e[0])), b = g.index(id(e[1]));
                require(a >= 0 && b >= 0, "edge names an unknown vertex");
                g.add_edge(a, b);
            }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad graph JSON: ") + e.what());
    }
    return g;
}

struct PlayOptions {
    int k = 0;
    std::vector<std::string> a, b;
    std::string s = "auto", d = "auto", s_script, d_script, formula;
    std::uint64_t seed = 0;
    bool json = false;
    std::size_t menu_cap = 64;
};

inline int cmd_play_ml(const PlayOptions& o, Io& io) {
    auto A = load_models(o.a), B = load_models(o.b);
    Namer nm;
    nm.tag(A, "A");
    nm.tag(B, "B");
    auto p = make_position(o.k, A, B);
    auto solver = std::make_shared<MLSolver>(set_union(p.A, p.B));

    std::unique_ptr<MLSAgent> s;
    if (o.s == "auto") s = std::make_unique<SolverS>(solver, o.seed);
    else s = std::make_unique<MenuMLS>(make_chooser(o.s, o.s_script, io, "s"), nm);

    std::unique_ptr<MLDAgent> d;
    if (o.d == "exhaustive") {
        d = std::make_unique<SolverD>(solver);
    } else if (o.d == "auto") {
        try {
            d = std::make_unique<ColoringD>(p);
        } catch (const InputError&) {
            d = std::make_unique<RandomD>(o.seed);
        }
    } else {
        d = std::make_unique<MenuMLD>(make_chooser(o.d, o.d_script, io, "d"));
    }

    if (o.json) {
        io.out << transcript_json(play(p, *s, *d)).dump(2) << "\n";
        return 0;
    }
    TraceMLS ts(*s, io.out, nm);
    TraceMLD td(*d, io.out);
    auto t = play(p, ts, td);
    io.out << "winner: " << to_string(t.outcome.winner) << " (" << t.outcome.reason << ")\n";
    return 0;
}

inline int cmd_play_mu(const PlayOptions& o, Io& io) {
    auto A = load_models(o.a), B = load_models(o.b);
    Namer nm;
    nm.tag(A, "A");
    nm.tag(B, "B");
    auto p0 = initial_position(A, B, o.k);
    MuMoveOptions cap;
    cap.max_covers = o.menu_cap;
    cap.max_images = o.menu_cap;
    cap.seed = o.seed;

    std::optional<Formula> phi;
    if (!o.formula.empty()) phi = parse_mu(o.formula);

    std::unique_ptr<MuSAgent> s;
    if (o.s == "auto") {
        if (phi) s = std::make_unique<UniformS>(*phi, A, B, o.k);
        else s = std::make_unique<RandomMuS>(o.seed);
    } else {
        require(!phi, "--formula only drives the auto S strategy");
        s = std::make_unique<MenuMuS>(make_chooser(o.s, o.s_script, io, "s"), nm, cap);
    }

    std::unique_ptr<MuDAgent> d;
    if (o.d == "exhaustive") {
        require(phi && o.s == "auto", "exhaustive D needs --s auto with --formula");
        d = std::make_unique<SearchMuD>(*s);
    } else if (o.d == "auto") {
        try {
            d = std::make_unique<SuccinctnessMuD>(p0);
        } catch (const InputError&) {
            d = std::make_unique<GreedyMuD>();
        }
    } else {
        d = std::make_unique<MenuMuD>(make_chooser(o.d, o.d_script, io, "d"), nm);
    }

    if (o.json) {
        io.out << mu_transcript_json(play_mu(p0, *s, *d)).dump(2) << "\n";
        return 0;
    }
    TraceMuS ts(*s, io.out, nm);
    TraceMuD td(*d, io.out, nm);
    auto t = play_mu(p0, ts, td);
    io.out << "winner: " << to_string(t.outcome.winner) << " (" << t.outcome.reason << ")\n";
    return 0;
}

inline int cmd_experiment(const std::string& suite, int n, const std::string& out_file, Io& io) {
    require(n >= 0, "--n must be non-negative");
    auto rep = run_experiment(suite, static_cast<std::size_t>(n));
    if (suite == "fo-ml2-sizes") io.out << size_table_csv(fo_ml2_size_table(static_cast<std::size_t>(n)));
    else io.out << report_csv(rep);
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        require(f.good(), "cannot write " + out_file);
        if (std::filesystem::path(out_file).extension() == ".json") f << report_json(rep).dump(2) << "\n";
        else f << report_csv(rep);
    }
    return 0;
}

inline int cmd_gen(const std::string& family, int n, const std::string& dir, Io& io) {
    require(family == "C" || family == "D", "--family must be C or D");
    require(n >= 1, "--n must be positive");
    auto models = family == "C" ? build_C(static_cast<std::size_t>(n)) : build_D(static_cast<std::size_t>(n));
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < models.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%03zu.json", i + 1);
        std::ofstream f(std::filesystem::path(dir) / name);
        require(f.good(), "cannot write into " + dir);
        f << pointed_to_json(models[i]).dump(2) << "\n";
    }
    io.out << "wrote " << models.size() << " models to " << dir << "\n";
    return 0;
}

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Io io{in, out, err};
    CLI::App app{"Play, solve and analyse ML and mu-calculus size games", "fsg"};
    app.require_subcommand(1);

    std::string logic, formula, model, point;
    auto* eval = app.add_subcommand("eval", "Evaluate a formula on a model");
    eval->add_option("--logic", logic, "ml, mu or ml2")->required();
    eval->add_option("--formula", formula, "Formula text")->required();
    eval->add_option("--model", model, "Model JSON file")->required();
    eval->add_option("--point", point, "World (u,v for ml2); without it the denotation is printed");

    int bn = -1;
    bool full = false;
    std::vector<std::string> bfiles;
    auto* bisim = app.add_subcommand("bisim", "Check n-bisimilarity of two pointed models");
    bisim->add_option("--n", bn, "Depth");
    bisim->add_flag("--full", full, "Full bisimilarity");
    bisim->add_option("files", bfiles, "Two model files")->required()->expected(2);

    std::vector<std::string> sa, sb;
    int max_k = 0;
    auto* synth = app.add_subcommand("synth", "Find a minimal separating ML formula");
    synth->add_option("--a", sa, "Left models (files or directories)")->required();
    synth->add_option("--b", sb, "Right models (files or directories)")->required();
    synth->add_option("--max", max_k, "Largest size to try")->required();
    std::size_t synth_budget = 20'000'000;
    synth->add_option("--budget", synth_budget, "Largest number of stored denotations");

    int solve_k = 0;
    std::vector<std::string> va, vb;
    auto* solve_cmd = app.add_subcommand("solve-ml", "Decide the modal formula size game");
    solve_cmd->add_option("--k", solve_k, "Resource")->required();
    solve_cmd->add_option("--a", va, "Left models")->required();
    solve_cmd->add_option("--b", vb, "Right models")->required();
    std::size_t solve_budget = 50'000'000;
    solve_cmd->add_option("--budget", solve_budget, "Largest number of solver nodes");

    PlayOptions ml_opt, mu_opt;
    auto play_flags = [](CLI::App* c, PlayOptions& o, bool mu) {
        c->add_option("--k", o.k, "Resource")->required();
        c->add_option("--a", o.a, "Left models")->required();
        c->add_option("--b", o.b, "Right models")->required();
        c->add_option("--s", o.s, "auto, human or script")->check(CLI::IsMember({"auto", "human", "script"}));
        c->add_option("--d", o.d, "auto, human, script or exhaustive")->check(CLI::IsMember({"auto", "human", "script", "exhaustive"}));
        c->add_option("--s-script", o.s_script, "Menu indices for S, one per line");
        c->add_option("--d-script", o.d_script, "Menu indices for D, one per line");
        c->add_option("--seed", o.seed, "Seed for randomized agents");
        c->add_flag("--json", o.json, "Print the transcript as JSON");
        if (mu) {
            c->add_option("--formula", o.formula, "Sentence followed by the auto S strategy");
            c->add_option("--menu-cap", o.menu_cap, "Largest number of covers or images offered per move");
        }
    };
    auto* play_ml = app.add_subcommand("play-ml", "Play the modal formula size game");
    play_flags(play_ml, ml_opt, false);
    auto* play_mu_cmd = app.add_subcommand("play-mu", "Play the mu-calculus formula size game");
    play_flags(play_mu_cmd, mu_opt, true);

    std::string suite, out_file;
    int en = 0;
    auto* experiment = app.add_subcommand("experiment", "Run an experiment suite and write its report");
    experiment->add_option("--suite", suite, "ml-lower-bound, mu-lower-bound, fo-ml2-sizes or notbisim")
        ->required()
        ->check(CLI::IsMember(experiment_suites()));
    experiment->add_option("--n", en, "Parameter")->required();
    experiment->add_option("--out", out_file, "Report file (.json for JSON, CSV otherwise)");

    std::string graph_file;
    auto* chroma = app.add_subcommand("chroma", "Chromatic number of a graph file");
    chroma->add_option("file", graph_file, "Graph JSON {vertices, edges}")->required();

    std::string family, gen_dir;
    int gen_n = 0;
    auto* gen = app.add_subcommand("gen", "Write the C_n or D_n models as JSON files");
    gen->add_option("--family", family, "C or D")->required();
    gen->add_option("--n", gen_n, "Level")->required();
    gen->add_option("--out", gen_dir, "Directory")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*eval) return cmd_eval(logic, formula, model, point, io);
        if (*bisim) {
            if (!full && bn < 0) {
                err << "usage error: bisim needs --n N or --full\n";
                return 1;
            }
            auto x = load_pointed(bfiles[0]), y = load_pointed(bfiles[1]);
            if (full) out << "bisimilar: " << yes_no(bisimilar(x, y)) << "\n";
            else out << bn << "-bisimilar: " << yes_no(n_bisimilar(x, y, bn)) << "\n";
            return 0;
        }
        if (*synth) {
            auto r = synthesize_min(load_models(sa), load_models(sb), max_k, synth_budget);
            if (r) out << print(r->formula) << "\nsize: " << r->size << "\n";
            else out << "none <= " << max_k << "\n";
            return 0;
        }
        if (*solve_cmd) {
            auto v = solve(make_position(solve_k, load_models(va), load_models(vb)), solve_budget);
            out << to_string(v.winner) << " wins\n";
            if (v.witness) out << "witness: " << print(*v.witness) << "\nsize: " << size(*v.witness) << "\n";
            out << "reason: " << v.reason << "\n";
            return 0;
        }
        if (*play_ml) return cmd_play_ml(ml_opt, io);
        if (*play_mu_cmd) return cmd_play_mu(mu_opt, io);
        if (*experiment) return cmd_experiment(suite, en, out_file, io);
        if (*chroma) {
            out << chromatic_number(read_graph(graph_file)) << "\n";
            return 0;
        }
        if (*gen) return cmd_gen(family, gen_n, gen_dir, io);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}

}  // namespace fsg::cli
