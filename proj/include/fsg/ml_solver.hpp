#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fsg/bisimulation.hpp"
#include "fsg/ml_game.hpp"

namespace fsg {

struct MLVerdict {
    Player winner = Player::D;
    std::optional<Formula> witness;
    std::string reason;  // literal | strategy | k-bisimilar-pair | resource-exhaustion
};

// Quotient of every world in the given models by full bisimilarity.
class ClassGraph {
public:
    explicit ClassGraph(const ModelSet& models) : bisim_(models) {
        for (const auto& m : bisim_.models())
            for (std::size_t w = 0; w < m->size(); ++w) {
                PointedModel pm(m, static_cast<int>(w));
                int c = bisim_.cls(pm);
                if (c >= static_cast<int>(rep_.size())) rep_.resize(c + 1);
                if (!rep_[c].model) rep_[c] = pm;
            }
        int n = static_cast<int>(rep_.size());
        succ_.resize(n);
        for (int c = 0; c < n; ++c) {
            for (const auto& s : successors(rep_[c])) succ_[c].push_back(bisim_.cls(s));
            std::sort(succ_[c].begin(), succ_[c].end());
            succ_[c].erase(std::unique(succ_[c].begin(), succ_[c].end()), succ_[c].end());
        }
        for (std::size_t n_ = 0; n_ <= bisim_.stable_level(); ++n_) {
            std::vector<int> lv(n);
            for (int c = 0; c < n; ++c) lv[c] = bisim_.cls(rep_[c], static_cast<int>(n_));
            levels_.push_back(std::move(lv));
        }
        std::set<std::string> props;
        for (const auto& m : bisim_.models())
            for (const auto& p : m->props()) props.insert(p);
        literals_ = literals_for({props.begin(), props.end()});
        for (const auto& l : literals_) {
            std::vector<char> t(n);
            for (int c = 0; c < n; ++c) t[c] = literal_true(l, rep_[c]);
            lit_true_.push_back(std::move(t));
        }
    }

    int size() const { return static_cast<int>(rep_.size()); }
    int cls(const PointedModel& pm) const { return bisim_.cls(pm); }
    const std::vector<int>& succ(int c) const { return succ_[c]; }
    int level_count() const { return static_cast<int>(levels_.size()); }
    int level_class(int n, int c) const { return levels_[std::min<int>(n, level_count() - 1)][c]; }
    const std::vector<Formula>& literals() const { return literals_; }
    bool literal_true_at(std::size_t l, int c) const { return lit_true_[l][c]; }
    const Bisimulation& bisim() const { return bisim_; }

private:
    Bisimulation bisim_;
    std::vector<PointedModel> rep_;
    std::vector<std::vector<int>> succ_;
    std::vector<std::vector<int>> levels_;
    std::vector<Formula> literals_;
    std::vector<std::vector<char>> lit_true_;
};

// A winning S move at class level.
struct ClassMove {
    enum Kind { Lit, Or, And, Dia, Box } kind = Lit;
    int k1 = 0, k2 = 0;
    std::size_t literal = 0;
    std::vector<int> x1, x2;  // split parts, or the successor image in x1
};

namespace detail {

template <int W>
struct Bits {
    std::array<std::uint64_t, W> w{};
    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(int i) const { return w[i >> 6] >> (i & 63) & 1; }
    bool any() const {
        for (auto x : w)
            if (x) return true;
        return false;
    }
    bool intersects(const Bits& o) const {
        for (int i = 0; i < W; ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    Bits operator|(const Bits& o) const {
        Bits r;
        for (int i = 0; i < W; ++i) r.w[i] = w[i] | o.w[i];
        return r;
    }
    bool operator==(const Bits& o) const { return w == o.w; }
    std::vector<int> list() const {
        std::vector<int> out;
        for (int i = 0; i < W; ++i)
            for (std::uint64_t m = w[i]; m; m &= m - 1) out.push_back(i * 64 + std::countr_zero(m));
        return out;
    }
    std::uint64_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto x : w) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return h;
    }
};

class SolverCoreBase {
public:
    virtual ~SolverCoreBase() = default;
    virtual bool win(const std::vector<int>& A, const std::vector<int>& B, int k) = 0;
    virtual std::optional<Formula> witness(const std::vector<int>& A, const std::vector<int>& B) = 0;
    virtual std::optional<ClassMove> winning_move(const std::vector<int>& A, const std::vector<int>& B, int& at_k) = 0;
    virtual int separation_depth(const std::vector<int>& A, const std::vector<int>& B) = 0;
    std::size_t nodes = 0;
    std::size_t budget = 0;
};

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Memoized search over sets of bisimulation classes. Per key the memo keeps the
// largest resource known to lose (lo) and the smallest known to win (hi), which
// is sound because winning is monotone in the resource.
template <int W>
class SolverCore : public SolverCoreBase {
    using B_ = Bits<W>;
    struct Key {
        B_ a, b;
        bool operator==(const Key& o) const { return a == o.a && b == o.b; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return k.a.hash() * 31 + k.b.hash(); }
    };
    struct Entry {
        int lo = 0, hi = kInf, sep = 0;
        Formula formula;
        ClassMove::Kind kind = ClassMove::Lit;
        int k1 = 0, k2 = 0;
        std::size_t literal = 0;
        B_ x1, x2;
    };

public:
    explicit SolverCore(const ClassGraph& g) : g_(g) {
        int n = g.size();
        succ_bits_.resize(n);
        for (int c = 0; c < n; ++c)
            for (int s : g.succ(c)) succ_bits_[c].set(s);
    }

    bool win(const std::vector<int>& A, const std::vector<int>& B, int k) override {
        return win(to_bits(A), to_bits(B), k);
    }
    std::optional<Formula> witness(const std::vector<int>& A, const std::vector<int>& B) override {
        auto it = memo_.find(Key{to_bits(A), to_bits(B)});
        if (it == memo_.end() || it->second.hi >= kInf) return std::nullopt;
        return it->second.formula;
    }
    std::optional<ClassMove> winning_move(const std::vector<int>& A, const std::vector<int>& B, int& at_k) override {
        auto it = memo_.find(Key{to_bits(A), to_bits(B)});
        if (it == memo_.end() || it->second.hi >= kInf) return std::nullopt;
        const Entry& e = it->second;
        at_k = e.hi;
        return ClassMove{e.kind, e.k1, e.k2, e.literal, e.x1.list(), e.x2.list()};
    }
    int separation_depth(const std::vector<int>& A, const std::vector<int>& B) override {
        return entry(to_bits(A), to_bits(B)).sep;
    }

private:
    B_ to_bits(const std::vector<int>& xs) const {
        B_ b;
        for (int x : xs) b.set(x);
        return b;
    }

    Entry& entry(const B_& a, const B_& b) {
        auto [it, fresh] = memo_.try_emplace(Key{a, b});
        Entry& e = it->second;
        if (!fresh) return e;
        e.sep = sep_depth(a, b);
        e.lo = e.sep;
        auto al = a.list(), bl = b.list();
        const auto& lits = g_.literals();
        for (std::size_t l = 0; l < lits.size(); ++l) {
            bool ok = true;
            for (int c : al) ok = ok && g_.literal_true_at(l, c);
            for (int c : bl) ok = ok && !g_.literal_true_at(l, c);
            if (ok) {
                e.hi = 1;
                e.formula = lits[l];
                e.kind = ClassMove::Lit;
                e.literal = l;
                break;
            }
        }
        return e;
    }

    // Least n such that no cross pair is n-bisimilar; kInf if a pair is bisimilar.
    // D wins at every k <= this value.
    int sep_depth(const B_& a, const B_& b) const {
        if (!a.any() || !b.any()) return 0;
        auto al = a.list(), bl = b.list();
        for (int n = 0; n < g_.level_count(); ++n) {
            B_ pa, pb;
            for (int c : al) pa.set(g_.level_class(n, c));
            for (int c : bl) pb.set(g_.level_class(n, c));
            if (!pa.intersects(pb)) return n;
        }
        return kInf;
    }

    bool win(const B_& a, const B_& b, int k) {
        Entry& e = entry(a, b);
        if (k <= e.lo) return false;
        if (k >= e.hi) return true;
        if (++nodes > budget) throw BudgetExceeded("solver node budget exhausted");
        bool s_wins = k >= 2 && search(a, b, k, e);
        if (s_wins) {
            e.hi = k;
        } else {
            e.lo = k;
        }
        return s_wins;
    }

    B_ all_succ(const B_& x) const {
        B_ out;
        for (int c : x.list()) out = out | succ_bits_[c];
        return out;
    }

    bool search(const B_& a, const B_& b, int k, Entry& e) {
        auto al = a.list(), bl = b.list();
        // diamond: choose a successor for each A class
        if (modal_possible(al)) {
            B_ img;
            B_ rest = all_succ(b);
            if (choose_images(order_by_branching(al), 0, B_{}, rest, k - 1, /*dia=*/true, img)) {
                e.formula = Formula::dia(*witness_of(img, rest));
                set_move(e, ClassMove::Dia, 0, 0, img, B_{});
                return true;
            }
        }
        if (modal_possible(bl)) {
            B_ img;
            B_ rest = all_succ(a);
            if (choose_images(order_by_branching(bl), 0, B_{}, rest, k - 1, /*dia=*/false, img)) {
                e.formula = Formula::box(*witness_of(rest, img));
                set_move(e, ClassMove::Box, 0, 0, img, B_{});
                return true;
            }
        }
        for (int side = 0; side < 2; ++side) {
            const auto& xs = side == 0 ? al : bl;
            if (xs.size() < 2) continue;
            for (int k1 = 1; k1 <= (k - 1) / 2; ++k1) {
                int k2 = k - 1 - k1;
                B_ x1, x2;
                if (split(xs, 0, B_{}, B_{}, side == 0 ? b : a, k1, k2, side == 0, x1, x2)) {
                    if (side == 0) {
                        e.formula = Formula::lor(*witness_of(x1, b), *witness_of(x2, b));
                        set_move(e, ClassMove::Or, k1, k2, x1, x2);
                    } else {
                        e.formula = Formula::land(*witness_of(a, x1), *witness_of(a, x2));
                        set_move(e, ClassMove::And, k1, k2, x1, x2);
                    }
                    return true;
                }
            }
        }
        return false;
    }

    void set_move(Entry& e, ClassMove::Kind kind, int k1, int k2, const B_& x1, const B_& x2) {
        e.kind = kind;
        e.k1 = k1;
        e.k2 = k2;
        e.x1 = x1;
        e.x2 = x2;
    }

    std::optional<Formula> witness_of(const B_& a, const B_& b) {
        auto it = memo_.find(Key{a, b});
        ensure(it != memo_.end() && it->second.hi < kInf, "winning child has no witness");
        return it->second.formula;
    }

    bool modal_possible(const std::vector<int>& xs) const {
        for (int c : xs)
            if (g_.succ(c).empty()) return false;
        return true;
    }

    std::vector<int> order_by_branching(std::vector<int> xs) const {
        std::stable_sort(xs.begin(), xs.end(), [&](int x, int y) { return g_.succ(x).size() < g_.succ(y).size(); });
        return xs;
    }

    // Picks successors one element at a time. An element that already has a
    // successor in the image costs nothing; otherwise every extension is checked
    // at once, since a losing partial image cannot be rescued by growing it.
    bool choose_images(const std::vector<int>& xs, std::size_t i, const B_& img, const B_& other, int k, bool dia,
                       B_& found) {
        if (i == xs.size()) {
            if (!img.any() && !win(dia ? img : other, dia ? other : img, k)) return false;
            found = img;
            return true;
        }
        int c = xs[i];
        if (succ_bits_[c].intersects(img)) return choose_images(xs, i + 1, img, other, k, dia, found);
        for (int s : g_.succ(c)) {
            B_ next = img;
            next.set(s);
            bool ok = dia ? win(next, other, k) : win(other, next, k);
            if (ok && choose_images(xs, i + 1, next, other, k, dia, found)) return true;
        }
        return false;
    }

    // Assigns elements to parts; each partial part must already win on its own.
    bool split(const std::vector<int>& xs, std::size_t i, const B_& p1, const B_& p2, const B_& other, int k1, int k2,
               bool left, B_& f1, B_& f2) {
        if (i == xs.size()) {
            if (!p1.any() || !p2.any()) return false;
            f1 = p1;
            f2 = p2;
            return true;
        }
        auto wins = [&](const B_& part, int kk) { return left ? win(part, other, kk) : win(other, part, kk); };
        B_ n1 = p1;
        n1.set(xs[i]);
        if (wins(n1, k1) && split(xs, i + 1, n1, p2, other, k1, k2, left, f1, f2)) return true;
        if (k1 == k2 && i == 0) return false;
        B_ n2 = p2;
        n2.set(xs[i]);
        if (wins(n2, k2) && split(xs, i + 1, p1, n2, other, k1, k2, left, f1, f2)) return true;
        return false;
    }

    const ClassGraph& g_;
    std::vector<B_> succ_bits_;
    std::unordered_map<Key, Entry, KeyHash> memo_;
};

template <int W>
std::unique_ptr<SolverCoreBase> make_core(const ClassGraph& g) {
    return std::make_unique<SolverCore<W>>(g);
}

}  // namespace detail

// Decides EF_k positions over a fixed universe of models. Positions may use any
// pointed models whose Kripke models were part of the universe.
class MLSolver {
public:
    explicit MLSolver(const ModelSet& universe, std::size_t node_budget = 50'000'000)
        : graph_(std::make_shared<ClassGraph>(universe)) {
        int words = (graph_->size() + 63) / 64;
        if (words <= 1) core_ = detail::make_core<1>(*graph_);
        else if (words <= 2) core_ = detail::make_core<2>(*graph_);
        else if (words <= 4) core_ = detail::make_core<4>(*graph_);
        else if (words <= 8) core_ = detail::make_core<8>(*graph_);
        else if (words <= 16) core_ = detail::make_core<16>(*graph_);
        else throw BudgetExceeded("more than 1024 bisimulation classes");
        core_->budget = node_budget;
    }

    const ClassGraph& graph() const { return *graph_; }
    std::size_t nodes() const { return core_->nodes; }

    std::vector<int> classes(const ModelSet& s) const {
        std::vector<int> out;
        for (const auto& pm : s) out.push_back(graph_->cls(pm));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    bool s_wins(const MLPosition& p) { return p.k > 0 && core_->win(classes(p.A), classes(p.B), p.k); }

    MLVerdict solve(const MLPosition& p) {
        auto a = classes(p.A), b = classes(p.B);
        MLVerdict v;
        if (p.k > 0 && core_->win(a, b, p.k)) {
            v.winner = Player::S;
            v.witness = core_->witness(a, b);
            v.reason = size(*v.witness) == 1 ? "literal" : "strategy";
            return v;
        }
        v.winner = Player::D;
        v.reason = p.k <= core_->separation_depth(a, b) ? "k-bisimilar-pair" : "resource-exhaustion";
        return v;
    }

    // A concrete winning move for S, if S wins; leftover resource goes to the second part.
    std::optional<MLMove> winning_move(const MLPosition& p) {
        if (!s_wins(p)) return std::nullopt;
        auto a = classes(p.A), b = classes(p.B);
        int at_k = 0;
        auto cm = core_->winning_move(a, b, at_k);
        ensure(cm.has_value() && at_k <= p.k, "winning entry without a move");
        int slack = p.k - at_k;
        auto in = [](const std::vector<int>& xs, int c) { return std::binary_search(xs.begin(), xs.end(), c); };
        auto part = [&](const ModelSet& xs, const std::vector<int>& cls) {
            ModelSet out;
            for (const auto& pm : xs)
                if (in(cls, graph_->cls(pm))) out.push_back(pm);
            return out;
        };
        auto image = [&](const ModelSet& xs, const std::vector<int>& img) {
            std::vector<PointedModel> out;
            for (const auto& pm : xs) {
                std::optional<PointedModel> pick;
                for (const auto& s : successors(pm))
                    if (in(img, graph_->cls(s))) {
                        pick = s;
                        break;
                    }
                ensure(pick.has_value(), "class image has no concrete successor");
                out.push_back(*pick);
            }
            return out;
        };
        switch (cm->kind) {
            case ClassMove::Lit: return LitMove{graph_->literals()[cm->literal]};
            case ClassMove::Or: return OrMove{cm->k1, cm->k2 + slack, part(p.A, cm->x1), part(p.A, cm->x2)};
            case ClassMove::And: return AndMove{cm->k1, cm->k2 + slack, part(p.B, cm->x1), part(p.B, cm->x2)};
            case ClassMove::Dia: return DiaMove{image(p.A, cm->x1)};
            case ClassMove::Box: return BoxMove{image(p.B, cm->x1)};
        }
        return std::nullopt;
    }

private:
    std::shared_ptr<ClassGraph> graph_;
    std::unique_ptr<detail::SolverCoreBase> core_;
};

inline MLVerdict solve(const MLPosition& p, std::size_t node_budget = 50'000'000) {
    MLSolver s(set_union(p.A, p.B), node_budget);
    return s.solve(p);
}

}  // namespace fsg
