#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fsg/errors.hpp"
#include "fsg/hfset.hpp"

namespace fsg {

using WorldSet = boost::dynamic_bitset<>;

// Immutable finite Kripke model. Worlds are named; internally they are indices
// 0..size()-1 in construction order. Every model gets a process-unique serial
// used as a deterministic ordering key.
class KripkeModel {
public:
    using Edge = std::pair<std::string, std::string>;

    static std::shared_ptr<const KripkeModel> make(std::vector<std::string> worlds, const std::vector<Edge>& edges,
                                                   const std::map<std::string, std::vector<std::string>>& valuation) {
        require(!worlds.empty(), "model has no worlds");
        auto m = std::shared_ptr<KripkeModel>(new KripkeModel());
        m->names_ = std::move(worlds);
        for (std::size_t i = 0; i < m->names_.size(); ++i) {
            bool fresh = m->index_.emplace(m->names_[i], static_cast<int>(i)).second;
            require(fresh, "duplicate world: " + m->names_[i]);
        }
        m->succ_.assign(m->names_.size(), {});
        for (const auto& [a, b] : edges) m->succ_[m->require_world(a)].push_back(m->require_world(b));
        for (auto& s : m->succ_) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        for (const auto& [p, ws] : valuation) {
            require(!p.empty(), "empty proposition name");
            WorldSet set(m->names_.size());
            for (const auto& w : ws) set.set(m->require_world(w));
            m->val_.emplace(p, std::move(set));
        }
        m->serial_ = next_serial();
        return m;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(int w) const { return names_.at(w); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& succ(int w) const { return succ_.at(w); }
    std::uint64_t serial() const { return serial_; }

    int find(const std::string& w) const {
        auto it = index_.find(w);
        return it == index_.end() ? -1 : it->second;
    }
    int require_world(const std::string& w) const {
        int i = find(w);
        require(i >= 0, "unknown world: " + w);
        return i;
    }

    bool holds(const std::string& p, int w) const {
        auto it = val_.find(p);
        return it != val_.end() && it->second.test(w);
    }
    // Denotation of p; empty if p is not in the model's alphabet.
    WorldSet prop(const std::string& p) const {
        auto it = val_.find(p);
        return it == val_.end() ? WorldSet(size()) : it->second;
    }
    std::vector<std::string> props() const {
        std::vector<std::string> out;
        for (const auto& [p, s] : val_) out.push_back(p);
        return out;
    }
    std::vector<std::string> labels(int w) const {
        std::vector<std::string> out;
        for (const auto& [p, s] : val_)
            if (s.test(w)) out.push_back(p);
        return out;
    }
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::size_t a = 0; a < size(); ++a)
            for (int b : succ_[a]) out.emplace_back(names_[a], names_[b]);
        return out;
    }
    std::map<std::string, std::vector<std::string>> valuation() const {
        std::map<std::string, std::vector<std::string>> out;
        for (const auto& [p, s] : val_) {
            auto& v = out[p];
            for (std::size_t w = 0; w < size(); ++w)
                if (s.test(w)) v.push_back(names_[w]);
        }
        return out;
    }

private:
    KripkeModel() = default;
    static std::uint64_t next_serial() {
        static std::atomic<std::uint64_t> counter{0};
        return ++counter;
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> succ_;
    std::map<std::string, WorldSet> val_;
    std::uint64_t serial_ = 0;
};

using ModelPtr = std::shared_ptr<const KripkeModel>;

struct PointedModel {
    ModelPtr model;
    int point = 0;

    PointedModel() = default;
    PointedModel(ModelPtr m, int w) : model(std::move(m)), point(w) {
        require(model != nullptr, "null model");
        require(point >= 0 && static_cast<std::size_t>(point) < model->size(), "point outside model");
    }
    PointedModel(ModelPtr m, const std::string& w) : PointedModel(m, m->require_world(w)) {}

    const std::string& name() const { return model->name(point); }

    friend bool operator==(const PointedModel& a, const PointedModel& b) {
        return a.model->serial() == b.model->serial() && a.point == b.point;
    }
    friend std::strong_ordering operator<=>(const PointedModel& a, const PointedModel& b) {
        if (auto c = a.model->serial() <=> b.model->serial(); c != 0) return c;
        return a.point <=> b.point;
    }
};

inline std::vector<PointedModel> successors(const PointedModel& pm) {
    std::vector<PointedModel> out;
    for (int v : pm.model->succ(pm.point)) out.emplace_back(pm.model, v);
    return out;
}

// Per-variable natural clocks, kept sorted by variable name.
class Clocks {
public:
    bool has(const std::string& x) const { return find(x) != items_.end(); }
    int get(const std::string& x) const {
        auto it = find(x);
        ensure(it != items_.end(), "no clock for variable " + x);
        return it->second;
    }
    void set(const std::string& x, int v) {
        auto it = std::lower_bound(items_.begin(), items_.end(), x,
                                   [](const auto& e, const std::string& k) { return e.first < k; });
        if (it != items_.end() && it->first == x)
            it->second = v;
        else
            items_.insert(it, {x, v});
    }
    void erase(const std::string& x) {
        auto it = find(x);
        if (it != items_.end()) items_.erase(it);
    }
    const std::vector<std::pair<std::string, int>>& items() const { return items_; }
    bool empty() const { return items_.empty(); }

    friend bool operator==(const Clocks&, const Clocks&) = default;
    friend auto operator<=>(const Clocks&, const Clocks&) = default;

private:
    std::vector<std::pair<std::string, int>>::const_iterator find(const std::string& x) const {
        auto it = std::lower_bound(items_.begin(), items_.end(), x,
                                   [](const auto& e, const std::string& k) { return e.first < k; });
        return (it != items_.end() && it->first == x) ? it : items_.end();
    }
    std::vector<std::pair<std::string, int>> items_;
};

enum class Age { New, Old };

struct ClockedModel {
    PointedModel pm;
    Clocks clocks;
    Age age = Age::New;

    friend bool operator==(const ClockedModel&, const ClockedModel&) = default;
    friend std::strong_ordering operator<=>(const ClockedModel& a, const ClockedModel& b) {
        if (auto c = a.pm <=> b.pm; c != 0) return c;
        if (a.clocks < b.clocks) return std::strong_ordering::less;
        if (b.clocks < a.clocks) return std::strong_ordering::greater;
        return static_cast<int>(a.age) <=> static_cast<int>(b.age);
    }
};

inline std::vector<ClockedModel> successors_clocked(const ClockedModel& cm) {
    std::vector<ClockedModel> out;
    for (const auto& s : successors(cm.pm)) out.push_back({s, cm.clocks, cm.age});
    return out;
}

inline std::vector<int> reachable(const KripkeModel& m, int from) {
    std::vector<char> seen(m.size(), 0);
    std::vector<int> order{from}, stack{from};
    seen[from] = 1;
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        for (int v : m.succ(w))
            if (!seen[v]) {
                seen[v] = 1;
                order.push_back(v);
                stack.push_back(v);
            }
    }
    std::sort(order.begin(), order.end());
    return order;
}

inline ModelPtr generated_submodel(const KripkeModel& m, const std::string& a) {
    int root = m.require_world(a);
    auto keep = reachable(m, root);
    std::vector<std::string> worlds;
    for (int w : keep) worlds.push_back(m.name(w));
    std::vector<KripkeModel::Edge> edges;
    for (int w : keep)
        for (int v : m.succ(w)) edges.emplace_back(m.name(w), m.name(v));
    std::map<std::string, std::vector<std::string>> val;
    for (const auto& p : m.props()) {
        auto& ws = val[p];
        for (int w : keep)
            if (m.holds(p, w)) ws.push_back(m.name(w));
    }
    return KripkeModel::make(std::move(worlds), edges, val);
}

inline PointedModel generated_pointed(const PointedModel& pm) {
    auto sub = generated_submodel(*pm.model, pm.name());
    return PointedModel(sub, pm.name());
}

// Fresh root with an edge to every distinguished point; world names are merged
// by identity, so models must agree wherever their domains overlap.
inline PointedModel join(const std::vector<PointedModel>& models) {
    std::vector<std::string> worlds;
    std::unordered_map<std::string, std::size_t> owner;
    std::set<KripkeModel::Edge> edges;
    std::map<std::string, std::set<std::string>> val;
    std::map<std::string, std::vector<std::string>> label_of;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto& m = *models[i].model;
        for (std::size_t w = 0; w < m.size(); ++w) {
            const auto& nm = m.name(static_cast<int>(w));
            auto labels = m.labels(static_cast<int>(w));
            auto [it, fresh] = owner.emplace(nm, i);
            if (fresh) {
                worlds.push_back(nm);
                label_of[nm] = labels;
                for (const auto& p : labels) val[p].insert(nm);
            } else {
                require(label_of[nm] == labels, "join: world " + nm + " has conflicting labels");
            }
        }
    }
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto& m = *models[i].model;
        for (const auto& e : m.edges()) edges.insert(e);
    }
    // Compatibility: the relation restricted to shared worlds must agree.
    for (std::size_t i = 0; i < models.size(); ++i)
        for (std::size_t j = i + 1; j < models.size(); ++j) {
            const auto& a = *models[i].model;
            const auto& b = *models[j].model;
            if (a.serial() == b.serial()) continue;
            std::vector<std::string> shared;
            for (const auto& nm : a.names())
                if (b.find(nm) >= 0) shared.push_back(nm);
            for (const auto& x : shared)
                for (const auto& y : shared) {
                    bool ea = std::binary_search(a.succ(a.find(x)).begin(), a.succ(a.find(x)).end(), a.find(y));
                    bool eb = std::binary_search(b.succ(b.find(x)).begin(), b.succ(b.find(x)).end(), b.find(y));
                    require(ea == eb, "join: incompatible relations on shared worlds " + x + ", " + y);
                }
        }
    std::vector<std::string> points;
    for (const auto& pm : models) points.push_back(pm.name());
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::string root = "#join(";
    for (std::size_t i = 0; i < points.size(); ++i) root += (i ? "," : "") + points[i];
    root += ")";
    while (owner.count(root)) root += "'";
    worlds.insert(worlds.begin(), root);
    std::vector<KripkeModel::Edge> edge_list(edges.begin(), edges.end());
    for (const auto& p : points) edge_list.emplace_back(root, p);
    std::map<std::string, std::vector<std::string>> valuation;
    for (const auto& [p, ws] : val) valuation[p] = {ws.begin(), ws.end()};
    return PointedModel(KripkeModel::make(std::move(worlds), edge_list, valuation), root);
}

// F_n: worlds V_n, with a -> b iff b is an element of a.
inline ModelPtr cumulative_level(std::size_t n) {
    require(n >= 1, "cumulative level 0 has no worlds");
    auto worlds = hf::level(n);
    std::vector<KripkeModel::Edge> edges;
    for (const auto& a : worlds)
        for (const auto& b : hf::elements(a)) edges.emplace_back(a, b);
    return KripkeModel::make(worlds, edges, {});
}

// Longest path from the point; throws if a cycle is reachable.
inline std::size_t depth(const PointedModel& pm) {
    const auto& m = *pm.model;
    std::vector<int> state(m.size(), 0);  // 0 unseen, 1 active, 2 done
    std::vector<std::size_t> memo(m.size(), 0);
    std::function<std::size_t(int)> go = [&](int w) -> std::size_t {
        if (state[w] == 2) return memo[w];
        require(state[w] == 0, "depth undefined: cycle reachable from " + pm.name());
        state[w] = 1;
        std::size_t d = 0;
        for (int v : m.succ(w)) d = std::max(d, go(v) + 1);
        state[w] = 2;
        return memo[w] = d;
    };
    return go(pm.point);
}

inline bool is_acyclic_from(const PointedModel& pm) {
    try {
        depth(pm);
        return true;
    } catch (const InputError&) {
        return false;
    }
}

}  // namespace fsg
