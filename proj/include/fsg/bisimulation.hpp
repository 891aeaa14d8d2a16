#pragma once

#include <algorithm>
#include <map>
#include <unordered_map>
#include <vector>

#include "fsg/kripke.hpp"

namespace fsg {

// Rank-indexed refinement over the disjoint union of a collection of models.
// Level 0 classes worlds by their proposition labels; level n+1 by the level-n
// class together with the set of level-n classes of the successors. Levels are
// computed until the partition stops changing; that stable partition is full
// bisimilarity. Class ids are assigned in order of first occurrence.
class Bisimulation {
public:
    explicit Bisimulation(const std::vector<PointedModel>& pms) {
        for (const auto& pm : pms) add_model(pm.model);
        refine();
    }
    explicit Bisimulation(const std::vector<ModelPtr>& models) {
        for (const auto& m : models) add_model(m);
        refine();
    }

    // Class of pm at level n; n < 0 means full bisimilarity.
    int cls(const PointedModel& pm, int n = -1) const {
        int g = global(pm);
        std::size_t lvl = (n < 0 || static_cast<std::size_t>(n) >= levels_.size()) ? levels_.size() - 1 : n;
        return levels_[lvl][g];
    }
    bool n_bisimilar(const PointedModel& a, const PointedModel& b, int n) const { return cls(a, n) == cls(b, n); }
    bool bisimilar(const PointedModel& a, const PointedModel& b) const { return cls(a) == cls(b); }
    // Number of refinement steps until the partition was stable.
    std::size_t stable_level() const { return levels_.size() - 1; }
    std::size_t class_count(int n = -1) const {
        std::size_t lvl = (n < 0 || static_cast<std::size_t>(n) >= levels_.size()) ? levels_.size() - 1 : n;
        return counts_[lvl];
    }
    std::size_t world_count() const { return owner_.size(); }
    const std::vector<ModelPtr>& models() const { return models_; }

private:
    void add_model(const ModelPtr& m) {
        if (offset_.count(m->serial())) return;
        offset_[m->serial()] = owner_.size();
        models_.push_back(m);
        for (std::size_t w = 0; w < m->size(); ++w) owner_.emplace_back(models_.size() - 1, static_cast<int>(w));
    }
    int global(const PointedModel& pm) const {
        auto it = offset_.find(pm.model->serial());
        ensure(it != offset_.end(), "model not registered in bisimulation universe");
        return static_cast<int>(it->second) + pm.point;
    }

    void refine() {
        std::size_t n = owner_.size();
        std::vector<int> base(n);
        {
            std::map<std::vector<std::string>, int> ids;
            for (std::size_t g = 0; g < n; ++g) {
                const auto& [mi, w] = owner_[g];
                auto key = models_[mi]->labels(w);
                auto it = ids.emplace(key, static_cast<int>(ids.size())).first;
                base[g] = it->second;
            }
            levels_.push_back(base);
            counts_.push_back(ids.size());
        }
        while (true) {
            const auto& prev = levels_.back();
            std::map<std::pair<int, std::vector<int>>, int> ids;
            std::vector<int> next(n);
            for (std::size_t g = 0; g < n; ++g) {
                const auto& [mi, w] = owner_[g];
                std::size_t off = offset_.at(models_[mi]->serial());
                std::vector<int> sc;
                for (int v : models_[mi]->succ(w)) sc.push_back(prev[off + v]);
                std::sort(sc.begin(), sc.end());
                sc.erase(std::unique(sc.begin(), sc.end()), sc.end());
                auto it = ids.emplace(std::make_pair(prev[g], std::move(sc)), static_cast<int>(ids.size())).first;
                next[g] = it->second;
            }
            bool stable = ids.size() == counts_.back();
            if (stable) break;
            levels_.push_back(std::move(next));
            counts_.push_back(ids.size());
        }
    }

    std::vector<ModelPtr> models_;
    std::unordered_map<std::uint64_t, std::size_t> offset_;
    std::vector<std::pair<std::size_t, int>> owner_;
    std::vector<std::vector<int>> levels_;
    std::vector<std::size_t> counts_;
};

inline bool n_bisimilar(const PointedModel& a, const PointedModel& b, int n) {
    return Bisimulation(std::vector<PointedModel>{a, b}).n_bisimilar(a, b, n);
}

inline bool bisimilar(const PointedModel& a, const PointedModel& b) {
    return Bisimulation(std::vector<PointedModel>{a, b}).bisimilar(a, b);
}

// Blocks of mutually bisimilar pointed models, in order of first occurrence.
inline std::vector<std::vector<PointedModel>> bisim_quotient(const std::vector<PointedModel>& pms) {
    if (pms.empty()) return {};
    Bisimulation b(pms);
    std::map<int, std::size_t> block_of;
    std::vector<std::vector<PointedModel>> out;
    for (const auto& pm : pms) {
        auto [it, fresh] = block_of.emplace(b.cls(pm), out.size());
        if (fresh) out.emplace_back();
        out[it->second].push_back(pm);
    }
    return out;
}

// All pairs of successors are n-bisimilar.
inline bool in_class_An(const PointedModel& pm, int n) {
    auto succ = successors(pm);
    if (succ.size() <= 1) return true;
    Bisimulation b(std::vector<PointedModel>{pm});
    for (std::size_t i = 0; i < succ.size(); ++i)
        for (std::size_t j = i + 1; j < succ.size(); ++j)
            if (!b.n_bisimilar(succ[i], succ[j], n)) return false;
    return true;
}

}  // namespace fsg
