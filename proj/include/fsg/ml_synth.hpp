#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_set>
#include <vector>

#include "fsg/ml_game.hpp"

namespace fsg {

struct SynthResult {
    Formula formula;
    std::size_t size = 0;
};

// Bottom-up enumeration of ML denotations by formula size over the worlds
// reachable from the given points. This is independent of the game solver:
// it works on raw worlds and never uses bisimulation.
class DenotationDP {
public:
    DenotationDP(const ModelSet& A, const ModelSet& B, std::size_t entry_budget) : budget_(entry_budget) {
        std::map<std::uint64_t, std::pair<ModelPtr, std::vector<char>>> keep;
        for (const auto* side : {&A, &B})
            for (const auto& pm : *side) {
                auto& [m, mask] = keep[pm.model->serial()];
                m = pm.model;
                mask.resize(m->size(), 0);
                for (int w : reachable(*m, pm.point)) mask[w] = 1;
            }
        std::map<std::pair<std::uint64_t, int>, int> index;
        for (auto& [serial, entry] : keep) {
            auto& [m, mask] = entry;
            for (std::size_t w = 0; w < m->size(); ++w)
                if (mask[w]) {
                    index[{serial, static_cast<int>(w)}] = static_cast<int>(worlds_.size());
                    worlds_.push_back(PointedModel(m, static_cast<int>(w)));
                }
        }
        n_ = worlds_.size();
        words_ = (n_ + 63) / 64;
        succ_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (int v : worlds_[i].model->succ(worlds_[i].point))
                succ_[i].push_back(index.at({worlds_[i].model->serial(), v}));
        amask_.assign(words_, 0);
        bmask_.assign(words_, 0);
        for (const auto& pm : A) setbit(amask_.data(), index.at({pm.model->serial(), pm.point}));
        for (const auto& pm : B) setbit(bmask_.data(), index.at({pm.model->serial(), pm.point}));
        literals_ = literals_for(props_of(A, B));
    }

    DenotationDP(const DenotationDP&) = delete;
    DenotationDP& operator=(const DenotationDP&) = delete;

    std::optional<SynthResult> run(int k_max) {
        if (k_max < 1) return std::nullopt;
        std::vector<std::uint64_t> buf(words_);
        // size 1: literals
        levels_.push_back({0, 0});  // size 0 unused
        std::size_t start = count();
        for (const auto& l : literals_) {
            for (std::size_t i = 0; i < n_; ++i) {
                bool t = literal_true(l, worlds_[i]);
                if (t) setbit(buf.data(), i);
                else clearbit(buf.data(), i);
            }
            offer(buf, l);
        }
        levels_.push_back({start, count()});
        if (best_) return finish(1);
        for (int s = 2; s <= k_max; ++s) {
            start = count();
            auto [ps, pe] = levels_[s - 1];
            for (std::size_t i = ps; i < pe; ++i) {
                pre(i, true, buf);
                offer(buf, Formula::dia(forms_[i]));
                pre(i, false, buf);
                offer(buf, Formula::box(forms_[i]));
            }
            for (int s1 = 1; s1 <= (s - 1) / 2; ++s1) {
                int s2 = s - 1 - s1;
                auto [as, ae] = levels_[s1];
                auto [bs, be] = levels_[s2];
                for (std::size_t i = as; i < ae; ++i)
                    for (std::size_t j = (s1 == s2 ? i : bs); j < be; ++j) {
                        // offer() may grow data_, so re-read both rows each time
                        for (std::size_t w = 0; w < words_; ++w) buf[w] = at(i)[w] | at(j)[w];
                        offer(buf, Formula::lor(forms_[i], forms_[j]));
                        for (std::size_t w = 0; w < words_; ++w) buf[w] = at(i)[w] & at(j)[w];
                        offer(buf, Formula::land(forms_[i], forms_[j]));
                    }
            }
            levels_.push_back({start, count()});
            if (best_) return finish(s);
        }
        return std::nullopt;
    }

    std::size_t world_count() const { return n_; }
    std::size_t entries() const { return forms_.size(); }

private:
    static void setbit(std::uint64_t* d, std::size_t i) { d[i >> 6] |= std::uint64_t{1} << (i & 63); }
    static void clearbit(std::uint64_t* d, std::size_t i) { d[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    static bool testbit(const std::uint64_t* d, std::size_t i) { return d[i >> 6] >> (i & 63) & 1; }

    std::size_t count() const { return forms_.size(); }
    const std::uint64_t* at(std::size_t i) const { return data_.data() + i * words_; }

    void pre(std::size_t i, bool dia, std::vector<std::uint64_t>& out) const {
        const auto* s = at(i);
        std::fill(out.begin(), out.end(), 0);
        for (std::size_t w = 0; w < n_; ++w) {
            bool any = false, all = true;
            for (int v : succ_[w]) {
                bool in = testbit(s, v);
                any = any || in;
                all = all && in;
            }
            if (dia ? any : all) setbit(out.data(), w);
        }
    }

    bool is_separator(const std::vector<std::uint64_t>& d) const {
        for (std::size_t w = 0; w < words_; ++w)
            if ((d[w] & amask_[w]) != amask_[w] || (d[w] & bmask_[w]) != 0) return false;
        return true;
    }

    struct Hash {
        const DenotationDP* dp;
        std::size_t operator()(std::size_t i) const {
            const auto* d = i == kProbe ? dp->probe_ : dp->at(i);
            std::uint64_t h = 1469598103934665603ull;
            for (std::size_t w = 0; w < dp->words_; ++w) h = (h ^ d[w]) * 1099511628211ull;
            return h;
        }
    };
    struct Eq {
        const DenotationDP* dp;
        bool operator()(std::size_t i, std::size_t j) const {
            const auto* a = i == kProbe ? dp->probe_ : dp->at(i);
            const auto* b = j == kProbe ? dp->probe_ : dp->at(j);
            return std::equal(a, a + dp->words_, b);
        }
    };
    static constexpr std::size_t kProbe = static_cast<std::size_t>(-1);

    // Stores d if it is new; tracks the lexicographically least separator of
    // the current size among all candidates, new or not.
    void offer(const std::vector<std::uint64_t>& d, const Formula& f) {
        if (is_separator(d)) {
            std::string text = print(f);
            if (!best_ || text < best_text_) {
                best_ = f;
                best_text_ = std::move(text);
            }
        }
        probe_ = d.data();
        if (seen_.count(kProbe)) return;
        if (forms_.size() >= budget_) throw BudgetExceeded("synthesis entry budget exhausted");
        data_.insert(data_.end(), d.begin(), d.end());
        forms_.push_back(f);
        seen_.insert(forms_.size() - 1);
    }

    std::optional<SynthResult> finish(int s) { return SynthResult{*best_, static_cast<std::size_t>(s)}; }

    std::size_t budget_;
    std::vector<PointedModel> worlds_;
    std::size_t n_ = 0, words_ = 0;
    std::vector<std::vector<int>> succ_;
    std::vector<std::uint64_t> amask_, bmask_;
    std::vector<Formula> literals_;
    std::vector<std::uint64_t> data_;
    std::vector<Formula> forms_;
    std::vector<std::pair<std::size_t, std::size_t>> levels_;
    const std::uint64_t* probe_ = nullptr;
    std::unordered_set<std::size_t, Hash, Eq> seen_{16, Hash{this}, Eq{this}};
    std::optional<Formula> best_;
    std::string best_text_;
};

// Minimal-size separating ML formula of size <= k_max; ties broken by the
// lexicographically least printed form.
inline std::optional<SynthResult> synthesize_min(const ModelSet& A, const ModelSet& B, int k_max,
                                                 std::size_t entry_budget = 20'000'000) {
    DenotationDP dp(normalize(A), normalize(B), entry_budget);
    return dp.run(k_max);
}

}  // namespace fsg
