#pragma once

// Maximum Sidon / B_h-systems of k-subsets of [n] = {1..n} on tiny instances:
// an exact branch-and-bound and a greedy lower bound.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "groundset.hpp"
#include "systems.hpp"

namespace sidonkit {

// All k-subsets of {1..n} in lexicographic order.
inline std::vector<KSet> ground_sets(int n, int k) {
    std::vector<KSet> out;
    if (k < 1 || n < k)
        return out;
    std::vector<Element> elems(static_cast<std::size_t>(k));
    for_each_combination(n, k, [&](std::span<const int> idx) {
        for (std::size_t i = 0; i < idx.size(); ++i)
            elems[i] = idx[i] + 1;
        out.emplace_back(elems);
    });
    return out;
}

namespace detail {

// Incremental registry of the h-fold sumsets realized by a growing subfamily
// of a fixed ground list. Adding member c registers every h-multiset that
// contains c; the add fails if any of those sumsets is already realized.
class TupleRegistry {
public:
    TupleRegistry(const std::vector<KSet>& ground, int h) : ground_(ground), h_(h) {}

    const std::vector<std::size_t>& chosen() const noexcept { return chosen_; }

    // On success returns true and pushes the member; otherwise leaves state unchanged.
    bool try_add(std::size_t c) {
        std::vector<std::uint32_t> ids;
        bool ok = true;
        pool_ = chosen_;
        pool_.push_back(c);
        const KSet& base = ground_[c];
        const int rest = h_ - 1;
        if (rest == 0) {
            ids.push_back(intern(base));
        } else if (rest == 1) {
            for (std::size_t x : pool_)
                ids.push_back(pair_id(c, x));
        } else {
            for_each_multiset(pool_.size(), rest, [&](std::span<const std::size_t> idx) {
                KSet acc = base;
                for (std::size_t i : idx)
                    acc = sumset(acc, ground_[pool_[i]]);
                ids.push_back(intern(acc));
                return true;
            });
        }
        std::vector<std::uint32_t> marked;
        for (std::uint32_t id : ids) {
            if (id >= used_.size())
                used_.resize(static_cast<std::size_t>(id) + 1, 0);
            if (used_[id]) {
                ok = false;
                break;
            }
            used_[id] = 1;
            marked.push_back(id);
        }
        if (!ok) {
            for (std::uint32_t id : marked)
                used_[id] = 0;
            return false;
        }
        chosen_.push_back(c);
        undo_.push_back(std::move(marked));
        return true;
    }

    void pop() {
        for (std::uint32_t id : undo_.back())
            used_[id] = 0;
        undo_.pop_back();
        chosen_.pop_back();
    }

    bool compatible(std::size_t c) {
        if (!try_add(c))
            return false;
        pop();
        return true;
    }

private:
    std::uint32_t intern(const KSet& s) {
        const auto [it, inserted] = ids_.try_emplace(s, static_cast<std::uint32_t>(ids_.size()));
        return it->second;
    }

    std::uint32_t pair_id(std::size_t a, std::size_t b) {
        if (a > b)
            std::swap(a, b);
        const std::uint64_t key = static_cast<std::uint64_t>(a) * ground_.size() + b;
        if (auto it = pair_cache_.find(key); it != pair_cache_.end())
            return it->second;
        const std::uint32_t id = intern(sumset(ground_[a], ground_[b]));
        pair_cache_.emplace(key, id);
        return id;
    }

    const std::vector<KSet>& ground_;
    int h_;
    std::map<KSet, std::uint32_t> ids_;
    std::unordered_map<std::uint64_t, std::uint32_t> pair_cache_;
    std::vector<std::uint8_t> used_;
    std::vector<std::size_t> chosen_;
    std::vector<std::size_t> pool_;
    std::vector<std::vector<std::uint32_t>> undo_;
};

inline Family family_from(const std::vector<KSet>& ground, const std::vector<std::size_t>& picks) {
    std::vector<KSet> members;
    for (std::size_t i : picks)
        members.push_back(ground[i]);
    std::sort(members.begin(), members.end());
    return Family(std::move(members));
}

} // namespace detail

struct GreedyOrder {
    enum class Kind { lexicographic, random } kind = Kind::lexicographic;
    std::uint64_t seed = 0;

    static GreedyOrder lexicographic() { return {}; }
    static GreedyOrder random(std::uint64_t seed) { return {Kind::random, seed}; }
};

// Scans the k-subsets of [n] in the given order and keeps a set whenever it
// creates no nontrivial 2h-tuple with the sets kept so far.
inline Family greedy_sidon(int n, int k, int h = 2, GreedyOrder order = {}, const SearchOptions& opts = {}) {
    if (h < 1)
        throw std::invalid_argument("h must be at least 1");
    const std::uint64_t count = binomial_saturating(n, k);
    if (n >= k && k >= 1 && count > opts.pair_cap && !opts.allow_large)
        throw resource_error("ground set count " + std::to_string(count) + " exceeds cap");
    const std::vector<KSet> ground = ground_sets(n, k);
    std::vector<std::size_t> sequence(ground.size());
    for (std::size_t i = 0; i < sequence.size(); ++i)
        sequence[i] = i;
    if (order.kind == GreedyOrder::Kind::random) {
        std::mt19937_64 rng(order.seed);
        std::shuffle(sequence.begin(), sequence.end(), rng);
    }
    detail::TupleRegistry registry(ground, h);
    for (std::size_t c : sequence)
        registry.try_add(c);
    return detail::family_from(ground, registry.chosen());
}

struct ExactOptions {
    int h = 2;
    std::uint64_t budget = 200'000'000; // search nodes
    bool force = false;
    std::uint64_t max_ground = 40;
};

struct ExtremalResult {
    std::size_t size = 0;
    Family witness;
    bool optimal = true;
    std::uint64_t nodes = 0;
};

// Largest subfamily of the k-subsets of [n] with no nontrivial 2h-tuple.
// Branch-and-bound over the lexicographic ground order; bound is the current
// size plus the candidates still compatible, capped by upper_bound(n, k).
inline ExtremalResult exact_max_sidon(int n, int k, const ExactOptions& opts = {}) {
    if (opts.h < 1)
        throw std::invalid_argument("h must be at least 1");
    if (k < 1)
        throw domain_error("exact_max_sidon needs k >= 1");
    const std::uint64_t count = binomial_saturating(n, k);
    if (n >= k && count > opts.max_ground && !opts.force)
        throw instance_too_large("binomial(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
                                 std::to_string(count) + " ground sets exceeds the exact-mode limit of " +
                                 std::to_string(opts.max_ground));
    const std::vector<KSet> ground = ground_sets(n, k);
    ExtremalResult result;
    if (ground.empty()) {
        result.witness = Family();
        return result;
    }
    const std::uint64_t cap = n > k ? upper_bound(n, k) : ground.size();

    detail::TupleRegistry registry(ground, opts.h);
    std::vector<std::size_t> best;
    // lexicographic greedy warm start
    {
        detail::TupleRegistry warm(ground, opts.h);
        for (std::size_t c = 0; c < ground.size(); ++c)
            warm.try_add(c);
        best = warm.chosen();
    }
    bool stop = best.size() >= cap;
    bool exhausted = false;

    auto expand = [&](auto&& self, const std::vector<std::size_t>& candidates) -> void {
        if (++result.nodes > opts.budget) {
            exhausted = stop = true;
            return;
        }
        const std::vector<std::size_t>& chosen = registry.chosen();
        if (chosen.size() > best.size()) {
            best = chosen;
            if (best.size() >= cap)
                stop = true;
        }
        for (std::size_t pos = 0; pos < candidates.size() && !stop; ++pos) {
            if (chosen.size() + (candidates.size() - pos) <= best.size())
                return;
            const std::size_t c = candidates[pos];
            if (!registry.try_add(c))
                continue;
            std::vector<std::size_t> next;
            next.reserve(candidates.size() - pos - 1);
            for (std::size_t q = pos + 1; q < candidates.size(); ++q)
                if (registry.compatible(candidates[q]))
                    next.push_back(candidates[q]);
            self(self, next);
            registry.pop();
        }
    };
    if (!stop) {
        std::vector<std::size_t> all(ground.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = i;
        expand(expand, all);
    }
    result.size = best.size();
    result.witness = detail::family_from(ground, best);
    result.optimal = !exhausted;
    return result;
}

} // namespace sidonkit
