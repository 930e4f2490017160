#pragma once

// Slow definition-level reference implementations. Nothing here calls the
// library's search code; only KSet/Family/AdditiveTuple are shared as carriers.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sidonkit/sidonkit.hpp"

namespace oracle {

using sidonkit::AdditiveTuple;
using sidonkit::Family;
using sidonkit::KSet;
using Elem = std::int64_t;

inline std::set<Elem> sum_of(const std::set<Elem>& a, const std::set<Elem>& b) {
    std::set<Elem> out;
    for (Elem x : a)
        for (Elem y : b)
            out.insert(x + y);
    return out;
}

inline std::set<Elem> as_set(const KSet& s) { return {s.begin(), s.end()}; }

inline KSet as_kset(const std::set<Elem>& s) { return KSet(std::vector<Elem>(s.begin(), s.end())); }

inline KSet naive_sumset(const KSet& a, const KSet& b) { return as_kset(sum_of(as_set(a), as_set(b))); }

// Nondecreasing index tuples of length h over [0, n), by recursion.
inline void multisets(std::size_t n, int h, std::vector<std::vector<std::size_t>>& out,
                      std::vector<std::size_t>& cur, std::size_t from = 0) {
    if (static_cast<int>(cur.size()) == h) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < n; ++i) {
        cur.push_back(i);
        multisets(n, h, out, cur, i);
        cur.pop_back();
    }
}

inline std::vector<std::vector<std::size_t>> multisets(std::size_t n, int h) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    multisets(n, h, out, cur);
    return out;
}

// Every pair of distinct h-multisets of elements compared directly.
inline bool is_b_h(const KSet& a, int h) {
    const std::vector<Elem> e(a.begin(), a.end());
    const auto ms = multisets(e.size(), h);
    std::vector<Elem> totals;
    for (const auto& m : ms) {
        Elem t = 0;
        for (std::size_t i : m)
            t += e[i];
        totals.push_back(t);
    }
    for (std::size_t i = 0; i < totals.size(); ++i)
        for (std::size_t j = i + 1; j < totals.size(); ++j)
            if (totals[i] == totals[j])
                return false;
    return true;
}

// Definition-level scan: for every pair of distinct member h-multisets,
// compute both sumsets from scratch and compare.
inline std::vector<AdditiveTuple> h_tuples(const Family& f, int h) {
    std::vector<AdditiveTuple> out;
    if (f.empty())
        return out;
    const auto ms = multisets(f.size(), h);
    std::vector<std::vector<KSet>> sides;
    std::vector<std::set<Elem>> sums;
    for (const auto& m : ms) {
        std::vector<KSet> side;
        std::set<Elem> acc{0};
        for (std::size_t i : m) {
            side.push_back(f[i]);
            acc = sum_of(acc, as_set(f[i]));
        }
        std::sort(side.begin(), side.end());
        sides.push_back(std::move(side));
        sums.push_back(std::move(acc));
    }
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (sums[i] == sums[j]) {
                AdditiveTuple t{sides[i], sides[j], as_kset(sums[i])};
                if (t.right < t.left)
                    std::swap(t.left, t.right);
                out.push_back(std::move(t));
            }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<AdditiveTuple> quadruples(const Family& f) { return h_tuples(f, 2); }

// Largest classical Sidon subset of {1..n} by subset enumeration.
inline int max_classical_sidon(int n) {
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best)
            continue;
        std::vector<Elem> e;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u)
                e.push_back(i + 1);
        if (oracle::is_b_h(KSet(e), 2))
            best = size;
    }
    return best;
}

// Largest subfamily of the k-subsets of [n] with no nontrivial quadruple, by
// trying every subfamily (ground sets <= 20).
inline std::size_t max_sidon_family(int n, int k) {
    std::vector<KSet> ground;
    std::vector<Elem> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == k) {
            ground.emplace_back(cur);
            return;
        }
        for (int v = next; v <= n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    std::size_t best = 0;
    const std::uint32_t limit = 1u << ground.size();
    for (std::uint32_t mask = 1; mask < limit; ++mask) {
        const std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
        if (size <= best)
            continue;
        std::vector<KSet> members;
        for (std::size_t i = 0; i < ground.size(); ++i)
            if (mask >> i & 1u)
                members.push_back(ground[i]);
        if (quadruples(Family(members)).empty())
            best = size;
    }
    return best;
}

inline std::uint64_t choose(std::uint64_t n, std::uint64_t r) {
    if (r > n)
        return 0;
    std::uint64_t out = 1;
    for (std::uint64_t i = 1; i <= r; ++i)
        out = out * (n - r + i) / i;
    return out;
}

// Random family of distinct k-sets with elements in [0, max].
inline Family random_family(std::mt19937_64& rng, int k, int max, std::size_t size) {
    std::set<std::vector<Elem>> seen;
    std::uniform_int_distribution<int> pick(0, max);
    std::size_t attempts = 0;
    while (seen.size() < size && attempts++ < size * 50) {
        std::set<Elem> s;
        while (static_cast<int>(s.size()) < k)
            s.insert(pick(rng));
        seen.emplace(s.begin(), s.end());
    }
    std::vector<KSet> members;
    for (const auto& v : seen)
        members.emplace_back(v);
    std::shuffle(members.begin(), members.end(), rng);
    return Family(std::move(members));
}

} // namespace oracle
