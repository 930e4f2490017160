#pragma once

// Integer k-sets and their additive arithmetic: sumsets, h-fold sumsets,
// translation, normalization and B_h-set tests.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"

namespace sidonkit {

using Element = std::int64_t;

// A nonempty finite set of integers, stored strictly increasing.
class KSet {
public:
    KSet(std::initializer_list<Element> elements) : KSet(std::vector<Element>(elements)) {}

    explicit KSet(std::vector<Element> elements) : elems_(std::move(elements)) {
        if (elems_.empty())
            throw std::invalid_argument("a set needs at least one element");
        for (std::size_t i = 1; i < elems_.size(); ++i)
            if (elems_[i - 1] >= elems_[i])
                throw std::invalid_argument("set elements must be strictly increasing");
    }

    // Sorts and removes duplicates.
    static KSet from_unsorted(std::vector<Element> elements) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        return KSet(std::move(elements));
    }

    std::span<const Element> elements() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    Element min() const noexcept { return elems_.front(); }
    Element max() const noexcept { return elems_.back(); }
    Element operator[](std::size_t i) const noexcept { return elems_[i]; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }

    bool contains(Element x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

    bool is_subset_of(const KSet& other) const {
        return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(elems_[i]);
        }
        return out;
    }

    friend bool operator==(const KSet&, const KSet&) = default;
    friend auto operator<=>(const KSet& a, const KSet& b) { return a.elems_ <=> b.elems_; }

private:
    std::vector<Element> elems_;
};

// Translate of a set whose minimum is 0.
class NormalizedClass {
public:
    explicit NormalizedClass(KSet representative) : rep_(std::move(representative)) {
        if (rep_.min() != 0)
            throw std::invalid_argument("normalized representative must have minimum 0");
    }

    const KSet& representative() const noexcept { return rep_; }

    friend bool operator==(const NormalizedClass&, const NormalizedClass&) = default;
    friend auto operator<=>(const NormalizedClass& a, const NormalizedClass& b) { return a.rep_ <=> b.rep_; }

private:
    KSet rep_;
};

inline KSet sumset(const KSet& a, const KSet& b) {
    std::vector<Element> sums;
    sums.reserve(a.size() * b.size());
    for (Element x : a)
        for (Element y : b)
            sums.push_back(checked_add(x, y));
    return KSet::from_unsorted(std::move(sums));
}

inline KSet h_fold_sumset(const KSet& a, int h) {
    if (h < 1)
        throw std::invalid_argument("h-fold sumset needs h >= 1");
    KSet acc = a;
    for (int i = 1; i < h; ++i)
        acc = sumset(acc, a);
    return acc;
}

// A_1 + ... + A_m for m >= 1.
inline KSet fold_sumset(std::span<const KSet> sets) {
    if (sets.empty())
        throw std::invalid_argument("fold_sumset needs at least one set");
    KSet acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i)
        acc = sumset(acc, sets[i]);
    return acc;
}

inline KSet translate(const KSet& a, Element z) {
    std::vector<Element> out;
    out.reserve(a.size());
    for (Element x : a)
        out.push_back(checked_add(x, z));
    return KSet(std::move(out));
}

inline NormalizedClass normalize(const KSet& a) {
    if (a.min() == std::numeric_limits<Element>::min())
        throw overflow_error("cannot negate the minimum of " + a.to_string());
    return NormalizedClass(translate(a, -a.min()));
}

inline KSet intersection(const KSet& a, const KSet& b) {
    std::vector<Element> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    if (out.empty())
        throw std::invalid_argument("intersection is empty");
    return KSet(std::move(out));
}

inline std::size_t intersection_size(const KSet& a, const KSet& b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

// Two distinct h-multisets of elements with the same total.
struct BhWitness {
    std::vector<Element> left;  // nondecreasing
    std::vector<Element> right; // nondecreasing
};

namespace detail {

// Visits every nondecreasing h-tuple of indices into [0, size) in lexicographic order.
template <class F>
bool for_each_multiset(std::size_t size, int h, F&& f) {
    if (size == 0)
        return true;
    std::vector<std::size_t> idx(static_cast<std::size_t>(h), 0);
    while (true) {
        if (!f(std::span<const std::size_t>(idx)))
            return false;
        int i = h - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == size - 1)
            --i;
        if (i < 0)
            return true;
        const std::size_t v = idx[static_cast<std::size_t>(i)] + 1;
        for (int j = i; j < h; ++j)
            idx[static_cast<std::size_t>(j)] = v;
    }
}

} // namespace detail

// Definition-level B_h test: enumerate nondecreasing h-tuples of elements,
// report the first pair of distinct multisets with a repeated total.
inline std::optional<BhWitness> find_b_h_violation(const KSet& a, int h) {
    if (h < 1)
        throw std::invalid_argument("B_h test needs h >= 1");
    const auto elems = a.elements();
    std::unordered_map<Element, std::vector<std::size_t>> first_seen;
    std::optional<BhWitness> witness;
    detail::for_each_multiset(elems.size(), h, [&](std::span<const std::size_t> idx) {
        Element total = 0;
        for (std::size_t i : idx)
            total = checked_add(total, elems[i]);
        auto [it, inserted] = first_seen.try_emplace(total, idx.begin(), idx.end());
        if (inserted)
            return true;
        BhWitness w;
        for (std::size_t i : it->second)
            w.left.push_back(elems[i]);
        for (std::size_t i : idx)
            w.right.push_back(elems[i]);
        witness = std::move(w);
        return false;
    });
    return witness;
}

inline bool is_b_h(const KSet& a, int h) { return !find_b_h_violation(a, h).has_value(); }

namespace detail {

// Collects every h-fold total, sorts, and looks for an adjacent repeat.
inline bool is_b_h_sorted_scan(const KSet& a, int h) {
    const auto elems = a.elements();
    std::vector<Element> totals;
    for_each_multiset(elems.size(), h, [&](std::span<const std::size_t> idx) {
        Element total = 0;
        for (std::size_t i : idx)
            total = checked_add(total, elems[i]);
        totals.push_back(total);
        return true;
    });
    std::sort(totals.begin(), totals.end());
    return std::adjacent_find(totals.begin(), totals.end()) == totals.end();
}

// Counts multisets per total with the generating function prod 1/(1 - y x^d),
// saturating at 2. Needs the shifted range h * (max - min) to be small.
inline bool is_b_h_counting(const KSet& a, int h) {
    const Element span = a.max() - a.min();
    const std::size_t width = static_cast<std::size_t>(span) * static_cast<std::size_t>(h) + 1;
    const std::size_t rows = static_cast<std::size_t>(h) + 1;
    std::vector<std::uint8_t> count(rows * width, 0);
    count[0] = 1;
    for (Element x : a) {
        const std::size_t d = static_cast<std::size_t>(x - a.min());
        for (std::size_t j = 1; j < rows; ++j) {
            std::uint8_t* cur = &count[j * width];
            const std::uint8_t* prev = &count[(j - 1) * width];
            const std::size_t top = static_cast<std::size_t>(span) * j;
            for (std::size_t s = d; s <= top; ++s) {
                const unsigned v = cur[s] + prev[s - d];
                cur[s] = static_cast<std::uint8_t>(v > 2 ? 2 : v);
            }
        }
    }
    const std::uint8_t* last = &count[static_cast<std::size_t>(h) * width];
    return std::all_of(last, last + width, [](std::uint8_t c) { return c <= 1; });
}

} // namespace detail

// Same answer as is_b_h without a witness; picks the cheaper of two independent methods.
inline bool is_b_h_fast(const KSet& a, int h) {
    if (h < 1)
        throw std::invalid_argument("B_h test needs h >= 1");
    if (h == 1 || a.size() == 1)
        return true;
    const u128 span = static_cast<u128>(static_cast<__int128>(a.max()) - a.min());
    const u128 table = (span * static_cast<u128>(h) + 1) * static_cast<u128>(h + 1);
    if (table <= (u128{1} << 24))
        return detail::is_b_h_counting(a, h);
    return detail::is_b_h_sorted_scan(a, h);
}

// Calls f(KSet) for every k-subset of {0,...,n} containing 0, in
// lexicographic order. There are binomial(n, k-1) of them.
template <class F>
void for_each_normalized_class(int n, int k, F&& f) {
    if (k < 1 || n < 0)
        return;
    std::vector<Element> elems(static_cast<std::size_t>(k), 0);
    for_each_combination(n, k - 1, [&](std::span<const int> idx) {
        for (std::size_t i = 0; i < idx.size(); ++i)
            elems[i + 1] = idx[i] + 1;
        f(KSet(elems));
    });
}

inline std::vector<KSet> normalized_classes(int n, int k) {
    std::vector<KSet> out;
    for_each_normalized_class(n, k, [&](KSet s) { out.push_back(std::move(s)); });
    return out;
}

} // namespace sidonkit
