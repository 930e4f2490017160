#pragma once

// Checked integer arithmetic, binomial coefficients and k-subset enumeration.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace sidonkit {

using u128 = unsigned __int128;

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out))
        throw overflow_error("integer overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw overflow_error("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out;
    if (__builtin_mul_overflow(a, b, &out))
        throw overflow_error("integer overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return out;
}

// Exact binomial in 128 bits. Zero when r < 0 or r > n or n < 0.
inline u128 binomial_wide(std::int64_t n, std::int64_t r) {
    if (n < 0 || r < 0 || r > n)
        return 0;
    if (r > n - r)
        r = n - r;
    u128 result = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        // result * (n - r + i) is divisible by i at every step
        const u128 factor = static_cast<u128>(n - r + i);
        if (result > std::numeric_limits<u128>::max() / factor)
            throw overflow_error("binomial(" + std::to_string(n) + "," + std::to_string(r) + ") overflows 128 bits");
        result = result * factor / static_cast<u128>(i);
    }
    return result;
}

inline std::uint64_t binomial(std::int64_t n, std::int64_t r) {
    const u128 wide = binomial_wide(n, r);
    if (wide > std::numeric_limits<std::uint64_t>::max())
        throw overflow_error("binomial(" + std::to_string(n) + "," + std::to_string(r) + ") overflows 64 bits");
    return static_cast<std::uint64_t>(wide);
}

// Like binomial() but saturates at UINT64_MAX; used for work estimates.
inline std::uint64_t binomial_saturating(std::int64_t n, std::int64_t r) {
    try {
        return binomial(n, r);
    } catch (const overflow_error&) {
        return std::numeric_limits<std::uint64_t>::max();
    }
}

// Calls f(std::span<const int>) for every r-subset of {0,...,n-1} in
// lexicographic order. Stops early when f returns false (if it returns bool).
template <class F>
void for_each_combination(int n, int r, F&& f) {
    if (r < 0 || r > n)
        return;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        if constexpr (std::is_same_v<decltype(f(std::span<const int>(idx))), bool>) {
            if (!f(std::span<const int>(idx)))
                return;
        } else {
            f(std::span<const int>(idx));
        }
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i)
            --i;
        if (i < 0)
            return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// The rank-th r-subset of {0,...,n-1} in lexicographic order.
inline std::vector<int> unrank_combination(int n, int r, std::uint64_t rank) {
    if (rank >= binomial(n, r))
        throw domain_error("combination rank out of range");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(r));
    int next = 0;
    for (int slot = 0; slot < r; ++slot) {
        for (;; ++next) {
            // subsets whose slot-th element is `next`
            const std::uint64_t block = binomial(n - next - 1, r - slot - 1);
            if (rank < block)
                break;
            rank -= block;
        }
        out.push_back(next);
        ++next;
    }
    return out;
}

} // namespace sidonkit
