#pragma once

// Families of sets and exhaustive detection of nontrivial additive
// quadruples / 2h-tuples (A_1 + ... + A_h = B_1 + ... + B_h with the two
// multisets of members different).

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "groundset.hpp"
#include "parallel.hpp"

namespace sidonkit {

// A collection of pairwise distinct sets. Member order is kept as given.
class Family {
public:
    Family() = default;

    explicit Family(std::vector<KSet> members) : members_(std::move(members)) {
        std::vector<const KSet*> sorted;
        sorted.reserve(members_.size());
        for (const KSet& m : members_)
            sorted.push_back(&m);
        std::sort(sorted.begin(), sorted.end(), [](const KSet* a, const KSet* b) { return *a < *b; });
        for (std::size_t i = 1; i < sorted.size(); ++i)
            if (*sorted[i - 1] == *sorted[i])
                throw std::invalid_argument("duplicate family member {" + sorted[i]->to_string() + "}");
    }

    const std::vector<KSet>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const KSet& operator[](std::size_t i) const noexcept { return members_[i]; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    // Common cardinality of all members; empty for an empty or mixed family.
    std::optional<std::size_t> uniform_cardinality() const {
        if (members_.empty())
            return std::nullopt;
        const std::size_t k = members_.front().size();
        for (const KSet& m : members_)
            if (m.size() != k)
                return std::nullopt;
        return k;
    }

    // Same members in lexicographic order.
    Family canonical() const {
        Family out;
        out.members_ = members_;
        std::sort(out.members_.begin(), out.members_.end());
        return out;
    }

    friend bool operator==(const Family&, const Family&) = default;

private:
    std::vector<KSet> members_;
};

// left and right are nondecreasing member lists with left < right.
struct AdditiveTuple {
    std::vector<KSet> left;
    std::vector<KSet> right;
    KSet common_sumset{0};

    friend bool operator==(const AdditiveTuple&, const AdditiveTuple&) = default;
    friend bool operator<(const AdditiveTuple& a, const AdditiveTuple& b) {
        return std::tie(a.common_sumset, a.left, a.right) < std::tie(b.common_sumset, b.left, b.right);
    }
};

// Exact, order-preserving byte encoding of a sorted integer sequence:
// 8 big-endian bytes per element with the sign bit flipped.
struct SumsetKey {
    std::string bytes;

    static SumsetKey of(const KSet& s) {
        SumsetKey key;
        key.bytes.reserve(s.size() * 8);
        for (Element x : s) {
            const std::uint64_t u = static_cast<std::uint64_t>(x) ^ (std::uint64_t{1} << 63);
            for (int shift = 56; shift >= 0; shift -= 8)
                key.bytes.push_back(static_cast<char>((u >> shift) & 0xff));
        }
        return key;
    }

    KSet decode() const {
        std::vector<Element> out;
        for (std::size_t i = 0; i + 8 <= bytes.size(); i += 8) {
            std::uint64_t u = 0;
            for (std::size_t j = 0; j < 8; ++j)
                u = (u << 8) | static_cast<unsigned char>(bytes[i + j]);
            out.push_back(static_cast<Element>(u ^ (std::uint64_t{1} << 63)));
        }
        return KSet(std::move(out));
    }

    friend bool operator==(const SumsetKey&, const SumsetKey&) = default;
    friend auto operator<=>(const SumsetKey& a, const SumsetKey& b) { return a.bytes <=> b.bytes; }
};

inline constexpr std::uint64_t kDefaultPairCap = 1'000'000'000;

// SIDONKIT_MAX_PAIRS overrides the built-in cap.
inline std::uint64_t default_pair_cap() {
    if (const char* env = std::getenv("SIDONKIT_MAX_PAIRS")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0')
            return v;
    }
    return kDefaultPairCap;
}

struct SearchOptions {
    std::optional<std::size_t> limit;
    std::uint64_t pair_cap = default_pair_cap();
    bool allow_large = false;
    unsigned threads = 1;
};

// Number of h-multisets of members, saturating.
inline std::uint64_t multiset_count(std::size_t members, int h) {
    return binomial_saturating(static_cast<std::int64_t>(members) + h - 1, h);
}

namespace detail {

inline constexpr std::size_t kBitsetWidth = 1024;
using SumBits = std::bitset<kBitsetWidth>;

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t fingerprint(const KSet& s) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
    for (Element x : s)
        h = mix64(h ^ static_cast<std::uint64_t>(x));
    return h;
}

inline std::uint64_t fingerprint(const SumBits& b) { return mix64(std::hash<SumBits>{}(b)); }

// Fingerprints of every h-multiset of members, partitioned by leading index.
// Equal sumsets always share a fingerprint; the converse is re-verified exactly.
struct Shard {
    std::vector<std::uint64_t> fps;
    std::vector<std::uint32_t> idx; // stride h
};

template <class Repr, class Combine, class Hash>
void enumerate_leading(std::uint32_t lead, int h, const std::vector<Repr>& repr, Combine&& combine, Hash&& hash,
                       Shard& shard) {
    const std::uint32_t m = static_cast<std::uint32_t>(repr.size());
    std::vector<Repr> prefix(static_cast<std::size_t>(h), repr[lead]);
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(h), lead);
    // depth-first over nondecreasing tails; prefix[d] is the sum of idx[0..d]
    auto recurse = [&](auto&& self, int depth) -> void {
        if (depth == h) {
            shard.fps.push_back(hash(prefix[static_cast<std::size_t>(h - 1)]));
            shard.idx.insert(shard.idx.end(), idx.begin(), idx.end());
            return;
        }
        for (std::uint32_t next = idx[static_cast<std::size_t>(depth - 1)]; next < m; ++next) {
            idx[static_cast<std::size_t>(depth)] = next;
            prefix[static_cast<std::size_t>(depth)] = combine(prefix[static_cast<std::size_t>(depth - 1)], repr[next]);
            self(self, depth + 1);
        }
    };
    recurse(recurse, 1);
}

struct Group {
    KSet sumset;
    std::vector<std::vector<KSet>> multisets; // sorted, each sorted
};

inline std::vector<Group> colliding_groups(const Family& family, int h, const SearchOptions& opts) {
    const std::size_t m = family.size();
    if (m == 0)
        return {};
    if (m > std::numeric_limits<std::uint32_t>::max())
        throw resource_error("family too large");
    const std::uint64_t work = multiset_count(m, h);
    if (work > opts.pair_cap && !opts.allow_large)
        throw resource_error(std::to_string(h) + "-multiset count " + std::to_string(work) + " exceeds cap " +
                             std::to_string(opts.pair_cap));

    Element lo = family[0].min();
    Element hi = family[0].max();
    for (const KSet& s : family) {
        lo = std::min(lo, s.min());
        hi = std::max(hi, s.max());
    }
    const __int128 width = (static_cast<__int128>(hi) - lo) * h;
    const bool use_bits = width < static_cast<__int128>(kBitsetWidth);

    const unsigned workers = std::max(1u, opts.threads);
    std::vector<Shard> shards(workers);
    if (use_bits) {
        std::vector<SumBits> repr(m);
        for (std::size_t i = 0; i < m; ++i)
            for (Element x : family[i])
                repr[i].set(static_cast<std::size_t>(x - lo));
        auto combine = [](const SumBits& acc, const SumBits& member) {
            SumBits out;
            for (std::size_t s = member._Find_first(); s < kBitsetWidth; s = member._Find_next(s))
                out |= acc << s;
            return out;
        };
        auto hash = [](const SumBits& b) { return fingerprint(b); };
        parallel_for(m, workers, [&](unsigned w, std::size_t lead) {
            enumerate_leading(static_cast<std::uint32_t>(lead), h, repr, combine, hash, shards[w]);
        });
    } else {
        auto combine = [](const KSet& acc, const KSet& member) { return sumset(acc, member); };
        auto hash = [](const KSet& s) { return fingerprint(s); };
        parallel_for(m, workers, [&](unsigned w, std::size_t lead) {
            enumerate_leading(static_cast<std::uint32_t>(lead), h, family.members(), combine, hash, shards[w]);
        });
    }

    struct Ref {
        std::uint64_t fp;
        std::uint32_t shard;
        std::uint64_t pos;
    };
    std::vector<Ref> refs;
    std::size_t total = 0;
    for (const Shard& s : shards)
        total += s.fps.size();
    refs.reserve(total);
    for (std::uint32_t w = 0; w < shards.size(); ++w)
        for (std::uint64_t i = 0; i < shards[w].fps.size(); ++i)
            refs.push_back({shards[w].fps[i], w, i});
    std::sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) {
        return std::tie(a.fp, a.shard, a.pos) < std::tie(b.fp, b.shard, b.pos);
    });

    std::vector<Group> groups;
    for (std::size_t begin = 0; begin < refs.size();) {
        std::size_t end = begin + 1;
        while (end < refs.size() && refs[end].fp == refs[begin].fp)
            ++end;
        if (end - begin >= 2) {
            std::vector<std::pair<KSet, std::vector<KSet>>> exact;
            for (std::size_t r = begin; r < end; ++r) {
                const Shard& shard = shards[refs[r].shard];
                std::vector<KSet> members;
                for (int j = 0; j < h; ++j)
                    members.push_back(family[shard.idx[refs[r].pos * static_cast<std::size_t>(h) + static_cast<std::size_t>(j)]]);
                std::sort(members.begin(), members.end());
                KSet total_sum = fold_sumset(members);
                exact.emplace_back(std::move(total_sum), std::move(members));
            }
            std::sort(exact.begin(), exact.end());
            for (std::size_t a = 0; a < exact.size();) {
                std::size_t b = a + 1;
                while (b < exact.size() && exact[b].first == exact[a].first)
                    ++b;
                if (b - a >= 2) {
                    Group g{exact[a].first, {}};
                    for (std::size_t i = a; i < b; ++i)
                        g.multisets.push_back(std::move(exact[i].second));
                    groups.push_back(std::move(g));
                }
                a = b;
            }
        }
        begin = end;
    }
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.sumset < b.sumset; });
    return groups;
}

} // namespace detail

// Every nontrivial additive 2h-tuple of F, in canonical order (by common
// sumset, then left, then right), truncated to opts.limit if given.
inline std::vector<AdditiveTuple> find_nontrivial_h_tuples(const Family& family, int h, const SearchOptions& opts = {}) {
    if (h < 1)
        throw std::invalid_argument("h must be at least 1");
    std::vector<AdditiveTuple> out;
    if (h == 1)
        return out;
    for (const detail::Group& g : detail::colliding_groups(family, h, opts))
        for (std::size_t i = 0; i < g.multisets.size(); ++i)
            for (std::size_t j = i + 1; j < g.multisets.size(); ++j) {
                if (opts.limit && out.size() >= *opts.limit)
                    return out;
                out.push_back({g.multisets[i], g.multisets[j], g.sumset});
            }
    return out;
}

inline std::vector<AdditiveTuple> find_nontrivial_quadruples(const Family& family, const SearchOptions& opts = {}) {
    return find_nontrivial_h_tuples(family, 2, opts);
}

inline bool is_b_h_system(const Family& family, int h, SearchOptions opts = {}) {
    opts.limit = 1;
    return find_nontrivial_h_tuples(family, h, opts).empty();
}

inline bool is_sidon_system(const Family& family, const SearchOptions& opts = {}) {
    return is_b_h_system(family, 2, opts);
}

// All k-subsets of {0..n} containing 0, as one family.
inline Family normalized_family(int n, int k) { return Family(normalized_classes(n, k)); }

// Nontrivial quadruples among equal-minimum (normalized) k-sets in {0..n}.
inline std::vector<AdditiveTuple> find_same_min_quadruples(int n, int k, const SearchOptions& opts = {}) {
    if (n < 0 || k < 1)
        throw domain_error("find_same_min_quadruples needs n >= 0 and k >= 1");
    const std::uint64_t classes = binomial_saturating(n, k - 1);
    if (classes > opts.pair_cap && !opts.allow_large)
        throw resource_error("class count " + std::to_string(classes) + " exceeds cap");
    return find_nontrivial_quadruples(normalized_family(n, k), opts);
}

// binomial(n-1, k-1) + n - k: no Sidon system of k-subsets of [n] is larger.
inline std::uint64_t upper_bound(std::int64_t n, std::int64_t k) {
    if (k < 1 || n <= k)
        throw domain_error("upper_bound needs n > k >= 1 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    return binomial(n - 1, k - 1) + static_cast<std::uint64_t>(n - k);
}

} // namespace sidonkit
