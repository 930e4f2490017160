#pragma once

// Large B_h-systems from normalized classes: keep every k-subset of {0..n}
// containing 0 that is a B_ell-set, ell = ell(k, h).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "certify.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "groundset.hpp"
#include "parallel.hpp"
#include "systems.hpp"

namespace sidonkit {

struct ConstructStats {
    int n = 0;
    int k = 0;
    int h = 0;
    std::uint64_t ell = 0;
    std::uint64_t classes = 0;
    std::uint64_t kept = 0;
    std::uint64_t removed = 0;

    // n,k,h,ell,classes,kept,removed
    std::string csv_line() const {
        return std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(h) + "," + std::to_string(ell) + "," +
               std::to_string(classes) + "," + std::to_string(kept) + "," + std::to_string(removed);
    }
};

struct Construction {
    Family family;
    ConstructStats stats;
};

namespace detail {

inline void check_construct_domain(int n, int k) {
    if (k < 2 || n <= k)
        throw domain_error("needs n > k >= 2 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
}

// Per-class B_ell verdicts in lexicographic class order.
inline std::vector<char> b_ell_flags(const std::vector<KSet>& classes, std::uint64_t ell, unsigned threads) {
    std::vector<char> keep(classes.size(), 0);
    parallel_for(classes.size(), threads, [&](unsigned, std::size_t i) {
        keep[i] = is_b_h_fast(classes[i], static_cast<int>(ell)) ? 1 : 0;
    });
    return keep;
}

} // namespace detail

inline Construction construct_normalized_with_stats(int n, int k, int h, unsigned threads = 1) {
    detail::check_construct_domain(n, k);
    if (h < 2)
        throw domain_error("construct_normalized needs h >= 2");
    const EllParameters params = ell(k, h);
    std::vector<KSet> classes = normalized_classes(n, k);
    const std::vector<char> keep = detail::b_ell_flags(classes, params.ell, threads);

    Construction out;
    out.stats = {n, k, h, params.ell, classes.size(), 0, 0};
    std::vector<KSet> kept;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (keep[i])
            kept.push_back(std::move(classes[i]));
    out.stats.kept = kept.size();
    out.stats.removed = out.stats.classes - out.stats.kept;
    out.family = Family(std::move(kept));
    return out;
}

inline Family construct_normalized(int n, int k, int h, unsigned threads = 1) {
    return construct_normalized_with_stats(n, k, h, threads).family;
}

// Normalized k-subsets of {0..n} that are not B_ell-sets.
inline std::uint64_t count_non_b_ell(int n, int k, std::uint64_t ell_value, unsigned threads = 1) {
    detail::check_construct_domain(n, k);
    if (ell_value < 2)
        throw domain_error("count_non_b_ell needs ell >= 2");
    const std::vector<KSet> classes = normalized_classes(n, k);
    const std::vector<char> keep = detail::b_ell_flags(classes, ell_value, threads);
    std::uint64_t bad = 0;
    for (char c : keep)
        bad += c ? 0 : 1;
    return bad;
}

struct K2FamilyReport {
    int n = 0;
    std::vector<KSet> raw;    // raw[i-1] = {1, n-i} + {0, i}
    Family family;            // distinct members, first occurrence order
    std::vector<std::pair<KSet, std::vector<int>>> duplicates; // set -> every i producing it
    std::size_t distinct = 0;
    bool sidon = false;
    std::vector<AdditiveTuple> quadruples; // first few, canonical order
};

// Evaluates {{1, n-i} + {0, i} : i = 1..n-1} literally and checks it.
inline K2FamilyReport k2_paper_family(int n, std::size_t witness_limit = 5) {
    if (n < 3)
        throw domain_error("k2_paper_family needs n >= 3");
    K2FamilyReport report;
    report.n = n;
    std::map<KSet, std::vector<int>> sources;
    std::vector<KSet> distinct;
    for (int i = 1; i <= n - 1; ++i) {
        KSet member = sumset(KSet::from_unsorted({1, n - i}), KSet::from_unsorted({0, i}));
        auto& where = sources[member];
        if (where.empty())
            distinct.push_back(member);
        where.push_back(i);
        report.raw.push_back(std::move(member));
    }
    for (auto& [set, where] : sources)
        if (where.size() > 1)
            report.duplicates.emplace_back(set, where);
    report.distinct = distinct.size();
    report.family = Family(std::move(distinct));
    SearchOptions opts;
    opts.limit = witness_limit;
    report.quadruples = find_nontrivial_quadruples(report.family, opts);
    report.sidon = report.quadruples.empty();
    return report;
}

} // namespace sidonkit
