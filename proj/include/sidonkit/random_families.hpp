#pragma once

// Random families binomial([n], k)_p and the two computable certificates
// around the delta-additivity threshold:
//   one_cert:  delta |A| > binomial(n-1, k-1) + n - k, so every delta-fraction
//              subfamily has a nontrivial additive quadruple;
//   zero_cert: one translate per represented B_ell class already gives a
//              B_h-system of size >= delta |A|.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "certify.hpp"
#include "combinatorics.hpp"
#include "errors.hpp"
#include "groundset.hpp"
#include "parallel.hpp"
#include "systems.hpp"

namespace sidonkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed for one trial.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632be59bd9b4e019ULL));
}

// Exact sample of binomial([n], k)_p: the size is Binomial(binomial(n,k), p),
// the members a uniform subset of that size, unranked lexicographically.
inline Family sample_family(int n, int k, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("sample_family needs 0 <= p <= 1");
    if (k < 1 || n < k || p == 0.0)
        return Family();
    const std::uint64_t total = binomial(n, k);
    std::mt19937_64 rng(seed);
    std::uint64_t m = total;
    if (p < 1.0)
        m = std::binomial_distribution<std::uint64_t>(total, p)(rng);

    std::vector<std::uint64_t> ranks;
    ranks.reserve(m);
    if (m == total) {
        for (std::uint64_t r = 0; r < total; ++r)
            ranks.push_back(r);
    } else {
        // Floyd's algorithm: uniform m-subset of [0, total)
        std::unordered_set<std::uint64_t> picked;
        picked.reserve(m * 2);
        for (std::uint64_t j = total - m; j < total; ++j) {
            const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
            if (!picked.insert(t).second)
                picked.insert(j);
        }
        ranks.assign(picked.begin(), picked.end());
        std::sort(ranks.begin(), ranks.end());
    }
    std::vector<KSet> members;
    members.reserve(ranks.size());
    std::vector<Element> elems(static_cast<std::size_t>(k));
    for (std::uint64_t r : ranks) {
        const std::vector<int> idx = unrank_combination(n, k, r);
        for (std::size_t i = 0; i < idx.size(); ++i)
            elems[i] = idx[i] + 1;
        members.emplace_back(elems);
    }
    return Family(std::move(members));
}

// delta |F| > upper_bound(n, k). n defaults to the largest element present.
inline bool one_statement_certificate(const Family& family, double delta, std::optional<int> n = std::nullopt) {
    if (family.empty())
        return false;
    const auto k = family.uniform_cardinality();
    if (!k)
        throw std::invalid_argument("one_statement_certificate needs a uniform family");
    std::int64_t ground = 0;
    if (n) {
        ground = *n;
    } else {
        for (const KSet& s : family)
            ground = std::max<std::int64_t>(ground, s.max());
    }
    if (ground <= static_cast<std::int64_t>(*k))
        return false;
    return delta * static_cast<double>(family.size()) > static_cast<double>(upper_bound(ground, static_cast<std::int64_t>(*k)));
}

struct ExtractionStats {
    std::uint64_t family_size = 0;
    std::uint64_t represented_classes = 0;
    std::uint64_t bad_classes = 0;
    std::uint64_t extracted_size = 0;
};

struct Extraction {
    Family subfamily;
    ExtractionStats stats;
};

// One member (the lexicographically smallest) per represented normalized class
// that is a B_ell-set, ell = ell(k, h).
inline Extraction zero_statement_extraction(const Family& family, int k, int h) {
    Extraction out;
    out.stats.family_size = family.size();
    if (family.empty())
        return out;
    if (family.uniform_cardinality() != static_cast<std::size_t>(k))
        throw std::invalid_argument("zero_statement_extraction needs every member to have cardinality k");
    const std::uint64_t ell_value = ell(k, h).ell;
    std::map<KSet, KSet> first_member; // normalized representative -> smallest member
    for (const KSet& s : family) {
        const KSet rep = normalize(s).representative();
        auto it = first_member.find(rep);
        if (it == first_member.end())
            first_member.emplace(rep, s);
        else if (s < it->second)
            it->second = s;
    }
    out.stats.represented_classes = first_member.size();
    std::vector<KSet> kept;
    for (const auto& [rep, member] : first_member) {
        if (is_b_h_fast(rep, static_cast<int>(ell_value)))
            kept.push_back(member);
        else
            ++out.stats.bad_classes;
    }
    std::sort(kept.begin(), kept.end());
    out.stats.extracted_size = kept.size();
    out.subfamily = Family(std::move(kept));
    return out;
}

struct ExpectationBracket {
    double lower = 0;
    double exact = 0;
    double upper = 0;
};

// Expected number X of normalized classes with a translate in binomial([n], k)_p.
// A class with maximum m has n - m translates inside [n].
inline ExpectationBracket expectation_X(int n, int k, double p) {
    if (k < 2 || n <= k)
        throw domain_error("expectation_X needs n > k >= 2");
    if (!(p >= 0.0 && p <= 1.0))
        throw domain_error("expectation_X needs 0 <= p <= 1");
    const double q = 1.0 - p;
    double exact = 0.0;
    double q_pow = 1.0;
    u128 second_order = 0; // sum of binomial(m-1, k-2) * binomial(n-m, 2)
    for (int m = n - 1; m >= k - 1; --m) {
        q_pow *= q; // q^(n-m)
        const u128 classes = binomial_wide(m - 1, k - 2);
        exact += static_cast<double>(classes) * (1.0 - q_pow);
        second_order += classes * binomial_wide(n - m, 2);
    }
    const u128 first_plus = static_cast<u128>(n) * binomial_wide(n - 1, k - 1);
    const u128 first_minus = static_cast<u128>(k - 1) * binomial_wide(n, k);
    const double first_order = static_cast<double>(first_plus - first_minus);
    ExpectationBracket out;
    out.exact = exact;
    out.upper = p * first_order;
    out.lower = out.upper - p * p * static_cast<double>(second_order);
    return out;
}

// 2 max(e^{-lambda^2/4}, e^{-lambda sigma/2})
inline double chernoff_tail(double lambda, double sigma) {
    return 2.0 * std::max(std::exp(-lambda * lambda / 4.0), std::exp(-lambda * sigma / 2.0));
}

// 2 e^{-min(eps^2/4, eps/2) mean}
inline double chernoff_weak(double eps, double mean) {
    return 2.0 * std::exp(-std::min(eps * eps / 4.0, eps / 2.0) * mean);
}

// p = c/n with c = (1 + gamma) k / delta (4 instead of k when k = 2) puts the
// family above the one-statement threshold; p = C/n with C = (1 - delta)(k + 1)
// below the zero-statement one.
struct ThresholdConstants {
    double one_statement = 0;
    double zero_statement = 0;
};

inline ThresholdConstants threshold_constants(int k, double delta, double gamma) {
    const double lead = k == 2 ? 4.0 : static_cast<double>(k);
    return {(1.0 + gamma) * lead / delta, (1.0 - delta) * (k + 1)};
}

struct ExperimentConfig {
    int n = 0;
    int k = 2;
    int h = 2;
    double delta = 0.5;
    double p = 0.0;
    double gamma = 0.1;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::uint64_t verify_cap = default_pair_cap();
    unsigned threads = 1;

    void validate() const {
        if (k < 2 || n <= k)
            throw domain_error("experiment needs n > k >= 2");
        if (h < 2)
            throw domain_error("experiment needs h >= 2");
        if (!(delta > 0.0 && delta < 1.0))
            throw domain_error("delta must lie in (0, 1)");
        if (!(p >= 0.0 && p <= 1.0))
            throw domain_error("p must lie in [0, 1]");
        if (!(gamma > 0.0))
            throw domain_error("gamma must be positive");
    }
};

enum class Verification { pass, fail, skipped };

inline const char* to_string(Verification v) {
    switch (v) {
    case Verification::pass: return "pass";
    case Verification::fail: return "fail";
    case Verification::skipped: return "skipped";
    }
    return "?";
}

struct ExperimentRecord {
    std::uint64_t trial = 0;
    int n = 0;
    int k = 0;
    int h = 0;
    double p = 0;
    double delta = 0;
    std::uint64_t family_size = 0;
    std::uint64_t represented_classes = 0;
    std::uint64_t bad_classes = 0;
    std::uint64_t extracted_size = 0;
    bool zero_cert = false;
    bool one_cert = false;
    Verification verified = Verification::skipped;
};

inline ExperimentRecord run_trial(const ExperimentConfig& config, std::uint64_t trial) {
    const Family family = sample_family(config.n, config.k, config.p, trial_seed(config.seed, trial));
    const Extraction extraction = zero_statement_extraction(family, config.k, config.h);

    ExperimentRecord rec;
    rec.trial = trial;
    rec.n = config.n;
    rec.k = config.k;
    rec.h = config.h;
    rec.p = config.p;
    rec.delta = config.delta;
    rec.family_size = extraction.stats.family_size;
    rec.represented_classes = extraction.stats.represented_classes;
    rec.bad_classes = extraction.stats.bad_classes;
    rec.extracted_size = extraction.stats.extracted_size;
    rec.zero_cert = static_cast<double>(rec.extracted_size) >= config.delta * static_cast<double>(rec.family_size);
    rec.one_cert = one_statement_certificate(family, config.delta, config.n);
    if (multiset_count(extraction.subfamily.size(), config.h) <= config.verify_cap) {
        SearchOptions opts;
        opts.allow_large = true;
        rec.verified = is_b_h_system(extraction.subfamily, config.h, opts) ? Verification::pass : Verification::fail;
    }
    return rec;
}

// Records in trial order; identical for any thread count.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
    config.validate();
    std::vector<ExperimentRecord> records(config.trials);
    parallel_for(config.trials, config.threads,
                 [&](unsigned, std::size_t t) { records[t] = run_trial(config, t); });
    return records;
}

// Shortest fixed-notation decimal that round-trips.
inline std::string format_double(double v) {
    std::array<char, 512> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    return std::string(buf.data(), ptr);
}

inline constexpr const char* kCsvHeader =
    "trial,n,k,h,p,delta,family_size,represented_classes,bad_classes,extracted_size,zero_cert,one_cert,verified";

inline void write_csv_row(std::ostream& out, const ExperimentRecord& r) {
    out << r.trial << ',' << r.n << ',' << r.k << ',' << r.h << ',' << format_double(r.p) << ','
        << format_double(r.delta) << ',' << r.family_size << ',' << r.represented_classes << ',' << r.bad_classes << ','
        << r.extracted_size << ',' << (r.zero_cert ? "true" : "false") << ',' << (r.one_cert ? "true" : "false") << ','
        << to_string(r.verified) << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << kCsvHeader << '\n';
    for (const ExperimentRecord& r : records)
        write_csv_row(out, r);
}

} // namespace sidonkit
