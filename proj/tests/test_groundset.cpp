#include <gtest/gtest.h>

#include <limits>

#include "oracles.hpp"

using namespace sidonkit;

TEST(KSet, RejectsUnsortedAndEmpty) {
    EXPECT_THROW(KSet({2, 1}), std::invalid_argument);
    EXPECT_THROW(KSet({1, 1}), std::invalid_argument);
    EXPECT_THROW(KSet(std::vector<Element>{}), std::invalid_argument);
    EXPECT_EQ(KSet::from_unsorted({3, 1, 3, 2}), KSet({1, 2, 3}));
}

TEST(KSet, DerivedQuantities) {
    const KSet a{-4, 0, 9};
    EXPECT_EQ(a.min(), -4);
    EXPECT_EQ(a.max(), 9);
    EXPECT_EQ(a.size(), 3u);
    EXPECT_TRUE(a.contains(0));
    EXPECT_FALSE(a.contains(1));
    EXPECT_EQ(a.to_string(), "-4,0,9");
}

TEST(Sumset, Examples) {
    EXPECT_EQ(sumset({0, 1}, {0, 2}), KSet({0, 1, 2, 3}));
    EXPECT_EQ(sumset({0}, {3, 7, 9}), KSet({3, 7, 9}));
    EXPECT_EQ(sumset({0, 1}, {2, 4}), KSet({2, 3, 4, 5}));
}

TEST(Sumset, HFold) {
    EXPECT_EQ(h_fold_sumset({0, 1, 3}, 1), KSet({0, 1, 3}));
    EXPECT_EQ(h_fold_sumset({0, 1, 3}, 2), KSet({0, 1, 2, 3, 4, 6}));
    EXPECT_EQ(h_fold_sumset({0, 1}, 3), KSet({0, 1, 2, 3}));
    EXPECT_THROW(h_fold_sumset({0, 1}, 0), std::invalid_argument);
}

TEST(Sumset, OverflowIsAnError) {
    const Element big = std::numeric_limits<Element>::max() - 1;
    EXPECT_THROW(sumset({0, big}, {0, 5}), sidonkit::overflow_error);
    EXPECT_THROW(translate({big}, 10), sidonkit::overflow_error);
}

TEST(Sumset, AlgebraMatchesNaive) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto f = oracle::random_family(rng, 1 + trial % 4, 25, 3);
        if (f.size() < 3)
            continue;
        const KSet &a = f[0], &b = f[1], &c = f[2];
        const KSet ab = sumset(a, b);
        EXPECT_EQ(ab, oracle::naive_sumset(a, b));
        EXPECT_EQ(ab, sumset(b, a));
        EXPECT_EQ(sumset(ab, c), sumset(a, sumset(b, c)));
        EXPECT_GE(ab.size(), std::max(a.size(), b.size()));
        EXPECT_LE(ab.size(), a.size() * b.size());
        EXPECT_EQ(ab.min(), a.min() + b.min());
        EXPECT_EQ(ab.max(), a.max() + b.max());
        EXPECT_EQ(sumset(translate(a, 5), translate(b, -8)), translate(ab, -3));
    }
}

TEST(Normalize, Examples) {
    EXPECT_EQ(translate({1, 4}, -1), KSet({0, 3}));
    EXPECT_EQ(normalize({5, 7, 11}).representative(), KSet({0, 2, 6}));
    EXPECT_EQ(normalize({0, 2, 6}).representative(), KSet({0, 2, 6}));
    EXPECT_EQ(normalize(translate({3, 8, 20}, 17)), normalize({3, 8, 20}));
    EXPECT_THROW(NormalizedClass(KSet{1, 2}), std::invalid_argument);
}

TEST(Intersection, Basics) {
    EXPECT_EQ(intersection({0, 1, 5}, {1, 5, 7}), KSet({1, 5}));
    EXPECT_EQ(intersection_size({0, 1}, {2, 3}), 0u);
}

TEST(Bh, Examples) {
    EXPECT_TRUE(is_b_h({0, 1, 3}, 2));
    auto w = find_b_h_violation({0, 1, 2}, 2);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->left, (std::vector<Element>{0, 2}));
    EXPECT_EQ(w->right, (std::vector<Element>{1, 1}));
    w = find_b_h_violation({0, 1, 3}, 4);
    ASSERT_TRUE(w);
    Element l = 0, r = 0;
    for (Element x : w->left)
        l += x;
    for (Element x : w->right)
        r += x;
    EXPECT_EQ(l, r);
    EXPECT_NE(w->left, w->right);
    EXPECT_FALSE(is_b_h({0, 1, 3}, 4));
    EXPECT_TRUE(is_b_h({0, 1, 9}, 8));
    EXPECT_TRUE(is_b_h({0, 1, 2}, 1));
}

TEST(Bh, ImplementationsAgreeWithOracle) {
    for (int n = 1; n <= 12; ++n)
        for (int k = 2; k <= 3; ++k)
            for (const KSet& s : normalized_classes(n, k))
                for (int h : {2, 3, 4, 8}) {
                    const bool expected = oracle::is_b_h(s, h);
                    ASSERT_EQ(is_b_h(s, h), expected) << s.to_string() << " h=" << h;
                    ASSERT_EQ(is_b_h_fast(s, h), expected) << s.to_string() << " h=" << h;
                    ASSERT_EQ(detail::is_b_h_sorted_scan(s, h), expected);
                    ASSERT_EQ(detail::is_b_h_counting(s, h), expected);
                }
}

TEST(Bh, WideSpanUsesScan) {
    const KSet s{0, 1, 1'000'000'000};
    EXPECT_TRUE(is_b_h_fast(s, 8));
    EXPECT_EQ(is_b_h_fast({0, 2, 4'000'000}, 3), is_b_h({0, 2, 4'000'000}, 3));
}

TEST(Bh, Monotone) {
    for (const KSet& s : normalized_classes(12, 3))
        for (int h = 2; h <= 4; ++h)
            if (is_b_h(s, h))
                for (int lower = 1; lower < h; ++lower)
                    EXPECT_TRUE(is_b_h(s, lower)) << s.to_string();
}

TEST(Bh, TranslationAndDilationInvariant) {
    for (const KSet& s : normalized_classes(12, 3))
        for (int h : {2, 3, 4}) {
            const bool base = is_b_h_fast(s, h);
            EXPECT_EQ(is_b_h_fast(translate(s, -7), h), base);
            std::vector<Element> scaled;
            for (Element x : s)
                scaled.push_back(3 * x);
            EXPECT_EQ(is_b_h_fast(KSet(scaled), h), base);
        }
}

TEST(NormalizedClasses, CountAndShape) {
    for (int n = 2; n <= 10; ++n)
        for (int k = 1; k <= 4; ++k) {
            const auto classes = normalized_classes(n, k);
            EXPECT_EQ(classes.size(), oracle::choose(n, k - 1));
            for (const KSet& c : classes) {
                EXPECT_EQ(c.min(), 0);
                EXPECT_LE(c.max(), n);
                EXPECT_EQ(c.size(), static_cast<std::size_t>(k));
            }
            EXPECT_TRUE(std::is_sorted(classes.begin(), classes.end()));
        }
}

TEST(Combinatorics, Binomials) {
    EXPECT_EQ(binomial(10, 3), 120u);
    EXPECT_EQ(binomial(3, 5), 0u);
    EXPECT_EQ(binomial(64, 32), 1832624140942590534ULL);
    EXPECT_THROW(binomial(100, 50), sidonkit::overflow_error);
    EXPECT_EQ(binomial_saturating(100, 50), std::numeric_limits<std::uint64_t>::max());
    for (std::uint64_t r = 0; r < binomial(7, 3); ++r) {
        const auto idx = unrank_combination(7, 3, r);
        std::uint64_t seen = 0;
        std::vector<int> match;
        for_each_combination(7, 3, [&](std::span<const int> c) {
            if (seen++ == r)
                match.assign(c.begin(), c.end());
        });
        EXPECT_EQ(idx, match);
    }
}
