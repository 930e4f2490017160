#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace sidonkit;

TEST(Ell, Values) {
    EXPECT_EQ(ell(2, 2).ell, 4u);
    EXPECT_EQ(ell(3, 2).ell, 8u);
    EXPECT_EQ(ell(5, 2).ell, 8u);
    EXPECT_EQ(ell(6, 2).ell, 16u);
    EXPECT_EQ(ell(3, 3).ell, 16u);
    EXPECT_EQ(ell(3, 3).j_sequence, (std::vector<std::uint64_t>{2, 3, 6, 21}));
    EXPECT_EQ(ell(3, 2).j_sequence, (std::vector<std::uint64_t>{2, 3, 6}));
    EXPECT_EQ(ell(3, 3).i0, 3);
    EXPECT_EQ(ell(1, 2).ell, 2u);
    EXPECT_THROW(ell(0, 2), sidonkit::domain_error);
    EXPECT_THROW(ell(3, 1), sidonkit::domain_error);
}

TEST(Ell, RecursionInvariants) {
    for (int k = 1; k <= 40; ++k)
        for (int h = 2; h <= 4; ++h) {
            const EllParameters p = ell(k, h);
            std::uint64_t target = 1;
            for (int i = 1; i < h; ++i)
                target *= static_cast<std::uint64_t>(k);
            ASSERT_EQ(p.j_sequence.front(), 2u);
            for (std::size_t i = 1; i < p.j_sequence.size(); ++i)
                ASSERT_EQ(p.j_sequence[i], oracle::choose(1 + p.j_sequence[i - 1], 2));
            ASSERT_GT(p.j_sequence.back(), target);
            for (std::size_t i = 0; i + 1 < p.j_sequence.size(); ++i)
                ASSERT_LE(p.j_sequence[i], target);
            ASSERT_EQ(p.ell, std::uint64_t{1} << (p.i0 + 1));
        }
}

TEST(Ell, Monotone) {
    for (int k = 1; k < 60; ++k)
        EXPECT_LE(ell(k, 2).ell, ell(k + 1, 2).ell);
    for (int k = 1; k < 10; ++k)
        for (int h = 2; h < 5; ++h)
            EXPECT_LE(ell(k, h).ell, ell(k, h + 1).ell);
}

TEST(Lemma, Verdicts) {
    // A = {0,1,4,9} Sidon, X = {0,1}, C = {0}
    EXPECT_EQ(lemma_implication_check({0, 1, 4, 9}, {0, 1}, {0}, {0}).verdict, LemmaVerdict::holds);
    EXPECT_EQ(lemma_implication_check({0, 1, 2}, {0, 1}, {0}, {0}).verdict, LemmaVerdict::vacuous);
    EXPECT_EQ(lemma_implication_check({0, 1, 4}, {0, 5}, {0}, {0}).verdict, LemmaVerdict::vacuous);
    EXPECT_EQ(lemma_implication_check({0, 1, 4}, {0}, {0}, {0}).verdict, LemmaVerdict::vacuous);
    EXPECT_EQ(lemma_implication_check({0, 1, 4}, {0, 1}, {7}, {0}).verdict, LemmaVerdict::vacuous);
}

TEST(Lemma, NoCounterexamplesOnRandomInstances) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> elem(0, 50);
    int decided = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<Element> a;
        for (int attempt = 0; attempt < 30; ++attempt) {
            const Element x = elem(rng);
            if (std::find(a.begin(), a.end(), x) != a.end())
                continue;
            a.push_back(x);
            std::sort(a.begin(), a.end());
            if (!is_b_h(KSet(a), 2))
                a.erase(std::find(a.begin(), a.end(), x));
        }
        const KSet aset(a);
        std::vector<Element> x(a);
        std::shuffle(x.begin(), x.end(), rng);
        x.resize(std::max<std::size_t>(2, x.size() / 2));
        const KSet xset = KSet::from_unsorted(x);
        std::vector<Element> c;
        while (c.size() + 1 < xset.size() && c.size() < 4)
            c.push_back(elem(rng));
        const KSet cset = KSet::from_unsorted(c.empty() ? std::vector<Element>{elem(rng)} : c);
        std::vector<Element> b(cset.begin(), cset.end());
        if (trial % 2)
            b.push_back(elem(rng));
        const LemmaCheck check = lemma_implication_check(aset, xset, KSet::from_unsorted(b), cset);
        ASSERT_NE(check.verdict, LemmaVerdict::counterexample) << aset.to_string();
        decided += check.verdict == LemmaVerdict::holds;
    }
    EXPECT_GT(decided, 100);
}

TEST(Trace, SpecExamples) {
    TraceReport r = structural_trace({0, 1, 9}, {0, 2, 9}, {0, 1, 9}, {0, 2, 9});
    EXPECT_EQ(r.verdict, TraceVerdict::pairs_equal);
    EXPECT_EQ(r.ell, 8u);
    EXPECT_FALSE(r.detail.empty());
    EXPECT_EQ(r.swap_record, "(A,C)");

    r = structural_trace({0, 1, 9}, {0, 2, 9}, {0, 2, 9}, {0, 1, 9});
    EXPECT_EQ(r.verdict, TraceVerdict::pairs_equal);
    EXPECT_EQ(r.swap_record, "(A,D)");

    r = structural_trace({0, 1, 2}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2});
    EXPECT_EQ(r.verdict, TraceVerdict::precondition_failed);
}

TEST(Trace, IntersectionsMeetRecursion) {
    const TraceReport r = structural_trace({0, 1, 9}, {0, 2, 9}, {0, 1, 9}, {0, 2, 9});
    const EllParameters p = ell(3, 2);
    ASSERT_EQ(r.intersection_sizes.size(), p.j_sequence.size());
    for (std::size_t i = 0; i < r.intersection_sizes.size(); ++i)
        EXPECT_GE(r.intersection_sizes[i], p.j_sequence[i]);
    EXPECT_EQ(r.iterate_cardinalities.size(), r.intersection_sizes.size());
}

TEST(Trace, OtherPreconditions) {
    EXPECT_EQ(structural_trace({0, 1, 9}, {0, 2, 9}, {0, 1}, {0, 2, 9}).verdict, TraceVerdict::precondition_failed);
    EXPECT_EQ(structural_trace({0, 1, 9}, {1, 2, 9}, {0, 1, 9}, {1, 2, 9}).verdict, TraceVerdict::precondition_failed);
    EXPECT_EQ(structural_trace({0, 1, 9}, {0, 2, 9}, {0, 1, 9}, {0, 3, 9}).verdict, TraceVerdict::precondition_failed);
}

// The argument's intermediate claim that A_1 = X_0 + A_0 stays B_{ell/2} fails
// as soon as |X_0| >= 2; the trace records it as a gap, not a violation.
TEST(Trace, StepClaimsAreLoggedAsGaps) {
    const TraceReport r = structural_trace({0, 1, 9}, {0, 2, 9}, {0, 1, 9}, {0, 2, 9});
    EXPECT_EQ(r.verdict, TraceVerdict::pairs_equal);
    EXPECT_FALSE(r.step_gaps.empty());
    EXPECT_FALSE(is_b_h(sumset({0, 1, 9}, {0, 1, 9}), 2));
}

TEST(Trace, NeverViolatesOnSidonSweepInputs) {
    // every same-min quadruple among B_8 classes would be a violation; there are none
    for (int n = 3; n <= 14; ++n) {
        const Family all = normalized_family(n, 3);
        std::vector<KSet> good;
        for (const KSet& s : all)
            if (is_b_h(s, 8))
                good.push_back(s);
        for (const AdditiveTuple& t : oracle::quadruples(Family(good))) {
            const TraceReport r = structural_trace(t.left, t.right);
            ASSERT_NE(r.verdict, TraceVerdict::theorem_violation);
        }
        for (const KSet& a : good)
            for (const KSet& b : good) {
                const TraceReport r = structural_trace(a, b, b, a);
                ASSERT_EQ(r.verdict, TraceVerdict::pairs_equal);
            }
    }
}

TEST(Trace, HigherFoldInputs) {
    const KSet a{0, 1, 17}, b{0, 2, 17};
    ASSERT_TRUE(oracle::is_b_h(a, 16));
    ASSERT_TRUE(oracle::is_b_h(b, 16));
    const std::vector<KSet> left{a, b, a}, right{a, a, b};
    const TraceReport r = structural_trace(left, right);
    EXPECT_EQ(r.ell, 16u);
    EXPECT_EQ(r.verdict, TraceVerdict::pairs_equal);
}

// {0,2,17} + {0,2,19} + {0,6,19} = {0,2,19} + {0,4,17} + {0,4,19}: all B_16,
// same minimum, different multisets. The h=3 statement fails here.
TEST(Trace, HigherFoldCounterexampleIsReported) {
    const std::vector<KSet> left{{0, 2, 17}, {0, 2, 19}, {0, 6, 19}};
    const std::vector<KSet> right{{0, 2, 19}, {0, 4, 17}, {0, 4, 19}};
    for (const KSet& s : left)
        ASSERT_TRUE(oracle::is_b_h(s, 16));
    for (const KSet& s : right)
        ASSERT_TRUE(oracle::is_b_h(s, 16));
    ASSERT_EQ(fold_sumset(left), fold_sumset(right));
    const TraceReport r = structural_trace(left, right);
    EXPECT_EQ(r.verdict, TraceVerdict::theorem_violation);
    EXPECT_FALSE(r.step_gaps.empty());
}

TEST(Trace, PairOfTwoSetsHigherFoldSmallest) {
    const std::vector<KSet> left{{0, 1}, {0, 1}, {0, 3}};
    const std::vector<KSet> right{{0, 1}, {0, 2}, {0, 2}};
    EXPECT_EQ(structural_trace(left, right).verdict, TraceVerdict::theorem_violation);
}

TEST(Trace, Labels) {
    EXPECT_EQ(to_string(TraceVerdict::pairs_equal), std::string("pairs-equal"));
    EXPECT_EQ(to_string(TraceVerdict::precondition_failed), std::string("precondition-failed"));
    EXPECT_EQ(to_string(TraceVerdict::theorem_violation), std::string("theorem-violation"));
}
