#pragma once

// The structural argument made checkable: the B_ell exponent recursion, the
// Sidon-set containment lemma, and a step-by-step replay of the proof that
// equal-minimum B_ell k-sets with equal (h-fold) sumsets coincide as multisets.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "groundset.hpp"

namespace sidonkit {

struct EllParameters {
    int k = 0;
    int h = 0;
    std::vector<std::uint64_t> j_sequence; // j_0, ..., j_{i0}
    int i0 = 0;
    std::uint64_t ell = 0; // 2^(i0 + 1)
};

// j_0 = 2, j_i = binomial(1 + j_{i-1}, 2); i0 is the first index with
// j_i > k^(h-1).
inline EllParameters ell(int k, int h) {
    if (k < 1)
        throw domain_error("ell needs k >= 1");
    if (h < 2)
        throw domain_error("ell needs h >= 2");
    std::uint64_t target = 1;
    for (int i = 1; i < h; ++i)
        target = checked_mul(target, static_cast<std::uint64_t>(k));

    EllParameters out;
    out.k = k;
    out.h = h;
    std::uint64_t j = 2;
    out.j_sequence.push_back(j);
    while (j <= target) {
        j = binomial(static_cast<std::int64_t>(j) + 1, 2);
        out.j_sequence.push_back(j);
    }
    out.i0 = static_cast<int>(out.j_sequence.size()) - 1;
    if (out.i0 + 1 >= 63)
        throw overflow_error("ell exponent exceeds 64 bits");
    out.ell = std::uint64_t{1} << (out.i0 + 1);
    return out;
}

enum class LemmaVerdict { holds, vacuous, counterexample };

inline const char* to_string(LemmaVerdict v) {
    switch (v) {
    case LemmaVerdict::holds: return "holds";
    case LemmaVerdict::vacuous: return "vacuous";
    case LemmaVerdict::counterexample: return "counterexample";
    }
    return "?";
}

struct LemmaCheck {
    LemmaVerdict verdict = LemmaVerdict::vacuous;
    std::string reason;
    std::vector<Element> outside; // elements of B not in C on a counterexample
};

// Checks: A Sidon, X a subset of A, |X| > |C|, X + B a subset of A + C
// implies B a subset of C.
inline LemmaCheck lemma_implication_check(const KSet& a, const KSet& x, const KSet& b, const KSet& c) {
    if (!is_b_h(a, 2))
        return {LemmaVerdict::vacuous, "A is not a Sidon set", {}};
    if (!x.is_subset_of(a))
        return {LemmaVerdict::vacuous, "X is not a subset of A", {}};
    if (x.size() <= c.size())
        return {LemmaVerdict::vacuous, "|X| <= |C|", {}};
    if (!sumset(x, b).is_subset_of(sumset(a, c)))
        return {LemmaVerdict::vacuous, "X + B is not a subset of A + C", {}};
    if (b.is_subset_of(c))
        return {LemmaVerdict::holds, "B is a subset of C", {}};
    LemmaCheck out{LemmaVerdict::counterexample, "hypotheses hold but B is not a subset of C", {}};
    std::set_difference(b.begin(), b.end(), c.begin(), c.end(), std::back_inserter(out.outside));
    return out;
}

enum class TraceVerdict { pairs_equal, precondition_failed, theorem_violation };

inline const char* to_string(TraceVerdict v) {
    switch (v) {
    case TraceVerdict::pairs_equal: return "pairs-equal";
    case TraceVerdict::precondition_failed: return "precondition-failed";
    case TraceVerdict::theorem_violation: return "theorem-violation";
    }
    return "?";
}

struct TraceReport {
    std::vector<KSet> left;  // A, B (or A_1..A_h)
    std::vector<KSet> right; // C, D (or B_1..B_h)
    std::uint64_t ell = 0;
    std::string swap_record;
    std::vector<std::size_t> intersection_sizes;                       // |X_0|, |X_1|, ...
    std::vector<std::pair<std::size_t, std::size_t>> iterate_cardinalities; // (|A_i|, |C_i|)
    TraceVerdict verdict = TraceVerdict::precondition_failed;
    std::vector<std::string> detail;
    // step claims of the argument that fail on this input; the verdict only
    // depends on the conclusion
    std::vector<std::string> step_gaps;
};

namespace detail {

inline std::string label(bool is_left, std::size_t index, std::size_t h) {
    if (h == 2)
        return std::string(1, static_cast<char>((is_left ? 'A' : 'C') + index));
    return std::string(is_left ? "L" : "R") + std::to_string(index + 1);
}

inline std::vector<KSet> sorted_copy(std::span<const KSet> sets) {
    std::vector<KSet> out(sets.begin(), sets.end());
    std::sort(out.begin(), out.end());
    return out;
}

class TraceRunner {
public:
    TraceRunner(TraceReport& report, std::string indent) : report_(report), indent_(std::move(indent)) {}

    void log(const std::string& line) { report_.detail.push_back(indent_ + line); }

    // A step claim of the argument that does not hold on this input.
    void gap(const std::string& what) {
        log("GAP: " + what);
        report_.step_gaps.push_back(indent_ + what);
    }

    TraceVerdict precondition(const std::string& why) {
        log("precondition failed: " + why);
        return report_.verdict = TraceVerdict::precondition_failed;
    }

    TraceVerdict conclude(std::span<const KSet> left, std::span<const KSet> right) {
        if (sorted_copy(left) == sorted_copy(right)) {
            log("conclusion holds: the two sides are equal as multisets");
            return report_.verdict = TraceVerdict::pairs_equal;
        }
        log("THEOREM VIOLATION: preconditions hold but the two sides differ as multisets");
        return report_.verdict = TraceVerdict::theorem_violation;
    }

    TraceVerdict run(std::span<const KSet> left, std::span<const KSet> right) {
        const std::size_t h = left.size();
        if (h == 0 || right.size() != h)
            return precondition("both sides need the same positive number of sets");
        const std::size_t k = left.front().size();
        const Element x = left.front().min();
        for (std::span<const KSet> side : {left, right})
            for (const KSet& s : side) {
                if (s.size() != k)
                    return precondition("sets have different cardinalities");
                if (s.min() != x)
                    return precondition("sets do not share their minimum element");
            }
        const KSet total = fold_sumset(left);
        if (total != fold_sumset(right))
            return precondition("the two sides have different sumsets");
        log("common sumset has " + std::to_string(total.size()) + " elements");

        if (h == 1)
            return conclude(left, right);

        const EllParameters params = ell(static_cast<int>(k), static_cast<int>(h));
        report_.ell = params.ell;
        for (std::size_t side = 0; side < 2; ++side) {
            std::span<const KSet> sets = side == 0 ? left : right;
            for (std::size_t i = 0; i < h; ++i)
                if (!is_b_h_fast(sets[i], static_cast<int>(params.ell)))
                    return precondition(label(side == 0, i, h) + " = {" + sets[i].to_string() + "} is not a B_" +
                                        std::to_string(params.ell) + "-set");
        }
        log("all sets are B_" + std::to_string(params.ell) + " (k=" + std::to_string(k) + ", h=" +
            std::to_string(h) + ", i0=" + std::to_string(params.i0) + ")");

        if (k >= 2)
            replay(left, right, params);
        return conclude(left, right);
    }

private:
    void replay(std::span<const KSet> left, std::span<const KSet> right, const EllParameters& params) {
        const std::size_t h = left.size();
        const Element x = left.front().min();

        // relabel so the first sets on each side maximize the intersection,
        // first maximum in (left, right) lexicographic index order
        std::size_t best_i = 0, best_j = 0, best = 0;
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < h; ++j) {
                const std::size_t size = intersection_size(left[i], right[j]);
                if (size > best) {
                    best = size;
                    best_i = i;
                    best_j = j;
                }
            }
        std::vector<KSet> lhs(left.begin(), left.end());
        std::vector<KSet> rhs(right.begin(), right.end());
        std::rotate(lhs.begin(), lhs.begin() + static_cast<std::ptrdiff_t>(best_i),
                    lhs.begin() + static_cast<std::ptrdiff_t>(best_i) + 1);
        std::rotate(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(best_j),
                    rhs.begin() + static_cast<std::ptrdiff_t>(best_j) + 1);
        const std::string pair = "(" + label(true, best_i, h) + "," + label(false, best_j, h) + ")";
        if (indent_.empty())
            report_.swap_record = pair;
        log("relabel: " + pair + " maximizes the pairwise intersection, size " + std::to_string(best));

        // the least element of S \ {h x} is (h-1)x + u = (h-1)x + v
        Element u = lhs.front()[1];
        for (const KSet& s : lhs)
            u = std::min(u, s[1]);
        Element v = rhs.front()[1];
        for (const KSet& s : rhs)
            v = std::min(v, s[1]);
        if (u != v)
            gap("second-smallest elements differ: u=" + std::to_string(u) + " v=" + std::to_string(v));
        else
            log("second-smallest element u = v = " + std::to_string(u) + " is shared with " + std::to_string(x));
        if (best < 2) {
            gap("maximum pairwise intersection is " + std::to_string(best) + " < 2");
            return;
        }

        const std::span<const KSet> lhs_rest = std::span<const KSet>(lhs).subspan(1);
        const std::span<const KSet> rhs_rest = std::span<const KSet>(rhs).subspan(1);
        const KSet residual_left = fold_sumset(lhs_rest);
        const KSet residual_right = fold_sumset(rhs_rest);

        KSet a_cur = lhs.front();
        KSet c_cur = rhs.front();
        KSet x_cur = intersection(a_cur, c_cur);
        const bool top = indent_.empty();
        auto record = [&](std::size_t i) {
            if (top) {
                report_.intersection_sizes.push_back(x_cur.size());
                report_.iterate_cardinalities.emplace_back(a_cur.size(), c_cur.size());
            }
            log("i=" + std::to_string(i) + ": |A_i|=" + std::to_string(a_cur.size()) + " |C_i|=" +
                std::to_string(c_cur.size()) + " |X_i|=" + std::to_string(x_cur.size()) + " (claimed >= " +
                std::to_string(params.j_sequence[i]) + ")");
            if (x_cur.size() < params.j_sequence[i])
                gap("|X_" + std::to_string(i) + "| = " + std::to_string(x_cur.size()) + " < j_" + std::to_string(i));
        };
        record(0);

        for (int i = 1; i <= params.i0; ++i) {
            const std::string tag = std::to_string(i);
            KSet a_next = sumset(x_cur, a_cur);
            KSet c_next = sumset(x_cur, c_cur);
            KSet x_next = intersection(a_next, c_next);
            if (!sumset(x_cur, x_cur).is_subset_of(x_next))
                gap("2X_" + std::to_string(i - 1) + " is not contained in X_" + tag);
            const int level_ell = static_cast<int>(params.ell >> i);
            const char* names[] = {"A_", "C_", "X_"};
            const KSet* sets[] = {&a_next, &c_next, &x_next};
            for (std::size_t s = 0; s < 3; ++s)
                if (!is_b_h_fast(*sets[s], level_ell))
                    gap(std::string(names[s]) + tag + " is not a B_" + std::to_string(level_ell) + "-set");
            if (!sumset(x_next, residual_left).is_subset_of(sumset(c_next, residual_right)))
                gap("X_" + tag + " + B is not contained in C_" + tag + " + D");
            a_cur = std::move(a_next);
            c_cur = std::move(c_next);
            x_cur = std::move(x_next);
            record(static_cast<std::size_t>(i));
        }

        // containment lemma on the last iterate: X_{i0} inside C_{i0}, larger than D
        const LemmaCheck forward = lemma_implication_check(c_cur, x_cur, residual_left, residual_right);
        log(std::string("lemma on (C_i0, X_i0, B, D): ") + to_string(forward.verdict) + " (" + forward.reason + ")");
        if (forward.verdict != LemmaVerdict::holds)
            gap(std::string("containment lemma does not apply at i0: ") + forward.reason);

        if (residual_left != residual_right) {
            gap("residual sumsets differ: {" + residual_left.to_string() + "} vs {" + residual_right.to_string() + "}");
            return;
        }
        if (h == 2) {
            log("B = D = {" + residual_left.to_string() + "}");
        } else {
            log("residual (h-1)-fold sumsets agree; recursing");
            TraceReport inner;
            TraceRunner nested(inner, indent_ + "  ");
            const TraceVerdict sub = nested.run(lhs_rest, rhs_rest);
            for (std::string& line : inner.detail)
                report_.detail.push_back(std::move(line));
            for (std::string& line : inner.step_gaps)
                report_.step_gaps.push_back(std::move(line));
            if (sub != TraceVerdict::pairs_equal)
                gap(std::string("residual equation gave ") + to_string(sub));
        }
        if (lhs.front() != rhs.front())
            gap("maximal intersection pair " + pair + " is not equal");
        else
            log(label(true, best_i, h) + " = " + label(false, best_j, h) + " = {" + lhs.front().to_string() + "}");
    }

    TraceReport& report_;
    std::string indent_;
};

} // namespace detail

// Replays the argument on A_1 + ... + A_h = B_1 + ... + B_h with h = left.size().
inline TraceReport structural_trace(std::span<const KSet> left, std::span<const KSet> right) {
    TraceReport report;
    report.left.assign(left.begin(), left.end());
    report.right.assign(right.begin(), right.end());
    detail::TraceRunner runner(report, "");
    runner.run(left, right);
    return report;
}

inline TraceReport structural_trace(const KSet& a, const KSet& b, const KSet& c, const KSet& d) {
    const KSet left[] = {a, b};
    const KSet right[] = {c, d};
    return structural_trace(left, right);
}

} // namespace sidonkit
