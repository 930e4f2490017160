#pragma once

// sidonkit command line. run_cli() is the whole program minus argv handling so
// the tests can drive it in-process.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sidonkit/sidonkit.hpp"

namespace sidonkit::cli {

enum Exit : int { ok = 0, negative = 1, usage = 2, resource = 3 };

namespace detail {

using nlohmann::ordered_json;

inline std::string tuple_text(const AdditiveTuple& t) {
    auto side = [](const std::vector<KSet>& sets) {
        std::string s;
        for (std::size_t i = 0; i < sets.size(); ++i)
            s += (i ? " + {" : "{") + sets[i].to_string() + "}";
        return s;
    };
    return side(t.left) + " = " + side(t.right) + " = {" + t.common_sumset.to_string() + "}";
}

inline ordered_json tuple_json(const AdditiveTuple& t) {
    ordered_json j;
    j["left"] = ordered_json::array();
    j["right"] = ordered_json::array();
    for (const KSet& s : t.left)
        j["left"].push_back(s.elements());
    for (const KSet& s : t.right)
        j["right"].push_back(s.elements());
    j["common_sumset"] = t.common_sumset.elements();
    return j;
}

inline Family read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--input", "cannot open " + path);
    return read_family(in);
}

// Trace inputs may repeat a set, so lines are read one by one.
inline std::vector<KSet> read_sets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--input", "cannot open " + path);
    std::vector<KSet> sets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = sidonkit::detail::trim(line);
        if (body.empty() || body.front() == '#')
            continue;
        sets.push_back(parse_kset(body, line_no));
    }
    return sets;
}

// Writes to the file when a path is set, otherwise to the fallback stream.
template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot write " + path);
    write(file);
}

} // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using detail::ordered_json;

    CLI::App app{"sidonkit: Sidon systems, B_h-systems and random-family certificates"};
    app.name("sidonkit");
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));

    int result = Exit::ok;

    // ell
    int ell_k = 0, ell_h = 2;
    auto* ell_cmd = app.add_subcommand("ell", "B_ell exponent and j-sequence for (k, h)");
    ell_cmd->add_option("--k", ell_k)->required()->check(CLI::PositiveNumber);
    ell_cmd->add_option("--h", ell_h)->required()->check(CLI::Range(2, 64));
    ell_cmd->callback([&] {
        const EllParameters p = ell(ell_k, ell_h);
        ordered_json j;
        j["k"] = p.k;
        j["h"] = p.h;
        j["ell"] = p.ell;
        j["j"] = p.j_sequence;
        out << j.dump() << '\n';
    });

    // verify
    std::string verify_input;
    std::optional<int> verify_h;
    bool verify_witness = false, verify_large = false;
    auto* verify_cmd = app.add_subcommand("verify", "decide whether a family is a Sidon (or B_h) system");
    verify_cmd->add_option("--input", verify_input)->required();
    verify_cmd->add_option("--h", verify_h)->check(CLI::Range(1, 64));
    verify_cmd->add_flag("--witness", verify_witness, "print the first nontrivial tuple");
    verify_cmd->add_flag("--allow-large", verify_large, "ignore the pair cap");
    verify_cmd->callback([&] {
        const Family family = detail::read_family_file(verify_input);
        SearchOptions opts;
        opts.limit = 1;
        opts.threads = threads;
        opts.allow_large = verify_large;
        const int h = verify_h.value_or(2);
        const auto tuples = find_nontrivial_h_tuples(family, h, opts);
        const bool positive = tuples.empty();
        if (verify_h)
            out << (positive ? "BH" : "NOT_BH") << '\n';
        else
            out << (positive ? "SIDON" : "NOT_SIDON") << '\n';
        if (verify_witness && !positive)
            out << detail::tuple_text(tuples.front()) << '\n';
        result = positive ? Exit::ok : Exit::negative;
    });

    // construct
    int con_n = 0, con_k = 0, con_h = 2;
    bool con_stats = false;
    std::string con_out;
    auto* construct_cmd = app.add_subcommand("construct", "normalized k-subsets of {0..n} that are B_ell");
    construct_cmd->add_option("--n", con_n)->required();
    construct_cmd->add_option("--k", con_k)->required();
    construct_cmd->add_option("--h", con_h)->check(CLI::Range(2, 64));
    construct_cmd->add_flag("--stats", con_stats, "print n,k,h,ell,classes,kept,removed");
    construct_cmd->add_option("--out", con_out, "family file");
    construct_cmd->callback([&] {
        const Construction c = construct_normalized_with_stats(con_n, con_k, con_h, threads);
        if (con_stats)
            out << c.stats.csv_line() << '\n';
        if (!con_out.empty() || !con_stats)
            detail::emit(con_out, out, [&](std::ostream& s) { write_family(s, c.family); });
    });

    // count-nonbl
    int cnt_n = 0, cnt_k = 0;
    std::optional<std::uint64_t> cnt_ell;
    std::optional<int> cnt_h;
    auto* count_cmd = app.add_subcommand("count-nonbl", "count normalized classes that are not B_ell");
    count_cmd->add_option("--n", cnt_n)->required();
    count_cmd->add_option("--k", cnt_k)->required();
    auto* ell_opt = count_cmd->add_option("--ell", cnt_ell)->check(CLI::Range(2, 1 << 20));
    count_cmd->add_option("--h", cnt_h, "use ell(k, h)")->check(CLI::Range(2, 64))->excludes(ell_opt);
    count_cmd->callback([&] {
        const std::uint64_t l = cnt_ell ? *cnt_ell : ell(cnt_k, cnt_h.value_or(2)).ell;
        const std::uint64_t bad = count_non_b_ell(cnt_n, cnt_k, l, threads);
        ordered_json j;
        j["n"] = cnt_n;
        j["k"] = cnt_k;
        j["ell"] = l;
        j["classes"] = binomial(cnt_n, cnt_k - 1);
        j["non_b_ell"] = bad;
        out << j.dump() << '\n';
    });

    // extremal
    int ext_n = 0, ext_k = 0, ext_h = 2;
    std::uint64_t ext_budget = ExactOptions{}.budget;
    bool ext_force = false;
    std::string ext_greedy, ext_out;
    std::optional<std::uint64_t> ext_seed;
    auto* extremal_cmd = app.add_subcommand("extremal", "maximum Sidon / B_h-system of k-subsets of [n]");
    extremal_cmd->add_option("--n", ext_n)->required()->check(CLI::NonNegativeNumber);
    extremal_cmd->add_option("--k", ext_k)->required()->check(CLI::PositiveNumber);
    extremal_cmd->add_option("--h", ext_h)->check(CLI::Range(1, 64));
    extremal_cmd->add_option("--budget", ext_budget, "search node limit");
    extremal_cmd->add_flag("--force", ext_force, "run exact mode past the ground-set guard");
    extremal_cmd->add_option("--greedy", ext_greedy, "greedy lower bound instead of exact search")
        ->check(CLI::IsMember({"lex", "random"}));
    extremal_cmd->add_option("--seed", ext_seed, "seed for --greedy random");
    extremal_cmd->add_option("--out", ext_out, "witness family file");
    extremal_cmd->callback([&] {
        ordered_json j;
        j["n"] = ext_n;
        j["k"] = ext_k;
        j["h"] = ext_h;
        Family witness;
        if (!ext_greedy.empty()) {
            GreedyOrder order;
            if (ext_greedy == "random") {
                if (!ext_seed)
                    throw CLI::RequiredError("--seed");
                order = GreedyOrder::random(*ext_seed);
            }
            witness = greedy_sidon(ext_n, ext_k, ext_h, order);
            j["mode"] = "greedy-" + ext_greedy;
            j["size"] = witness.size();
        } else {
            ExactOptions opts;
            opts.h = ext_h;
            opts.budget = ext_budget;
            opts.force = ext_force;
            const ExtremalResult r = exact_max_sidon(ext_n, ext_k, opts);
            witness = r.witness;
            j["mode"] = "exact";
            j["size"] = r.size;
            j["optimal"] = r.optimal;
            j["nodes"] = r.nodes;
        }
        if (ext_n > ext_k && ext_k >= 1)
            j["upper_bound"] = upper_bound(ext_n, ext_k);
        out << j.dump() << '\n';
        if (!ext_out.empty())
            detail::emit(ext_out, out, [&](std::ostream& s) { write_family(s, witness); });
    });

    // simulate
    ExperimentConfig sim;
    std::optional<double> sim_p, sim_c;
    std::optional<std::uint64_t> sim_seed;
    std::string sim_out;
    auto* simulate_cmd = app.add_subcommand("simulate", "certificate experiments on random families");
    simulate_cmd->add_option("--n", sim.n)->required();
    simulate_cmd->add_option("--k", sim.k);
    simulate_cmd->add_option("--h", sim.h);
    simulate_cmd->add_option("--delta", sim.delta);
    simulate_cmd->add_option("--gamma", sim.gamma);
    auto* p_opt = simulate_cmd->add_option("--p", sim_p, "inclusion probability");
    simulate_cmd->add_option("--c", sim_c, "p = c/n")->excludes(p_opt);
    simulate_cmd->add_option("--trials", sim.trials);
    simulate_cmd->add_option("--seed", sim_seed)->required();
    simulate_cmd->add_option("--verify-cap", sim.verify_cap, "full verification when the multiset count is at most this");
    simulate_cmd->add_option("--out", sim_out, "CSV file");
    simulate_cmd->callback([&] {
        if (!sim_p && !sim_c)
            throw CLI::RequiredError("--p or --c");
        if (sim.n <= 0)
            throw CLI::ValidationError("--n", "must be positive");
        sim.p = sim_p ? *sim_p : *sim_c / static_cast<double>(sim.n);
        sim.seed = *sim_seed;
        sim.threads = threads;
        const auto records = run_experiment(sim);
        detail::emit(sim_out, out, [&](std::ostream& s) { write_csv(s, records); });
    });

    // expectation
    int exp_n = 0, exp_k = 2;
    double exp_p = 0;
    auto* expectation_cmd = app.add_subcommand("expectation", "expected number of represented classes");
    expectation_cmd->add_option("--n", exp_n)->required();
    expectation_cmd->add_option("--k", exp_k)->required();
    expectation_cmd->add_option("--p", exp_p)->required();
    expectation_cmd->callback([&] {
        const ExpectationBracket b = expectation_X(exp_n, exp_k, exp_p);
        out << "lower=" << format_double(b.lower) << " exact=" << format_double(b.exact)
            << " upper=" << format_double(b.upper) << '\n';
    });

    // k2-family
    int k2_n = 0;
    std::size_t k2_limit = 5;
    auto* k2_cmd = app.add_subcommand("k2-family", "evaluate {1,n-i}+{0,i}, i=1..n-1, and verify it");
    k2_cmd->add_option("--n", k2_n)->required();
    k2_cmd->add_option("--witnesses", k2_limit, "quadruples to report");
    k2_cmd->callback([&] {
        const K2FamilyReport r = k2_paper_family(k2_n, k2_limit);
        ordered_json j;
        j["n"] = r.n;
        j["raw"] = ordered_json::array();
        for (const KSet& s : r.raw)
            j["raw"].push_back(s.elements());
        j["distinct"] = r.distinct;
        j["duplicates"] = ordered_json::array();
        for (const auto& [set, where] : r.duplicates)
            j["duplicates"].push_back({{"set", set.elements()}, {"i", where}});
        j["verdict"] = r.sidon ? "SIDON" : "NOT_SIDON";
        j["quadruples"] = ordered_json::array();
        for (const AdditiveTuple& t : r.quadruples)
            j["quadruples"].push_back(detail::tuple_json(t));
        out << j.dump() << '\n';
    });

    // trace
    std::string trace_input;
    bool trace_json = false;
    auto* trace_cmd = app.add_subcommand("trace", "replay the structural argument on 2h sets (first h = last h)");
    trace_cmd->add_option("--input", trace_input, "2h sets, one per line")->required();
    trace_cmd->add_flag("--json", trace_json);
    trace_cmd->callback([&] {
        const std::vector<KSet> sets = detail::read_sets_file(trace_input);
        if (sets.empty() || sets.size() % 2 != 0)
            throw CLI::ValidationError("--input", "needs an even, positive number of sets");
        const std::size_t h = sets.size() / 2;
        const std::span<const KSet> all(sets);
        const TraceReport r = structural_trace(all.first(h), all.subspan(h));
        if (trace_json) {
            ordered_json j;
            j["verdict"] = to_string(r.verdict);
            j["ell"] = r.ell;
            j["swap"] = r.swap_record;
            j["intersection_sizes"] = r.intersection_sizes;
            j["iterate_cardinalities"] = r.iterate_cardinalities;
            j["step_gaps"] = r.step_gaps;
            j["detail"] = r.detail;
            out << j.dump() << '\n';
        } else {
            for (const std::string& line : r.detail)
                out << line << '\n';
            out << "verdict: " << to_string(r.verdict) << '\n';
        }
        result = r.verdict == TraceVerdict::theorem_violation ? Exit::negative : Exit::ok;
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return Exit::ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Exit::usage;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << '\n';
        return Exit::usage;
    } catch (const resource_error& e) {
        err << "resource limit: " << e.what() << '\n';
        return Exit::resource;
    } catch (const domain_error& e) {
        err << "invalid arguments: " << e.what() << '\n';
        return Exit::usage;
    } catch (const std::invalid_argument& e) {
        err << "invalid arguments: " << e.what() << '\n';
        return Exit::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Exit::usage;
    }
    return result;
}

} // namespace sidonkit::cli
