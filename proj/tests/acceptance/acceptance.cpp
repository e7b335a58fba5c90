// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "boolnl/analysis.hpp"
#include "boolnl/errors.hpp"
#include "boolnl/random.hpp"
#include "boolnl/report.hpp"
#include "boolnl/search.hpp"
#include "boolnl/walsh.hpp"
#include "oracles.hpp"

using namespace boolnl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

report::ReproduceOptions repro_options() {
    report::ReproduceOptions o;
    o.golden_dir = std::filesystem::path(BOOLNL_TEST_DATA_DIR) / "golden";
    o.threads = std::max(1u, std::thread::hardware_concurrency());
    return o;
}

// Diff verdicts for every table id, plus the failing-cell lines.
Outcome diff_outcome(const std::vector<report::ReproducedTable>& tables, double secs, double limit) {
    Outcome o{true, ""};
    std::size_t failures = 0, checked = 0;
    std::string lines;
    for (const auto& t : tables) {
        o.pass = o.pass && t.diff.passed();
        failures += t.diff.failures();
        for (const auto& c : t.diff.cells) checked += c.checked;
        if (!t.diff.passed()) lines += t.diff.summary();
    }
    o.detail = std::to_string(checked) + " cells checked, " + std::to_string(failures) + " outside tolerance, " +
               fmt("%.2f s", secs);
    if (limit > 0 && secs >= limit) {
        o.pass = false;
        o.detail += fmt(" (limit %.0f s)", limit);
    }
    if (!lines.empty()) o.detail += "\n" + lines;
    return o;
}

Outcome reproduce(int id, double limit, report::ReproduceOptions opts = repro_options()) {
    const auto t0 = Clock::now();
    const auto tables = report::reproduce_table(id, opts);
    return diff_outcome(tables, seconds_since(t0), limit);
}

Outcome criterion1() {
    auto opts = repro_options();
    opts.threads = 1;
    return reproduce(2, 1.0, opts);
}

Outcome criterion2() {
    auto opts = repro_options();
    opts.threads = 1;
    return reproduce(3, 60.0, opts);
}

Outcome criterion3() {
    const auto t = analysis::transition_study(MutationKind::Rotation, 4, analysis::SamplePlan::exhaustive());
    bool ok = t.rows.size() == 15;
    std::string why;
    for (std::size_t r = 0; ok && r < t.rows.size(); ++r) {
        const int amount = static_cast<int>(r) + 1;
        const auto& row = t.rows[r].by_start_nl;
        const auto& ref = amount % 2 ? t.rows[0].by_start_nl : t.rows[1].by_start_nl;
        if (amount % 4 == 0) {
            for (const auto& c : row) {
                if (c.increase || c.decrease) {
                    ok = false;
                    why = "amount " + std::to_string(amount) + " changes nl";
                }
            }
        } else if (row != ref) {
            ok = false;
            why = "amount " + std::to_string(amount) + " differs from its parity class";
        }
    }
    auto values = reproduce(4, 0);
    values.pass = values.pass && ok;
    values.detail = (ok ? "structure ok; " : "structure broken: " + why + "; ") + values.detail;
    return values;
}

Outcome criterion4() {
    auto opts = repro_options();
    opts.threads = 1;
    return reproduce(5, 600.0, opts);
}

Outcome criterion5() {
    auto opts = repro_options();
    opts.sample_fraction = 0.01;
    opts.enumerate_below_nl = 5;
    const auto t0 = Clock::now();
    const auto tables = report::reproduce_table(6, opts);
    auto o = diff_outcome(tables, seconds_since(t0), 0);
    // the structural zero is checked on the raw census, not the rounded view
    const auto& grid = tables.front().grid;
    bool zero = false;
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
        if (grid.rows[r] != "2bit") continue;
        zero = true;
        for (const auto& cell : grid.cells[r]) {
            for (double v : cell) zero = zero && v == 0.0;
        }
    }
    o.pass = o.pass && zero;
    o.detail = std::string(zero ? "2bit-only row all zero; " : "2bit-only row NOT zero; ") + o.detail;
    return o;
}

Outcome criterion6() {
    auto opts = repro_options();
    opts.pairs_per_cell = 200000;
    const auto t0 = Clock::now();
    auto tables = report::reproduce_table(7, opts);
    for (auto& t : report::reproduce_table(8, opts)) tables.push_back(std::move(t));
    auto o = diff_outcome(tables, seconds_since(t0), 0);
    o.detail = "200000 pairs per cell; " + o.detail;
    return o;
}

int nl_of(const TruthTable& t) { return nonlinearity(walsh_transform(t)); }

Outcome criterion7() {
    const int n = 3;
    const int top = 2;
    std::size_t below = 0, stuck = 0;
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const auto f = TruthTable::from_word(n, idx);
        const int nl = nl_of(f);
        if (nl >= top) continue;
        ++below;
        bool improved = false;
        for (auto kind : {MutationKind::Rotation, MutationKind::BitFlip, MutationKind::TwoBitFlip}) {
            const auto count = position_count(kind, f.size());
            for (std::uint64_t p = 0; p < count && !improved; ++p) {
                const auto g = apply_mutation(f, descriptor_at(kind, f.size(), p));
                improved = g && nl_of(*g) > nl;
            }
        }
        stuck += !improved;
    }
    // the census must agree with the direct walk
    const auto census = analysis::reachability_study(n, analysis::SamplePlan::exhaustive());
    std::uint64_t census_stuck = 0;
    for (int nl = 0; nl < top; ++nl) census_stuck += census.counts[0][nl];
    return {stuck == 0 && census_stuck == 0 && below > 0,
            std::to_string(below) + " functions below nl 2, " + std::to_string(stuck) +
                " without an improving move (census: " + std::to_string(census_stuck) + ")"};
}

Outcome criterion8() {
    std::map<int, int> finals;
    bool all_converged = true;
    for (std::uint64_t r = 0; r < 1000; ++r) {
        search::LsConfig c;
        c.num_vars = 4;
        c.operators = parse_operator_list("rot/bit/2bit");
        c.fitness = FitnessKind::Nonlinearity;
        c.restart_on_convergence = false;
        c.seed = RandomSource::derive_seed(8, r);
        const auto rec = search::ls_run(c);
        ++finals[rec.best_fitness.nl()];
        all_converged = all_converged && rec.converged;
    }
    std::string hist;
    for (const auto& [nl, k] : finals) hist += " nl" + std::to_string(nl) + "=" + std::to_string(k);
    bool only_4_6 = true;
    for (const auto& [nl, k] : finals) only_4_6 = only_4_6 && (nl == 4 || nl == 6);
    return {only_4_6 && all_converged,
            "1000 runs:" + hist + (all_converged ? ", all converged" : ", some did not converge")};
}

Outcome criterion9() {
    std::vector<std::string> broken;
    RandomSource rand(9);

    // round trip, Parseval, butterfly vs naive: every n=3 function
    std::size_t spectra = 0;
    for (std::uint64_t idx = 0; idx < 256; ++idx) {
        const auto f = TruthTable::from_word(3, idx);
        const auto w = walsh_transform(f);
        ++spectra;
        if (inverse_walsh(w) != f) broken.push_back("round trip n=3 #" + std::to_string(idx));
        if (!satisfies_parseval(w)) broken.push_back("parseval n=3 #" + std::to_string(idx));
        if (w != walsh_transform_naive(f)) broken.push_back("butterfly n=3 #" + std::to_string(idx));
    }
    for (int k = 0; k < 10000; ++k) {
        const auto f = search::random_function(8, rand);
        const auto w = walsh_transform(f);
        ++spectra;
        if (inverse_walsh(w) != f) broken.push_back("round trip n=8 sample " + std::to_string(k));
        if (!satisfies_parseval(w)) broken.push_back("parseval n=8 sample " + std::to_string(k));
        if (k < 200 && w != walsh_transform_naive(f)) broken.push_back("butterfly n=8 sample " + std::to_string(k));
    }

    // incremental delta vs recompute, every kind the consistency study accepts
    std::size_t consistent_kinds = 0, delta_checks = 0;
    for (auto kind : kAllMutationKinds) {
        const auto report = analysis::consistency_study(kind, 3, analysis::SamplePlan::exhaustive());
        if (!report.all_consistent()) continue;
        ++consistent_kinds;
        for (std::uint64_t p = 0; p < position_count(kind, 8); ++p) {
            const auto m = descriptor_at(kind, 8, p);
            const auto delta = mutation_delta(m, 3);
            if (!delta) {
                broken.push_back("no delta for " + to_string(m));
                continue;
            }
            for (std::uint64_t idx = 0; idx < 256; ++idx) {
                const auto f = TruthTable::from_word(3, idx);
                const auto g = apply_mutation(f, m);
                if (!g) continue;
                ++delta_checks;
                if (apply_spectrum_delta(walsh_transform(f), *delta) != walsh_transform(*g)) {
                    broken.push_back("delta " + to_string(m) + " on #" + std::to_string(idx));
                }
            }
        }
    }

    // per-position agreement before collapsing, and a tampered table must be refused
    std::size_t collapsed = 0;
    for (auto kind : {MutationKind::BitFlip, MutationKind::TwoBitFlip}) {
        auto table = analysis::transition_study_by_position(kind, 4, analysis::SamplePlan::exhaustive());
        for (const auto& row : table.rows) {
            if (row.by_start_nl != table.rows.front().by_start_nl) {
                broken.push_back(std::string(kind_name(kind)) + " positions disagree");
                break;
            }
        }
        try {
            (void)analysis::collapse_positions(table);
            ++collapsed;
        } catch (const CollapseViolation& e) {
            broken.push_back(e.what());
        }
        auto& cell = table.rows.back().by_start_nl[2];
        cell.increase += 1;
        try {
            (void)analysis::collapse_positions(table);
            broken.push_back(std::string(kind_name(kind)) + " tampered table collapsed");
        } catch (const CollapseViolation&) {
        }
    }

    std::ostringstream d;
    d << spectra << " spectra, " << consistent_kinds << " consistent kinds, " << delta_checks << " delta checks, "
      << collapsed << " collapses verified";
    for (std::size_t k = 0; k < std::min<std::size_t>(broken.size(), 10); ++k) d << "\n  " << broken[k];
    return {broken.empty() && consistent_kinds > 0, d.str()};
}

const std::vector<std::string> kCombos = {"bit", "rot", "2bit", "rot/bit", "2bit/bit", "2bit/rot", "2bit/rot/bit"};

Outcome criterion10() {
    const auto t0 = Clock::now();
    std::vector<search::ExperimentEntry> entries;
    for (const char* algo : {"ls", "ls-r"}) {
        for (int f = 1; f <= 2; ++f) {
            if (std::string(algo) == "ls-r" && f == 1) continue;
            for (const auto& ops : kCombos) {
                search::LsConfig c;
                c.num_vars = 9;
                c.operators = parse_operator_list(ops);
                c.revert = std::string(algo) == "ls-r";
                c.fitness = f == 1 ? FitnessKind::Nonlinearity : FitnessKind::MaxCountRefined;
                c.budget = 500000;
                c.restart_on_convergence = false;
                entries.push_back({std::string(algo) + "-f" + std::to_string(f) + "-" + ops, c});
            }
        }
    }
    const auto result =
        search::run_experiment(entries, 30, 10, std::max(1u, std::thread::hardware_concurrency()));
    std::map<std::string, double> mean;
    for (const auto& c : result.configs) mean[c.id] = c.final_nl.mean;

    double f1 = 0, f2 = 0;
    for (const auto& ops : kCombos) {
        f1 += mean["ls-f1-" + ops] / kCombos.size();
        f2 += mean["ls-f2-" + ops] / kCombos.size();
    }
    const bool a = f2 > f1;

    double worst_with = 1e9, best_without = -1e9;
    for (const auto& ops : kCombos) {
        const double m = mean["ls-f2-" + ops];
        if (ops.find("2bit") != std::string::npos) {
            worst_with = std::min(worst_with, m);
        } else {
            best_without = std::max(best_without, m);
        }
    }
    const bool b = worst_with > best_without;

    bool c = true;
    std::string c_fail;
    for (const auto& ops : kCombos) {
        if (mean["ls-r-f2-" + ops] < mean["ls-f2-" + ops]) {
            c = false;
            c_fail += " " + ops;
        }
    }

    std::ostringstream d;
    d << "(a) " << (a ? "ok" : "FAIL") << " mean nl F2 " << fmt("%.2f", f2) << " vs F1 " << fmt("%.2f", f1)
      << "; (b) " << (b ? "ok" : "FAIL") << " worst 2bit combo " << fmt("%.2f", worst_with) << " vs best other "
      << fmt("%.2f", best_without) << "; (c) " << (c ? "ok" : "FAIL" + c_fail) << "; " << fmt("%.1f s", seconds_since(t0));
    for (const auto& ops : kCombos) {
        d << "\n  " << ops << ": ls-f1 " << fmt("%.2f", mean["ls-f1-" + ops]) << ", ls-f2 "
          << fmt("%.2f", mean["ls-f2-" + ops]) << ", ls-r-f2 " << fmt("%.2f", mean["ls-r-f2-" + ops]);
    }
    return {a && b && c, d.str()};
}

Outcome criterion11() {
    search::GaConfig c;
    c.num_vars = 4;
    c.population_size = 100;
    c.tournament_size = 3;
    c.mutation_probability = 0.5;
    c.budget = 5000;
    const auto result = search::run_experiment({{"ga", c}}, 30, 11, 1);
    int hits = 0;
    for (const auto& r : result.configs.front().runs) hits += r.best_fitness.nl() == 6;
    return {hits >= 28, std::to_string(hits) + "/30 runs reached nl 6"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 bit-set delta table, n=3, exact", criterion1},
        {"2 bit flip / two bit flip transitions, n=4", criterion2},
        {"3 rotation transitions, n=4, structure and values", criterion3},
        {"4 reachability counts, n=4, exact", criterion4},
        {"5 sampled reachability, n=5, within 3 points", criterion5},
        {"6 crossover matrices, n=4, within 3 points", criterion6},
        {"7 every non-optimal n=3 function has an improving move", criterion7},
        {"8 single-descent local search at n=4 ends at nl 4 or 6", criterion8},
        {"9 transform and delta properties", criterion9},
        {"10 search behavior at n=9", criterion10},
        {"11 genetic algorithm reaches nl 6 at n=4", criterion11},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
