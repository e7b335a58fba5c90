#include "doctest.h"

#include <cmath>
#include <set>

#include "boolnl/errors.hpp"
#include "boolnl/search.hpp"
#include "boolnl/walsh.hpp"
#include "oracles.hpp"

using namespace boolnl;
using namespace boolnl::search;

namespace {

LsConfig ls_config(int n, const char* ops, FitnessKind fitness, std::uint64_t seed) {
    LsConfig c;
    c.num_vars = n;
    c.operators = parse_operator_list(ops);
    c.fitness = fitness;
    c.seed = seed;
    c.budget = 200000;
    c.restart_on_convergence = false;
    return c;
}

bool non_decreasing(const RunRecord& r) {
    for (std::size_t k = 1; k < r.trajectory.size(); ++k) {
        if (r.trajectory[k].best < r.trajectory[k - 1].best) return false;
        if (r.trajectory[k].evaluation < r.trajectory[k - 1].evaluation) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("random functions") {
    RandomSource a(5), b(5), c(6);
    const auto ta = random_function(8, a);
    CHECK(ta == random_function(8, b));
    CHECK_FALSE(ta == random_function(8, c));
    RandomSource r(7);
    double total = 0;
    for (int k = 0; k < 1000; ++k) total += static_cast<double>(random_function(8, r).weight());
    // Binomial(256, 1/2): sd 8 per draw, 8 / sqrt(1000) for the mean.
    CHECK(std::abs(total / 1000 - 128.0) <= 3 * 8 / std::sqrt(1000.0));
    RandomSource s(8);
    CHECK(random_function(3, s).size() == 8);
}

TEST_CASE("evaluator probes agree with full evaluation") {
    for (auto kind : {FitnessKind::Nonlinearity, FitnessKind::MaxCountRefined}) {
        for (bool incremental : {true, false}) {
            Evaluator eval(3, kind, incremental);
            for (std::uint64_t f = 0; f < 256; ++f) {
                const auto state = eval.evaluate(oracle::from_index(3, f));
                for (auto mk : kAllMutationKinds) {
                    for (std::uint64_t k = 0; k < position_count(mk, 8); ++k) {
                        const auto m = descriptor_at(mk, 8, k);
                        const auto before = eval.evaluations();
                        const auto got = eval.probe(state, m);
                        const auto next = apply_mutation(state.table, m);
                        REQUIRE(got.has_value() == next.has_value());
                        CHECK(eval.evaluations() == before + (next ? 1 : 0));
                        if (!next) continue;
                        REQUIRE(*got == evaluate_fitness(kind, *next));
                        const auto adv = eval.advance(state, m);
                        REQUIRE(adv.table == *next);
                        const auto full = walsh_transform(*next);
                        REQUIRE(adv.spectrum == std::vector<std::int32_t>(full.coeffs().begin(), full.coeffs().end()));
                    }
                }
            }
        }
    }
    Evaluator eval(8, FitnessKind::MaxCountRefined);
    RandomSource rand(3);
    for (int k = 0; k < 200; ++k) {
        auto state = eval.evaluate(random_function(8, rand));
        for (auto mk : {MutationKind::BitFlip, MutationKind::TwoBitFlip, MutationKind::Rotation}) {
            const auto m = descriptor_at(mk, 256, rand.below(position_count(mk, 256)));
            CHECK(*eval.probe(state, m) == fitness2(*apply_mutation(state.table, m)));
            state = eval.advance(state, m);
            CHECK(state.fitness == fitness2(state.table));
        }
    }
}

TEST_CASE("config validation") {
    LsConfig ls;
    ls.operators.clear();
    CHECK_THROWS_AS(ls_run(ls), ConfigInvalid);
    ls.operators = {MutationKind::BitFlip, MutationKind::BitFlip};
    CHECK_THROWS_AS(ls_run(ls), ConfigInvalid);
    ls.operators = {MutationKind::BitFlip};
    ls.budget = 0;
    CHECK_THROWS_AS(ls_run(ls), ConfigInvalid);
    ls.budget = 10;
    ls.revert = true;
    CHECK_THROWS_AS(ls_run(ls), ConfigInvalid);
    ls.revert = false;
    CHECK_THROWS_AS(ls_revert_run(ls), ConfigInvalid);
    ls.start = TruthTable::zeros(3);
    CHECK_THROWS_AS(ls_run(ls), ConfigInvalid);

    GaConfig ga;
    ga.tournament_size = 2;
    CHECK_THROWS_AS(ga_run(ga), ConfigInvalid);
    ga.tournament_size = 3;
    ga.mutation_probability = 1.5;
    CHECK_THROWS_AS(ga_run(ga), ConfigInvalid);
    ga.mutation_probability = 0.5;
    ga.budget = 99;
    CHECK_THROWS_AS(ga_run(ga), ConfigInvalid);
    ga.budget = 100;
    ga.population_size = 2;
    CHECK_THROWS_AS(ga_run(ga), ConfigInvalid);
}

TEST_CASE("local search at n=4 ends at nl 4 or 6, and at n=3 at the maximum") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto r = ls_run(ls_config(4, "rot/bit/2bit", FitnessKind::Nonlinearity, seed));
        CHECK(r.converged);
        const int nl = r.best_fitness.nl();
        CHECK((nl == 4 || nl == 6));
        CHECK(non_decreasing(r));
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto r = ls_run(ls_config(3, "rot/bit/2bit", FitnessKind::Nonlinearity, seed));
        CHECK(r.best_fitness.nl() == 2);
    }
}

TEST_CASE("local search from a dead end stops after one pass") {
    // First n=4 function with nl 4 whose rot/bit/2bit neighbors never improve.
    std::optional<TruthTable> dead;
    for (std::uint64_t f = 0; f < 65536 && !dead; ++f) {
        const auto t = TruthTable::from_word(4, f);
        const int nl = nonlinearity(walsh_transform(t));
        if (nl != 4) continue;
        bool stuck = true;
        for (auto kind : {MutationKind::Rotation, MutationKind::BitFlip, MutationKind::TwoBitFlip}) {
            for (std::uint64_t k = 0; k < position_count(kind, 16) && stuck; ++k) {
                stuck = nonlinearity(walsh_transform(*apply_mutation(t, descriptor_at(kind, 16, k)))) <= 4;
            }
        }
        if (stuck) dead = t;
    }
    REQUIRE(dead.has_value());
    auto c = ls_config(4, "rot/bit/2bit", FitnessKind::Nonlinearity, 1);
    c.start = dead;
    const auto r = ls_run(c);
    CHECK(r.best_fitness.nl() == 4);
    CHECK(r.converged);
    CHECK(r.acceptances == 0);
    CHECK(r.evaluations == 1 + 15 + 16 + 120);
}

TEST_CASE("revert extends plain local search") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto c = ls_config(5, "2bit/bit", FitnessKind::MaxCountRefined, seed);
        c.budget = 20000;
        const auto ls = ls_run(c);
        c.revert = true;
        const auto lsr = ls_revert_run(c);
        CHECK(lsr.evaluations >= ls.evaluations);
        CHECK(lsr.best_fitness >= ls.best_fitness);
        CHECK(lsr.max_chain_depth <= lsr.acceptances);
        CHECK(non_decreasing(lsr));
        // Same seed, same draws: the plain run is a prefix of the revert run.
        REQUIRE(lsr.trajectory.size() >= ls.trajectory.size());
        for (std::size_t k = 0; k < ls.trajectory.size(); ++k) {
            CHECK(lsr.trajectory[k].evaluation == ls.trajectory[k].evaluation);
            CHECK(lsr.trajectory[k].best == ls.trajectory[k].best);
        }
        c.revert_mode = RevertMode::Single;
        const auto single = ls_revert_run(c);
        CHECK(single.max_chain_depth <= 1);
        CHECK(single.evaluations <= c.budget);
    }
}

TEST_CASE("incremental and full evaluation give identical runs") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        for (bool revert : {false, true}) {
            auto c = ls_config(7, "2bit/rot/bit", FitnessKind::MaxCountRefined, seed);
            c.budget = 30000;
            c.revert = revert;
            c.restart_on_convergence = true;
            const auto a = local_search(c);
            c.incremental = false;
            const auto b = local_search(c);
            CHECK(a.best == b.best);
            CHECK(a.evaluations == b.evaluations);
            CHECK(a.trajectory.size() == b.trajectory.size());
        }
    }
}

TEST_CASE("budget accounting and restarts") {
    auto c = ls_config(4, "bit", FitnessKind::Nonlinearity, 9);
    c.budget = 5000;
    c.restart_on_convergence = true;
    const auto r = ls_run(c);
    CHECK(r.evaluations == 5000);
    CHECK(r.descents > 1);
    CHECK_FALSE(r.converged);

    c.randomized_order = false;
    c.restart_on_convergence = false;
    c.start = TruthTable::zeros(4);
    const auto canon = ls_run(c);
    // Canonical order flips bit 0 first, which always improves the constant.
    REQUIRE(canon.trajectory.size() >= 2);
    CHECK(canon.trajectory[1].evaluation == 2);
}

TEST_CASE("F2 reaches the n=4 optimum more often than F1") {
    int f1 = 0;
    int f2 = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        f1 += ls_run(ls_config(4, "2bit/bit", FitnessKind::Nonlinearity, seed)).best_fitness.nl() == 6;
        f2 += ls_run(ls_config(4, "2bit/bit", FitnessKind::MaxCountRefined, seed)).best_fitness.nl() == 6;
    }
    MESSAGE("nl=6 hits over 30 runs: F1 " << f1 << ", F2 " << f2);
    CHECK(f2 > f1);
}

TEST_CASE("genetic algorithm") {
    GaConfig c;
    c.num_vars = 4;
    c.budget = 100;
    const auto init = ga_run(c);
    CHECK(init.evaluations == 100);
    CHECK(init.trajectory.back().evaluation <= 100);

    int hits = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        c.budget = 5000;
        c.seed = seed;
        c.crossover = seed % 2 ? CrossoverKind::SinglePointRandom : CrossoverKind::UniformRandom;
        const auto r = ga_run(c);
        CHECK(r.evaluations == 5000);
        CHECK(non_decreasing(r));
        hits += r.best_fitness.nl() == 6;
    }
    CHECK(hits >= 28);

    c.num_vars = 6;
    c.budget = 3000;
    c.seed = 4;
    const auto a = ga_run(c);
    const auto b = ga_run(c);
    CHECK(a.best == b.best);
    CHECK(a.trajectory.size() == b.trajectory.size());
}

TEST_CASE("summary statistics") {
    const std::vector<double> v{4, 1, 3, 2};
    const auto s = summarize(v);
    CHECK(s.min == 1);
    CHECK(s.max == 4);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.median == doctest::Approx(2.5));
    CHECK(s.q1 == doctest::Approx(1.75));
    CHECK(s.q3 == doctest::Approx(3.25));
    CHECK_THROWS_AS(summarize(std::vector<double>{}), ConfigInvalid);
}

TEST_CASE("experiments use paired seeds and ignore the thread count") {
    auto ls = ls_config(5, "2bit/bit", FitnessKind::MaxCountRefined, 0);
    ls.budget = 3000;
    auto lsr = ls;
    lsr.revert = true;
    GaConfig ga;
    ga.num_vars = 5;
    ga.budget = 1000;
    const std::vector<ExperimentEntry> entries{{"ls", ls}, {"ls-r", lsr}, {"ga", ga}};
    const auto one = run_experiment(entries, 4, 77, 1);
    const auto many = run_experiment(entries, 4, 77, 3);
    REQUIRE(one.configs.size() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t r = 0; r < 4; ++r) {
            CHECK(one.configs[c].runs[r].best == many.configs[c].runs[r].best);
        }
    }
    // Paired: the LS-R run r starts where LS run r starts.
    for (std::size_t r = 0; r < 4; ++r) {
        CHECK(one.configs[0].runs[r].trajectory.front().best == one.configs[1].runs[r].trajectory.front().best);
    }
    const auto csv = runs_csv(one);
    CHECK(csv.rfind("config-id,run-id,final-nl,final-fitness,evaluations,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
    CHECK(summary_csv(one).find("ls-r,4,") != std::string::npos);

    const auto single = run_experiment({{"ls", ls}}, 1, 5);
    const auto& rec = single.configs[0].runs[0];
    CHECK(single.configs[0].final_nl.min == rec.best_fitness.nl());
    CHECK(single.configs[0].final_nl.max == rec.best_fitness.nl());
    CHECK(single.configs[0].final_nl.mean == rec.best_fitness.nl());
    CHECK_THROWS_AS(run_experiment(entries, 0, 1), ConfigInvalid);

    const auto json = to_json(rec, 2);
    CHECK(json.find("\"algorithm\": \"ls\"") != std::string::npos);
}
