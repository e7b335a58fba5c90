#include <algorithm>

#include "boolnl/errors.hpp"
#include "boolnl/search.hpp"
#include "search/tracker.hpp"

namespace boolnl::search {

std::string_view ga_mutation_name(GaMutation op) {
    switch (op) {
        case GaMutation::BitFlip: return "bitflip";
        case GaMutation::TwoBitFlip: return "2bitflip";
        case GaMutation::Mixing: return "mixing";
    }
    return "?";
}

void GaConfig::validate() const {
    if (num_vars < 1 || num_vars > TruthTable::kMaxVars) throw ConfigInvalid("ga: n must lie in [1, 16]");
    if (tournament_size < 3) throw ConfigInvalid("ga: tournament size must be at least 3");
    if (tournament_size > population_size) throw ConfigInvalid("ga: tournament larger than the population");
    if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
        throw ConfigInvalid("ga: mutation probability must lie in [0, 1]");
    }
    if (mutation_probability > 0.0 && mutation_ops.empty()) throw ConfigInvalid("ga: no mutation operators");
    if (budget < population_size) throw ConfigInvalid("ga: budget smaller than the population");
    if (num_vars < 2 && std::find(mutation_ops.begin(), mutation_ops.end(), GaMutation::TwoBitFlip) != mutation_ops.end()) {
        throw ConfigInvalid("ga: two bit flip needs n >= 2");
    }
}

namespace {

struct Individual {
    TruthTable table;
    FitnessValue fitness;
};

TruthTable mutate(TruthTable t, GaMutation op, RandomSource& rand) {
    const std::size_t len = t.size();
    switch (op) {
        case GaMutation::BitFlip:
            t.flip(rand.below(len));
            return t;
        case GaMutation::TwoBitFlip: {
            const auto i = rand.below(len);
            auto j = rand.below(len - 1);
            if (j >= i) ++j;
            t.flip(i);
            t.flip(j);
            return t;
        }
        case GaMutation::Mixing:
            return mixing_mutation(t, rand);
    }
    return t;
}

}  // namespace

RunRecord ga_run(const GaConfig& config) {
    config.validate();
    RandomSource rand(config.seed);
    Evaluator eval(config.num_vars, config.fitness);
    detail::Tracker tracker("ga", config_json(config));

    std::vector<Individual> population;
    population.reserve(config.population_size);
    for (std::size_t k = 0; k < config.population_size; ++k) {
        auto s = eval.evaluate(random_function(config.num_vars, rand));
        tracker.offer(s.table, s.fitness, eval.evaluations());
        population.push_back({std::move(s.table), s.fitness});
    }

    std::vector<std::size_t> picked;
    std::vector<std::size_t> worst;
    while (eval.evaluations() < config.budget) {
        picked.clear();
        while (picked.size() < config.tournament_size) {
            const auto c = rand.below(population.size());
            if (std::find(picked.begin(), picked.end(), c) == picked.end()) picked.push_back(c);
        }
        // Worst of the tournament, ties broken uniformly.
        worst.clear();
        for (auto c : picked) {
            if (worst.empty() || population[c].fitness < population[worst[0]].fitness) {
                worst.assign(1, c);
            } else if (population[c].fitness == population[worst[0]].fitness) {
                worst.push_back(c);
            }
        }
        const std::size_t loser = worst[rand.below(worst.size())];
        picked.erase(std::find(picked.begin(), picked.end(), loser));
        // Larger tournaments breed from the two fittest survivors.
        std::stable_sort(picked.begin(), picked.end(),
                         [&](std::size_t a, std::size_t b) { return population[a].fitness > population[b].fitness; });

        TruthTable child = crossover(population[picked[0]].table, population[picked[1]].table, config.crossover, rand);
        if (rand.bernoulli(config.mutation_probability)) {
            const auto op = config.mutation_ops[rand.below(config.mutation_ops.size())];
            child = mutate(std::move(child), op, rand);
        }
        auto s = eval.evaluate(std::move(child));
        tracker.offer(s.table, s.fitness, eval.evaluations());
        population[loser] = {std::move(s.table), s.fitness};
    }
    auto record = tracker.finish(eval.evaluations());
    record.descents = 1;
    return record;
}

}  // namespace boolnl::search
