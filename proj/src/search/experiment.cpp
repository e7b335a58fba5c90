#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "boolnl/errors.hpp"
#include "boolnl/search.hpp"

namespace boolnl::search {

using nlohmann::json;

namespace {

json fitness_json(const FitnessValue& f) {
    return {{"nl", f.nl()},
            {"refinement_numerator", f.refinement_numerator()},
            {"refinement_denominator", f.refinement_denominator()},
            {"value", f.value()}};
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string config_json(const GaConfig& c) {
    json ops = json::array();
    for (auto op : c.mutation_ops) ops.push_back(ga_mutation_name(op));
    json j{{"algorithm", "ga"},
           {"n", c.num_vars},
           {"population_size", c.population_size},
           {"tournament_size", c.tournament_size},
           {"crossover", crossover_name(c.crossover)},
           {"mutation_ops", ops},
           {"mutation_probability", c.mutation_probability},
           {"fitness", fitness_name(c.fitness)},
           {"budget", c.budget},
           {"seed", c.seed}};
    return j.dump();
}

std::string config_json(const LsConfig& c) {
    json j{{"algorithm", c.revert ? "ls-r" : "ls"},
           {"n", c.num_vars},
           {"operators", format_operator_list(c.operators)},
           {"revert_mode", c.revert_mode == RevertMode::Chain ? "chain" : "single"},
           {"fitness", fitness_name(c.fitness)},
           {"budget", c.budget},
           {"seed", c.seed},
           {"restart_on_convergence", c.restart_on_convergence},
           {"randomized_order", c.randomized_order},
           {"incremental", c.incremental}};
    if (c.start) j["start"] = c.start->to_hex();
    return j.dump();
}

std::string to_json(const RunRecord& r, std::size_t every_kth) {
    if (every_kth == 0) every_kth = 1;
    json traj = json::array();
    for (std::size_t k = 0; k < r.trajectory.size(); ++k) {
        if (k % every_kth != 0 && k + 1 != r.trajectory.size()) continue;
        const auto& p = r.trajectory[k];
        traj.push_back({{"evaluation", p.evaluation}, {"best", fitness_json(p.best)}});
    }
    json j{{"algorithm", r.algorithm},
           {"config", json::parse(r.config)},
           {"best_table", r.best.to_hex()},
           {"best_fitness", fitness_json(r.best_fitness)},
           {"evaluations", r.evaluations},
           {"acceptances", r.acceptances},
           {"max_chain_depth", r.max_chain_depth},
           {"descents", r.descents},
           {"converged", r.converged},
           {"trajectory", traj}};
    return j.dump(2) + "\n";
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw ConfigInvalid("summary of an empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, v.size() - 1);
        return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
    };
    Summary s;
    s.min = v.front();
    s.max = v.back();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    double sum = 0;
    for (double x : v) sum += x;
    s.mean = sum / static_cast<double>(v.size());
    return s;
}

ExperimentResult run_experiment(const std::vector<ExperimentEntry>& entries, std::size_t runs, std::uint64_t base_seed,
                                unsigned threads) {
    if (runs == 0) throw ConfigInvalid("experiment: runs must be at least 1");
    if (entries.empty()) throw ConfigInvalid("experiment: no configurations");
    for (const auto& e : entries) {
        std::visit([](const auto& c) { c.validate(); }, e.config);
    }
    const std::size_t jobs = entries.size() * runs;
    std::vector<std::optional<RunRecord>> slots(jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const auto& entry = entries[job / runs];
            const std::uint64_t seed = RandomSource::derive_seed(base_seed, job % runs);
            slots[job] = std::visit(
                [seed](auto c) {
                    c.seed = seed;
                    if constexpr (std::is_same_v<decltype(c), GaConfig>) {
                        return ga_run(c);
                    } else {
                        return local_search(c);
                    }
                },
                entry.config);
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ExperimentResult result;
    result.base_seed = base_seed;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        ConfigResult cr;
        cr.id = entries[e].id;
        std::vector<double> nl;
        std::vector<double> fit;
        for (std::size_t r = 0; r < runs; ++r) {
            auto& rec = *slots[e * runs + r];
            nl.push_back(rec.best_fitness.nl());
            fit.push_back(rec.best_fitness.value());
            cr.runs.push_back(std::move(rec));
        }
        cr.final_nl = summarize(nl);
        cr.final_fitness = summarize(fit);
        result.configs.push_back(std::move(cr));
    }
    return result;
}

std::string runs_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "config-id,run-id,final-nl,final-fitness,evaluations,seconds\n";
    for (const auto& c : result.configs) {
        for (std::size_t r = 0; r < c.runs.size(); ++r) {
            const auto& rec = c.runs[r];
            out << c.id << ',' << r << ',' << rec.best_fitness.nl() << ',' << fmt(rec.best_fitness.value()) << ','
                << rec.evaluations << ',' << fmt(rec.seconds) << '\n';
        }
    }
    return out.str();
}

std::string summary_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "config-id,runs,nl-min,nl-q1,nl-median,nl-mean,nl-q3,nl-max,fitness-mean\n";
    for (const auto& c : result.configs) {
        const auto& s = c.final_nl;
        out << c.id << ',' << c.runs.size() << ',' << fmt(s.min) << ',' << fmt(s.q1) << ',' << fmt(s.median) << ','
            << fmt(s.mean) << ',' << fmt(s.q3) << ',' << fmt(s.max) << ',' << fmt(c.final_fitness.mean) << '\n';
    }
    return out.str();
}

}  // namespace boolnl::search
