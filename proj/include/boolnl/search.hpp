#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "boolnl/crossover.hpp"
#include "boolnl/fitness.hpp"
#include "boolnl/mutation.hpp"
#include "boolnl/random.hpp"
#include "boolnl/truth_table.hpp"

namespace boolnl::search {

/// Each bit independent and uniform.
TruthTable random_function(int num_vars, RandomSource& rand);

/// A solution together with its spectrum and fitness.
struct SearchState {
    TruthTable table;
    std::vector<std::int32_t> spectrum;
    FitnessValue fitness;
};

/// Fitness oracle with evaluation accounting. Flip-type mutations (every kind
/// except rotation) are scored from the current spectrum in O(2^n) when
/// `incremental` is set; otherwise every candidate gets a full transform.
class Evaluator {
public:
    Evaluator(int num_vars, FitnessKind kind, bool incremental = true);

    int num_vars() const { return n_; }
    FitnessKind kind() const { return kind_; }
    std::uint64_t evaluations() const { return evaluations_; }

    /// Full evaluation; costs one.
    SearchState evaluate(TruthTable table);
    /// Fitness of `state` mutated by `m`, costing one; nullopt (free) when
    /// the mutation is a no-op on this table.
    std::optional<FitnessValue> probe(const SearchState& state, const MutationDescriptor& m);
    /// The mutated state, without charging an evaluation. `m` must be effective.
    SearchState advance(const SearchState& state, const MutationDescriptor& m) const;

private:
    /// Bits toggled by an effective flip-type mutation (second may be absent).
    std::optional<std::pair<std::uint32_t, std::int64_t>> flipped(const MutationDescriptor& m) const;
    FitnessValue score_flips(const SearchState& s, std::uint32_t i, std::int64_t j) const;

    int n_;
    std::size_t len_;
    FitnessKind kind_;
    bool incremental_;
    std::uint64_t evaluations_ = 0;
    mutable std::vector<std::int32_t> scratch_;
};

enum class GaMutation { BitFlip, TwoBitFlip, Mixing };

std::string_view ga_mutation_name(GaMutation op);

struct GaConfig {
    int num_vars = 8;
    std::size_t population_size = 100;
    std::size_t tournament_size = 3;
    CrossoverKind crossover = CrossoverKind::UniformRandom;
    std::vector<GaMutation> mutation_ops{GaMutation::BitFlip, GaMutation::TwoBitFlip, GaMutation::Mixing};
    double mutation_probability = 0.5;
    FitnessKind fitness = FitnessKind::Nonlinearity;
    std::uint64_t budget = 500000;
    std::uint64_t seed = 1;

    /// Throws ConfigInvalid.
    void validate() const;
};

enum class RevertMode {
    Chain,   // every accepted solution can be revisited
    Single,  // only the immediate predecessor is kept
};

struct LsConfig {
    int num_vars = 8;
    std::vector<MutationKind> operators{MutationKind::TwoBitFlip, MutationKind::BitFlip};
    bool revert = false;
    RevertMode revert_mode = RevertMode::Chain;
    FitnessKind fitness = FitnessKind::MaxCountRefined;
    std::uint64_t budget = 500000;
    std::uint64_t seed = 1;
    /// Start over from a fresh random function after convergence until the
    /// budget is spent. Off = a single descent.
    bool restart_on_convergence = true;
    /// Scan every neighborhood in a per-solution random order; off = canonical.
    bool randomized_order = true;
    bool incremental = true;
    /// Fixed first solution instead of a random one.
    std::optional<TruthTable> start;

    /// Throws ConfigInvalid.
    void validate() const;
};

struct TrajectoryPoint {
    std::uint64_t evaluation;
    FitnessValue best;
};

struct RunRecord {
    std::string algorithm;  // "ga", "ls" or "ls-r"
    std::string config;     // JSON echo of the configuration
    std::vector<TrajectoryPoint> trajectory;  // best-so-far, on every improvement
    TruthTable best;
    FitnessValue best_fitness;
    std::uint64_t evaluations = 0;
    double seconds = 0;
    std::uint64_t acceptances = 0;
    /// Most predecessors held at once by the revert chain (LS-R).
    std::uint64_t max_chain_depth = 0;
    /// Local searches started (1 without restarts).
    std::uint64_t descents = 0;
    /// True when the run stopped because the search converged, not the budget.
    bool converged = false;
};

RunRecord ga_run(const GaConfig& config);
/// Greedy first-improvement local search; config.revert must be false.
RunRecord ls_run(const LsConfig& config);
/// Local search with revert; config.revert must be true.
RunRecord ls_revert_run(const LsConfig& config);
/// Dispatches on config.revert.
RunRecord local_search(const LsConfig& config);

std::string config_json(const GaConfig& config);
std::string config_json(const LsConfig& config);
/// Trajectory keeps every k-th point plus the last one.
std::string to_json(const RunRecord& record, std::size_t every_kth = 1);

using AlgorithmConfig = std::variant<GaConfig, LsConfig>;

struct ExperimentEntry {
    std::string id;
    AlgorithmConfig config;
};

struct Summary {
    double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
};

/// Linear-interpolated quartiles. Throws ConfigInvalid on empty input.
Summary summarize(std::span<const double> values);

struct ConfigResult {
    std::string id;
    std::vector<RunRecord> runs;
    Summary final_nl;
    Summary final_fitness;
};

struct ExperimentResult {
    std::uint64_t base_seed = 0;
    std::vector<ConfigResult> configs;
};

/// Run r of every entry uses seed derive_seed(base_seed, r), so configs are
/// compared on paired seeds. Runs are spread over `threads` workers; results
/// do not depend on the thread count apart from wall time.
ExperimentResult run_experiment(const std::vector<ExperimentEntry>& entries, std::size_t runs,
                                std::uint64_t base_seed, unsigned threads = 1);

/// config-id,run-id,final-nl,final-fitness,evaluations,seconds
std::string runs_csv(const ExperimentResult& result);
/// Per config: five-number summary plus mean of final nl and fitness.
std::string summary_csv(const ExperimentResult& result);

}  // namespace boolnl::search
