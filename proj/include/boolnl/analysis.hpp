#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolnl/crossover.hpp"
#include "boolnl/mutation.hpp"

namespace boolnl::analysis {

/// How a study walks the function space. Studies work on n <= 6; exhaustive
/// walks are limited to n <= 4 unless `allow_large_exhaustive` is set.
struct SamplePlan {
    enum class Mode { Exhaustive, Sampled };

    Mode mode = Mode::Exhaustive;
    /// Number of uniformly drawn functions in sampled mode.
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 1;
    /// Sampled mode only: every function with nl below this value is
    /// enumerated exactly (as an affine function plus a low-weight error) and
    /// uniform draws landing in those classes are discarded. Must not exceed
    /// 2^n / 4, where the affine balls stop being disjoint.
    int enumerate_below_nl = 0;
    /// Crossover studies: pairs drawn per (nl1, nl2) cell. Cells with fewer
    /// possible pairs are enumerated completely.
    std::uint64_t pairs_per_cell = 10000;
    bool allow_large_exhaustive = false;
    /// Worker cap; results do not depend on it.
    unsigned threads = 1;

    static SamplePlan exhaustive(unsigned threads = 1);
    /// round(fraction * 2^(2^n)) uniform draws.
    static SamplePlan sampled_fraction(int num_vars, double fraction, std::uint64_t seed, unsigned threads = 1);
    static SamplePlan sampled(std::uint64_t count, std::uint64_t seed, unsigned threads = 1);

    /// Throws ConfigInvalid. Crossover studies pass false: they size their
    /// samples by pairs_per_cell.
    void validate(int num_vars, bool uses_sample_count = true) const;
    std::string describe() const;
};

/// Largest nonlinearity index a study can encounter for n variables.
int max_nonlinearity(int num_vars);

struct ConsistencyEntry {
    MutationDescriptor position;
    /// Functions on which the mutation was effective.
    std::uint64_t examined = 0;
    bool consistent = true;
    /// Common spectrum change when consistent and examined > 0.
    std::optional<std::vector<std::int32_t>> delta;
};

struct ConsistencyReport {
    MutationKind kind;
    int num_vars;
    SamplePlan plan;
    std::vector<ConsistencyEntry> entries;

    bool all_consistent() const;
};

ConsistencyReport consistency_study(MutationKind kind, int num_vars, const SamplePlan& plan);

struct TransitionCounts {
    std::uint64_t increase = 0;
    std::uint64_t same = 0;
    std::uint64_t decrease = 0;

    std::uint64_t total() const { return increase + same + decrease; }
    /// Percentages (increase, same, decrease); zeros when total() == 0.
    std::array<double, 3> percentages() const;
    TransitionCounts& operator+=(const TransitionCounts& other);
    friend bool operator==(const TransitionCounts&, const TransitionCounts&) = default;
};

struct TransitionRow {
    /// Mutation position for per-position rows; empty for the collapsed row.
    std::optional<MutationDescriptor> position;
    /// Indexed by starting nl, 0..max_nonlinearity(n).
    std::vector<TransitionCounts> by_start_nl;
};

struct TransitionTable {
    MutationKind kind;
    int num_vars;
    SamplePlan plan;
    bool per_position;
    std::vector<TransitionRow> rows;
    /// Starting-nl columns whose counts come from complete classes.
    std::vector<bool> exact_column;
};

/// Rotation keeps one row per amount. Every other kind is collapsed into a
/// single summed row after checking that all positions agree (exactly on
/// complete classes, within sampling noise otherwise); disagreement raises
/// CollapseViolation.
TransitionTable transition_study(MutationKind kind, int num_vars, const SamplePlan& plan);

/// One row per position for any kind, without collapsing.
TransitionTable transition_study_by_position(MutationKind kind, int num_vars, const SamplePlan& plan);

/// Sums the per-position rows of `table` into one row after the agreement
/// check described above. Throws CollapseViolation.
TransitionTable collapse_positions(const TransitionTable& table);

/// Success pattern bits over (rotation, bit flip, two bit flip).
struct ReachabilityPattern {
    static constexpr unsigned kRotation = 4;
    static constexpr unsigned kBitFlip = 2;
    static constexpr unsigned kTwoBitFlip = 1;
};

struct ReachabilityCensus {
    int num_vars;
    SamplePlan plan;
    /// counts[pattern][nl]
    std::array<std::vector<std::uint64_t>, 8> counts;
    std::vector<bool> exact_column;

    std::uint64_t column_total(int nl) const;
    double percentage(unsigned pattern, int nl) const;
};

ReachabilityCensus reachability_study(int num_vars, const SamplePlan& plan);

struct CrossoverCell {
    std::uint64_t greater = 0;  // child nl above both parents
    std::uint64_t lower = 0;    // child nl below both parents
    std::uint64_t between = 0;
    bool exhaustive = false;

    std::uint64_t pairs() const { return greater + lower + between; }
    /// Percentages (greater, lower, between).
    std::array<double, 3> percentages() const;
};

/// Exhaustive plans cross every ordered pair of functions (n <= 3 only).
/// Sampled plans draw pairs_per_cell pairs per cell, or take the full
/// product when it is no larger.
struct CrossoverMatrix {
    int num_vars;
    CrossoverKind kind;
    SamplePlan plan;
    /// cells[nl of first parent][nl of second parent]
    std::vector<std::vector<CrossoverCell>> cells;
};

CrossoverMatrix crossover_study(CrossoverKind kind, int num_vars, const SamplePlan& plan);

struct NonlinearityCensus {
    int num_vars;
    SamplePlan plan;
    std::vector<std::uint64_t> counts;
    std::vector<bool> exact_column;
};

NonlinearityCensus nl_census(int num_vars, const SamplePlan& plan);

}  // namespace boolnl::analysis
