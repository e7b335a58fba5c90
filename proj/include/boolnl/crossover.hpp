#pragma once

#include <optional>
#include <string_view>

#include "boolnl/random.hpp"
#include "boolnl/truth_table.hpp"

namespace boolnl {

enum class CrossoverKind {
    SinglePointMid,     // first half from p1, second half from p2
    UniformEvenOdd,     // even indices from p1, odd from p2
    SinglePointRandom,  // cut point uniform in [1, L-1]
    UniformRandom,      // every bit from either parent with probability 1/2
};

/// single-point-mid, uniform-evenodd, single-point, uniform.
std::string_view crossover_name(CrossoverKind kind);
std::optional<CrossoverKind> parse_crossover(std::string_view text);

/// Throws DimensionMismatch when the parents differ in n. Deterministic kinds
/// do not touch `rand`.
TruthTable crossover(const TruthTable& p1, const TruthTable& p2, CrossoverKind kind, RandomSource& rand);

/// Picks positions a < b uniformly and Fisher-Yates shuffles bits [a, b].
TruthTable mixing_mutation(const TruthTable& tt, RandomSource& rand);

}  // namespace boolnl
