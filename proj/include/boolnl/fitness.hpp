#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "boolnl/truth_table.hpp"
#include "boolnl/walsh.hpp"

namespace boolnl {

enum class FitnessKind {
    Nonlinearity,     // fitness 1: nl alone
    MaxCountRefined,  // fitness 2: nl + (2^n - #max) / 2^n
};

std::string_view fitness_name(FitnessKind kind);

/// nl plus a refinement numerator / denominator in [0, 1). Compared exactly.
class FitnessValue {
public:
    FitnessValue(int nl, std::uint32_t refinement_numerator, std::uint32_t refinement_denominator);

    int nl() const { return nl_; }
    std::uint32_t refinement_numerator() const { return num_; }
    std::uint32_t refinement_denominator() const { return den_; }
    double refinement() const { return static_cast<double>(num_) / den_; }
    double value() const { return nl_ + refinement(); }

    friend std::weak_ordering operator<=>(const FitnessValue& lhs, const FitnessValue& rhs);
    friend bool operator==(const FitnessValue& lhs, const FitnessValue& rhs) {
        return (lhs <=> rhs) == std::weak_ordering::equivalent;
    }

    std::string to_string() const;

private:
    int nl_;
    std::uint32_t num_;
    std::uint32_t den_;
};

FitnessValue fitness_from_spectrum(FitnessKind kind, const WalshSpectrum& spectrum);

/// Same as above, for callers holding raw coefficients of an n-variable spectrum.
FitnessValue fitness_from_coeffs(FitnessKind kind, std::span<const std::int32_t> coeffs);

FitnessValue fitness1(const TruthTable& tt);
FitnessValue fitness2(const TruthTable& tt);
FitnessValue evaluate_fitness(FitnessKind kind, const TruthTable& tt);

}  // namespace boolnl
