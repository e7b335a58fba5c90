#include "boolnl/fitness.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace boolnl {

std::string_view fitness_name(FitnessKind kind) {
    return kind == FitnessKind::Nonlinearity ? "f1" : "f2";
}

FitnessValue::FitnessValue(int nl, std::uint32_t refinement_numerator,
                           std::uint32_t refinement_denominator)
    : nl_(nl), num_(refinement_numerator), den_(refinement_denominator) {
    if (nl < 0 || den_ == 0 || num_ >= den_) {
        throw std::invalid_argument("fitness refinement must lie in [0, 1) and nl must be non-negative");
    }
}

std::weak_ordering operator<=>(const FitnessValue& lhs, const FitnessValue& rhs) {
    if (lhs.nl_ != rhs.nl_) return lhs.nl_ <=> rhs.nl_;
    const std::uint64_t a = std::uint64_t{lhs.num_} * rhs.den_;
    const std::uint64_t b = std::uint64_t{rhs.num_} * lhs.den_;
    return a <=> b;
}

std::string FitnessValue::to_string() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", value());
    return buf;
}

FitnessValue fitness_from_coeffs(FitnessKind kind, std::span<const std::int32_t> coeffs) {
    std::int32_t max_abs = 0;
    std::uint32_t at_max = 0;
    for (auto c : coeffs) {
        const std::int32_t m = std::abs(c);
        if (m > max_abs) {
            max_abs = m;
            at_max = 1;
        } else if (m == max_abs) {
            ++at_max;
        }
    }
    const auto len = static_cast<std::uint32_t>(coeffs.size());
    const int nl = static_cast<int>(len / 2) - max_abs / 2;
    if (kind == FitnessKind::Nonlinearity) return FitnessValue(nl, 0, len);
    return FitnessValue(nl, len - at_max, len);
}

FitnessValue fitness_from_spectrum(FitnessKind kind, const WalshSpectrum& spectrum) {
    return fitness_from_coeffs(kind, spectrum.coeffs());
}

FitnessValue fitness1(const TruthTable& tt) {
    return fitness_from_spectrum(FitnessKind::Nonlinearity, walsh_transform(tt));
}

FitnessValue fitness2(const TruthTable& tt) {
    return fitness_from_spectrum(FitnessKind::MaxCountRefined, walsh_transform(tt));
}

FitnessValue evaluate_fitness(FitnessKind kind, const TruthTable& tt) {
    return fitness_from_spectrum(kind, walsh_transform(tt));
}

}  // namespace boolnl
