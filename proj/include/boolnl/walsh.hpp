#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boolnl/truth_table.hpp"

namespace boolnl {

/// Walsh-Hadamard coefficients W_f(a) = sum_x (-1)^(f(x) xor a.x), indexed
/// by a. Magnitudes are bounded by 2^n <= 65536, so 32-bit storage suffices.
class WalshSpectrum {
public:
    WalshSpectrum(int num_vars, std::vector<std::int32_t> coeffs);

    int num_vars() const { return n_; }
    std::size_t size() const { return coeffs_.size(); }
    std::int32_t operator[](std::size_t a) const { return coeffs_[a]; }
    std::span<const std::int32_t> coeffs() const { return coeffs_; }

    std::int32_t max_abs() const;
    /// Number of indices a with |W(a)| equal to max_abs().
    std::size_t max_abs_count() const;

    friend bool operator==(const WalshSpectrum&, const WalshSpectrum&) = default;

private:
    int n_;
    std::vector<std::int32_t> coeffs_;
};

/// Additive change to a spectrum.
struct DeltaVector {
    int num_vars;
    std::vector<std::int32_t> deltas;

    DeltaVector operator-() const;
    friend bool operator==(const DeltaVector&, const DeltaVector&) = default;
};

/// Unnormalized in-place fast Walsh-Hadamard butterfly; values.size() must be
/// a power of two.
void walsh_butterfly(std::span<std::int32_t> values);

WalshSpectrum walsh_transform(const TruthTable& tt);

/// Direct O(4^n) evaluation of the defining sum. Reference for testing only.
WalshSpectrum walsh_transform_naive(const TruthTable& tt);

/// Throws NotABooleanSpectrum when the spectrum has no Boolean preimage.
TruthTable inverse_walsh(const WalshSpectrum& spectrum);

/// 2^(n-1) - max|W| / 2.
int nonlinearity(const WalshSpectrum& spectrum);

bool satisfies_parseval(const WalshSpectrum& spectrum);

/// Element-wise sum. Throws DimensionMismatch on length mismatch.
WalshSpectrum apply_spectrum_delta(const WalshSpectrum& spectrum, const DeltaVector& delta);

/// Exact value of 2^(n-1) - 2^(n/2-1), held as (rational - sqrt2 * sqrt(2)) / denominator.
/// For odd n the bound is irrational.
struct CoveringRadiusBound {
    int num_vars;
    std::int64_t rational;
    std::int64_t sqrt2;
    std::int64_t denominator;

    bool is_integral() const { return sqrt2 == 0 && rational % denominator == 0; }
    double value() const;
    /// Largest integer not exceeding the bound, computed without floating point.
    std::int64_t floor() const;
    std::string to_string() const;
};

CoveringRadiusBound covering_radius_bound(int num_vars);

std::string to_json(const WalshSpectrum& spectrum);

}  // namespace boolnl
