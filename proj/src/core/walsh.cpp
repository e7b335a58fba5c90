#include "boolnl/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "boolnl/errors.hpp"

namespace boolnl {

WalshSpectrum::WalshSpectrum(int num_vars, std::vector<std::int32_t> coeffs)
    : n_(num_vars), coeffs_(std::move(coeffs)) {
    if (num_vars < 1 || num_vars > TruthTable::kMaxVars) {
        throw std::invalid_argument("variable count must lie in [1, 16]");
    }
    if (coeffs_.size() != (std::size_t{1} << num_vars)) {
        throw DimensionMismatch("spectrum length must equal 2^n");
    }
}

std::int32_t WalshSpectrum::max_abs() const {
    std::int32_t m = 0;
    for (auto c : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

std::size_t WalshSpectrum::max_abs_count() const {
    const std::int32_t m = max_abs();
    std::size_t count = 0;
    for (auto c : coeffs_) count += std::abs(c) == m;
    return count;
}

DeltaVector DeltaVector::operator-() const {
    DeltaVector out{num_vars, deltas};
    for (auto& d : out.deltas) d = -d;
    return out;
}

void walsh_butterfly(std::span<std::int32_t> values) {
    const std::size_t len = values.size();
    for (std::size_t half = 1; half < len; half <<= 1) {
        for (std::size_t block = 0; block < len; block += 2 * half) {
            for (std::size_t j = block; j < block + half; ++j) {
                const std::int32_t x = values[j];
                const std::int32_t y = values[j + half];
                values[j] = x + y;
                values[j + half] = x - y;
            }
        }
    }
}

WalshSpectrum walsh_transform(const TruthTable& tt) {
    std::vector<std::int32_t> values(tt.size());
    for (std::size_t x = 0; x < values.size(); ++x) values[x] = tt.get(x) ? -1 : 1;
    walsh_butterfly(values);
    return WalshSpectrum(tt.num_vars(), std::move(values));
}

WalshSpectrum walsh_transform_naive(const TruthTable& tt) {
    const std::size_t len = tt.size();
    std::vector<std::int32_t> coeffs(len, 0);
    for (std::size_t a = 0; a < len; ++a) {
        std::int32_t sum = 0;
        for (std::size_t x = 0; x < len; ++x) {
            const unsigned exponent = static_cast<unsigned>(tt.get(x)) ^ (std::popcount(a & x) & 1u);
            sum += exponent ? -1 : 1;
        }
        coeffs[a] = sum;
    }
    return WalshSpectrum(tt.num_vars(), std::move(coeffs));
}

TruthTable inverse_walsh(const WalshSpectrum& spectrum) {
    std::vector<std::int32_t> values(spectrum.coeffs().begin(), spectrum.coeffs().end());
    walsh_butterfly(values);
    const auto len = static_cast<std::int32_t>(values.size());
    TruthTable tt(spectrum.num_vars());
    for (std::size_t x = 0; x < values.size(); ++x) {
        if (values[x] == len) continue;
        if (values[x] == -len) {
            tt.set(x, true);
            continue;
        }
        throw NotABooleanSpectrum("spectrum does not belong to a Boolean function (value " +
                                  std::to_string(values[x]) + "/" + std::to_string(len) +
                                  " at index " + std::to_string(x) + ")");
    }
    return tt;
}

int nonlinearity(const WalshSpectrum& spectrum) {
    const auto half = static_cast<int>(spectrum.size() / 2);
    return half - spectrum.max_abs() / 2;
}

bool satisfies_parseval(const WalshSpectrum& spectrum) {
    std::int64_t sum = 0;
    for (auto c : spectrum.coeffs()) sum += std::int64_t{c} * c;
    const auto len = static_cast<std::int64_t>(spectrum.size());
    return sum == len * len;
}

WalshSpectrum apply_spectrum_delta(const WalshSpectrum& spectrum, const DeltaVector& delta) {
    if (delta.deltas.size() != spectrum.size()) {
        throw DimensionMismatch("delta length must equal spectrum length");
    }
    std::vector<std::int32_t> coeffs(spectrum.coeffs().begin(), spectrum.coeffs().end());
    for (std::size_t a = 0; a < coeffs.size(); ++a) coeffs[a] += delta.deltas[a];
    return WalshSpectrum(spectrum.num_vars(), std::move(coeffs));
}

double CoveringRadiusBound::value() const {
    return (static_cast<double>(rational) - static_cast<double>(sqrt2) * std::sqrt(2.0)) /
           static_cast<double>(denominator);
}

std::int64_t CoveringRadiusBound::floor() const {
    // k is admissible iff rational - k*den >= sqrt2*sqrt(2), checked on squares.
    const auto admissible = [this](std::int64_t k) {
        const std::int64_t r = rational - k * denominator;
        return r >= 0 && r * r >= 2 * sqrt2 * sqrt2;
    };
    auto k = static_cast<std::int64_t>(std::floor(value()));
    while (!admissible(k)) --k;
    while (admissible(k + 1)) ++k;
    return k;
}

std::string CoveringRadiusBound::to_string() const {
    if (sqrt2 == 0) return std::to_string(rational / denominator);
    std::string s = std::to_string(rational) + " - " +
                    (sqrt2 == 1 ? std::string() : std::to_string(sqrt2) + "*") + "sqrt(2)";
    if (denominator != 1) s = "(" + s + ")/" + std::to_string(denominator);
    return s;
}

CoveringRadiusBound covering_radius_bound(int num_vars) {
    if (num_vars < 1 || num_vars > 62) throw std::invalid_argument("covering radius bound needs 1 <= n <= 62");
    const std::int64_t top = std::int64_t{1} << (num_vars - 1);
    if (num_vars % 2 == 0) {
        return {num_vars, top - (std::int64_t{1} << (num_vars / 2 - 1)), 0, 1};
    }
    if (num_vars == 1) return {num_vars, 2, 1, 2};
    // 2^(n/2 - 1) = 2^((n-3)/2) * sqrt(2)
    return {num_vars, top, std::int64_t{1} << ((num_vars - 3) / 2), 1};
}

std::string to_json(const WalshSpectrum& spectrum) {
    std::string out = "[";
    for (std::size_t a = 0; a < spectrum.size(); ++a) {
        if (a) out += ',';
        out += std::to_string(spectrum[a]);
    }
    out += ']';
    return out;
}

}  // namespace boolnl
