#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace boolnl {

/// Seedable, single-owner random stream. Bounded draws are implemented here
/// rather than through <random> distributions so sequences are identical
/// across standard libraries.
class RandomSource {
public:
    using result_type = std::uint64_t;

    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    /// Independent stream for worker/run `stream`, derived from `seed`.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
    RandomSource split(std::uint64_t stream) const { return RandomSource(derive_seed(seed_, stream)); }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }
    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform double in [0, 1) with 53 random bits.
    double unit();
    bool bernoulli(double p) { return unit() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace boolnl
