#include "boolnl/crossover.hpp"

#include <array>
#include <utility>

#include "boolnl/errors.hpp"

namespace boolnl {

namespace {

constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

constexpr std::array<std::pair<CrossoverKind, std::string_view>, 4> kNames = {{
    {CrossoverKind::SinglePointMid, "single-point-mid"},
    {CrossoverKind::UniformEvenOdd, "uniform-evenodd"},
    {CrossoverKind::SinglePointRandom, "single-point"},
    {CrossoverKind::UniformRandom, "uniform"},
}};

// Bits [0, cut) from p1, the rest from p2.
TruthTable splice(const TruthTable& p1, const TruthTable& p2, std::size_t cut) {
    TruthTable child = p2;
    auto out = child.words();
    const auto first = p1.words();
    for (std::size_t k = 0; k < out.size(); ++k) {
        const std::size_t lo = k * 64;
        if (cut >= lo + 64) {
            out[k] = first[k];
        } else if (cut > lo) {
            const std::uint64_t mask = (std::uint64_t{1} << (cut - lo)) - 1;
            out[k] = (first[k] & mask) | (out[k] & ~mask);
        }
    }
    return child;
}

}  // namespace

std::string_view crossover_name(CrossoverKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "?";
}

std::optional<CrossoverKind> parse_crossover(std::string_view text) {
    for (const auto& [k, name] : kNames) {
        if (name == text) return k;
    }
    return std::nullopt;
}

TruthTable crossover(const TruthTable& p1, const TruthTable& p2, CrossoverKind kind, RandomSource& rand) {
    if (p1.num_vars() != p2.num_vars()) {
        throw DimensionMismatch("crossover parents must have the same number of variables");
    }
    const std::size_t len = p1.size();
    switch (kind) {
        case CrossoverKind::SinglePointMid:
            return splice(p1, p2, len / 2);
        case CrossoverKind::SinglePointRandom:
            return splice(p1, p2, 1 + rand.below(len - 1));
        case CrossoverKind::UniformEvenOdd: {
            TruthTable child = p1;
            auto out = child.words();
            const auto second = p2.words();
            for (std::size_t k = 0; k < out.size(); ++k) {
                out[k] = (out[k] & kEvenBits) | (second[k] & ~kEvenBits);
            }
            out.back() &= child.tail_mask();
            return child;
        }
        case CrossoverKind::UniformRandom: {
            TruthTable child = p1;
            auto out = child.words();
            const auto second = p2.words();
            for (std::size_t k = 0; k < out.size(); ++k) {
                const std::uint64_t take_second = rand.next();
                out[k] = (out[k] & ~take_second) | (second[k] & take_second);
            }
            out.back() &= child.tail_mask();
            return child;
        }
    }
    throw std::logic_error("unreachable");
}

TruthTable mixing_mutation(const TruthTable& tt, RandomSource& rand) {
    const std::size_t len = tt.size();
    std::size_t a = rand.below(len);
    std::size_t b = rand.below(len - 1);
    if (b >= a) ++b;
    if (a > b) std::swap(a, b);
    TruthTable out = tt;
    for (std::size_t i = b; i > a; --i) {
        const std::size_t j = a + rand.below(i - a + 1);
        const bool vi = out.get(i);
        const bool vj = out.get(j);
        out.set(i, vj);
        out.set(j, vi);
    }
    return out;
}

}  // namespace boolnl
