#pragma once

// Word-level view of the function space for n <= 6: a function is one
// 64-bit word, neighbors are bit tricks on that word, and nonlinearity is the
// minimum popcount distance to the 2^n linear functions and their complements.

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "boolnl/mutation.hpp"

namespace boolnl::analysis::detail {

/// One canonical mutation position, pre-decoded to a flip mask or a rotation.
struct WordMove {
    std::uint64_t mask = 0;
    std::uint32_t rotation = 0;
};

class SmallSpace {
public:
    static constexpr int kMaxVars = 6;

    explicit SmallSpace(int num_vars);

    int num_vars() const { return n_; }
    std::uint32_t length() const { return len_; }
    std::uint64_t mask() const { return mask_; }
    std::uint64_t linear(std::size_t a) const { return linear_[a]; }
    /// 2^(2^n); only valid for n <= 5.
    std::uint64_t function_count() const { return std::uint64_t{1} << len_; }

    int nonlinearity(std::uint64_t f) const {
        if (!table_.empty()) return table_[f];
        return nonlinearity_by_distance(f);
    }
    int nonlinearity_by_distance(std::uint64_t f) const;

    /// Spectrum by the library butterfly.
    void spectrum(std::uint64_t f, std::span<std::int32_t> out) const;

    const std::vector<WordMove>& moves(MutationKind kind) const {
        return moves_[static_cast<std::size_t>(kind)];
    }

    std::optional<std::uint64_t> apply(MutationKind kind, std::uint64_t f, const WordMove& move) const {
        switch (kind) {
            case MutationKind::BitSet:
            case MutationKind::TwoBitSet:
                if (f & move.mask) return std::nullopt;
                return f | move.mask;
            case MutationKind::BitReset:
            case MutationKind::TwoBitReset:
                if ((f & move.mask) != move.mask) return std::nullopt;
                return f & ~move.mask;
            case MutationKind::BitFlip:
            case MutationKind::TwoBitFlip:
                return f ^ move.mask;
            case MutationKind::TwoBitFlipIfEqual: {
                const int ones = std::popcount(f & move.mask);
                if (ones == 1) return std::nullopt;
                return f ^ move.mask;
            }
            case MutationKind::Rotation:
                return rotate(f, move.rotation);
        }
        return std::nullopt;
    }

    std::uint64_t rotate(std::uint64_t f, std::uint32_t r) const {
        return ((f >> r) | (f << (len_ - r))) & mask_;
    }

private:
    int n_;
    std::uint32_t len_;
    std::uint64_t mask_;
    std::array<std::uint64_t, 64> linear_{};
    std::array<std::vector<WordMove>, 8> moves_;
    /// nl per function, filled for n <= 4.
    std::vector<std::uint8_t> table_;
};

/// Per-function helper for "does some neighbor beat nl?" queries. Linear
/// functions are ordered by their distance to f so a failing neighbor is
/// usually rejected on the first popcount. A k-bit change moves every
/// distance by at most k, so flips only need the first few entries.
class ImprovementProbe {
public:
    ImprovementProbe(const SmallSpace& space, std::uint64_t f);

    int nonlinearity() const { return nl_; }

    /// True when nl(g) > nonlinearity(), given that g differs from f in at
    /// most `changed_bits` positions (0 = unknown, check everything).
    bool improves(std::uint64_t g, int changed_bits) const;

private:
    const SmallSpace* space_;
    int nl_;
    std::array<std::uint8_t, 64> order_{};
    /// near_[k]: entries of order_ within distance nl + k of f.
    std::array<std::uint32_t, 3> near_{};
};

}  // namespace boolnl::analysis::detail
