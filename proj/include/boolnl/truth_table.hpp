#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boolnl {

/// Value vector of an n-variable Boolean function, bit-packed into 64-bit
/// words. Index x is the integer value of the input vector; bit 0 of word 0
/// holds f(0...0). Bits past 2^n in the last word are always zero.
class TruthTable {
public:
    static constexpr int kMaxVars = 16;

    /// All-zero table.
    explicit TruthTable(int num_vars);

    static TruthTable zeros(int num_vars) { return TruthTable(num_vars); }
    static TruthTable ones(int num_vars);
    static TruthTable from_bits(int num_vars, std::span<const std::uint8_t> bits);
    /// Single-word construction for n <= 6.
    static TruthTable from_word(int num_vars, std::uint64_t word);
    /// Inverse of to_hex(). Throws std::invalid_argument on malformed input.
    static TruthTable from_hex(int num_vars, std::string_view hex);

    int num_vars() const { return n_; }
    std::size_t size() const { return std::size_t{1} << n_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    bool operator[](std::size_t i) const { return get(i); }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    std::size_t weight() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }
    /// Whole table as one word; only meaningful for n <= 6.
    std::uint64_t word() const { return words_[0]; }
    /// Mask of the valid bits in the last word.
    std::uint64_t tail_mask() const;

    /// Bit at index k moves to index (k - r) mod 2^n.
    TruthTable rotated_left(std::size_t r) const;

    /// Hex string, most significant digit first; bit 0 of the table is the
    /// least significant bit of the number.
    std::string to_hex() const;

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

}  // namespace boolnl
