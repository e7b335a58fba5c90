#include "boolnl/truth_table.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace boolnl {

namespace {

std::size_t word_count(int num_vars) {
    return ((std::size_t{1} << num_vars) + 63) / 64;
}

int hex_digit_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

TruthTable::TruthTable(int num_vars) : n_(num_vars) {
    if (num_vars < 1 || num_vars > kMaxVars) {
        throw std::invalid_argument("variable count must lie in [1, 16], got " +
                                    std::to_string(num_vars));
    }
    words_.assign(word_count(num_vars), 0);
}

TruthTable TruthTable::ones(int num_vars) {
    TruthTable t(num_vars);
    for (auto& w : t.words_) w = ~std::uint64_t{0};
    t.words_.back() &= t.tail_mask();
    return t;
}

TruthTable TruthTable::from_bits(int num_vars, std::span<const std::uint8_t> bits) {
    TruthTable t(num_vars);
    if (bits.size() != t.size()) {
        throw std::invalid_argument("bit sequence length must equal 2^n");
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1) throw std::invalid_argument("truth table entries must be 0 or 1");
        if (bits[i]) t.set(i, true);
    }
    return t;
}

TruthTable TruthTable::from_word(int num_vars, std::uint64_t word) {
    if (num_vars > 6) throw std::invalid_argument("from_word requires n <= 6");
    TruthTable t(num_vars);
    t.words_[0] = word & t.tail_mask();
    return t;
}

TruthTable TruthTable::from_hex(int num_vars, std::string_view hex) {
    TruthTable t(num_vars);
    const std::size_t digits = std::max<std::size_t>(1, t.size() / 4);
    if (hex.size() != digits) {
        throw std::invalid_argument("hex string for n=" + std::to_string(num_vars) + " must have " +
                                    std::to_string(digits) + " digits");
    }
    for (std::size_t d = 0; d < digits; ++d) {
        const int v = hex_digit_value(hex[digits - 1 - d]);
        if (v < 0) throw std::invalid_argument("invalid hex digit in truth table");
        for (int b = 0; b < 4; ++b) {
            const std::size_t index = d * 4 + b;
            if ((v >> b) & 1) {
                if (index >= t.size()) throw std::invalid_argument("hex value exceeds table length");
                t.set(index, true);
            }
        }
    }
    return t;
}

void TruthTable::set(std::size_t i, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= bit;
    } else {
        words_[i >> 6] &= ~bit;
    }
}

std::size_t TruthTable::weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += std::popcount(word);
    return w;
}

std::uint64_t TruthTable::tail_mask() const {
    const std::size_t len = size();
    return len >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
}

TruthTable TruthTable::rotated_left(std::size_t r) const {
    const std::size_t len = size();
    r %= len;
    if (r == 0) return *this;
    TruthTable out(n_);
    if (len <= 64) {
        const std::uint64_t w = words_[0];
        out.words_[0] = ((w >> r) | (w << (len - r))) & tail_mask();
        return out;
    }
    // Word-aligned tables: shift by whole words, then by the bit remainder.
    const std::size_t count = words_.size();
    const std::size_t word_shift = r / 64;
    const unsigned bit_shift = static_cast<unsigned>(r % 64);
    for (std::size_t k = 0; k < count; ++k) {
        const std::uint64_t lo = words_[(k + word_shift) % count];
        const std::uint64_t hi = words_[(k + word_shift + 1) % count];
        out.words_[k] = bit_shift == 0 ? lo : (lo >> bit_shift) | (hi << (64 - bit_shift));
    }
    return out;
}

std::string TruthTable::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t digits = std::max<std::size_t>(1, size() / 4);
    std::string out(digits, '0');
    for (std::size_t d = 0; d < digits; ++d) {
        unsigned v = 0;
        for (int b = 0; b < 4; ++b) {
            const std::size_t index = d * 4 + b;
            if (index < size() && get(index)) v |= 1u << b;
        }
        out[digits - 1 - d] = kDigits[v];
    }
    return out;
}

}  // namespace boolnl
