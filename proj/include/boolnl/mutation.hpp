#pragma once

#include <array>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "boolnl/truth_table.hpp"
#include "boolnl/walsh.hpp"

namespace boolnl {

enum class MutationKind : std::uint8_t {
    BitSet,
    BitReset,
    BitFlip,
    TwoBitFlip,
    TwoBitFlipIfEqual,
    TwoBitSet,
    TwoBitReset,
    Rotation,
};

inline constexpr std::array<MutationKind, 8> kAllMutationKinds = {
    MutationKind::BitSet,      MutationKind::BitReset,          MutationKind::BitFlip,
    MutationKind::TwoBitFlip,  MutationKind::TwoBitFlipIfEqual, MutationKind::TwoBitSet,
    MutationKind::TwoBitReset, MutationKind::Rotation,
};

enum class PayloadShape { Single, Pair, Amount };

PayloadShape payload_shape(MutationKind kind);

/// Canonical short name: bitset, bitreset, bitflip, 2bitflip, 2bitflipeq,
/// 2bitset, 2bitreset, rot.
std::string_view kind_name(MutationKind kind);
/// Accepts canonical names plus the aliases bit, 2bit, rotation.
std::optional<MutationKind> parse_kind(std::string_view text);

/// "2bit/rot/bit" -> {TwoBitFlip, Rotation, BitFlip}. Throws std::invalid_argument.
std::vector<MutationKind> parse_operator_list(std::string_view text);
std::string format_operator_list(const std::vector<MutationKind>& kinds);

struct BitPosition {
    std::uint32_t index;
    friend bool operator==(const BitPosition&, const BitPosition&) = default;
};

/// Unordered pair stored with first < second.
struct PositionPair {
    std::uint32_t first;
    std::uint32_t second;
    friend bool operator==(const PositionPair&, const PositionPair&) = default;
};

struct RotationAmount {
    std::uint32_t amount;
    friend bool operator==(const RotationAmount&, const RotationAmount&) = default;
};

class MutationDescriptor {
public:
    using Payload = std::variant<BitPosition, PositionPair, RotationAmount>;

    /// Throws std::invalid_argument when the payload shape does not match the
    /// kind or a pair is not strictly ordered.
    MutationDescriptor(MutationKind kind, Payload payload);

    static MutationDescriptor single(MutationKind kind, std::uint32_t i) { return {kind, BitPosition{i}}; }
    static MutationDescriptor pair(MutationKind kind, std::uint32_t i, std::uint32_t j) {
        return {kind, PositionPair{i, j}};
    }
    static MutationDescriptor rotation(std::uint32_t r) { return {MutationKind::Rotation, RotationAmount{r}}; }

    MutationKind kind() const { return kind_; }
    const Payload& payload() const { return payload_; }

    friend bool operator==(const MutationDescriptor&, const MutationDescriptor&) = default;

private:
    MutationKind kind_;
    Payload payload_;
};

/// "bitflip:5", "2bitflip:3,9", "rot:4".
MutationDescriptor parse_mutation(std::string_view text);
std::string to_string(const MutationDescriptor& m);

/// Throws PositionOutOfRange when a position or amount is outside the table.
void check_in_range(const MutationDescriptor& m, std::size_t table_size);

/// False for mutations that would leave the table unchanged in a way the
/// operator treats as a no-op (setting a set bit, unequal pair for the
/// conditional flip, and so on).
bool is_effective(const TruthTable& tt, const MutationDescriptor& m);

/// Mutated copy, or std::nullopt for a no-op. The input is never modified.
std::optional<TruthTable> apply_mutation(const TruthTable& tt, const MutationDescriptor& m);

/// Number of canonical positions: L for single-bit kinds, L(L-1)/2 for pairs,
/// L-1 for rotation.
std::uint64_t position_count(MutationKind kind, std::size_t table_size);

/// Descriptor at canonical index `index`: positions ascending, pairs in
/// lexicographic order, rotation amounts 1..L-1.
MutationDescriptor descriptor_at(MutationKind kind, std::size_t table_size, std::uint64_t index);

/// Function-independent spectrum change for the set/reset families; nullopt
/// for kinds whose change depends on the current bits.
std::optional<DeltaVector> mutation_delta(const MutationDescriptor& m, int num_vars);

struct Neighbor {
    MutationDescriptor mutation;
    TruthTable table;
};

/// Lazy range over every effective mutation of `tt` by one operator, in
/// canonical order.
class Neighborhood {
public:
    Neighborhood(const TruthTable& tt, MutationKind kind);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Neighbor;
        using difference_type = std::ptrdiff_t;
        using reference = const Neighbor&;
        using pointer = const Neighbor*;

        iterator() = default;
        reference operator*() const { return *current_; }
        pointer operator->() const { return &*current_; }
        iterator& operator++() {
            ++index_;
            settle();
            return *this;
        }
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.owner_ == nullptr; }

    private:
        friend class Neighborhood;
        explicit iterator(const Neighborhood* owner) : owner_(owner) { settle(); }
        void settle();

        const Neighborhood* owner_ = nullptr;
        std::uint64_t index_ = 0;
        std::optional<Neighbor> current_;
    };

    iterator begin() const { return iterator(this); }
    std::default_sentinel_t end() const { return {}; }

private:
    TruthTable table_;
    MutationKind kind_;
    std::uint64_t count_;
};

}  // namespace boolnl
