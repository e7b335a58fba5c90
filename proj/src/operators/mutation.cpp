#include "boolnl/mutation.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "boolnl/errors.hpp"

namespace boolnl {

namespace {

struct KindName {
    MutationKind kind;
    std::string_view name;
};

constexpr std::array<KindName, 8> kNames = {{
    {MutationKind::BitSet, "bitset"},
    {MutationKind::BitReset, "bitreset"},
    {MutationKind::BitFlip, "bitflip"},
    {MutationKind::TwoBitFlip, "2bitflip"},
    {MutationKind::TwoBitFlipIfEqual, "2bitflipeq"},
    {MutationKind::TwoBitSet, "2bitset"},
    {MutationKind::TwoBitReset, "2bitreset"},
    {MutationKind::Rotation, "rot"},
}};

std::uint32_t parse_index(std::string_view text) {
    std::uint32_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty()) {
        throw std::invalid_argument("invalid mutation position '" + std::string(text) + "'");
    }
    return value;
}

// Offset of the first pair (i, i+1) in lexicographic order over L positions.
std::uint64_t pair_row_offset(std::uint64_t i, std::uint64_t len) {
    return i * (2 * len - i - 1) / 2;
}

/// Walsh change of setting bit x (0 -> 1): -2 * (-1)^(a.x) at every a.
void add_set_pattern(std::vector<std::int32_t>& deltas, std::uint32_t x, std::int32_t sign) {
    for (std::size_t a = 0; a < deltas.size(); ++a) {
        const bool odd = std::popcount(a & x) & 1u;
        deltas[a] += sign * (odd ? 2 : -2);
    }
}

}  // namespace

PayloadShape payload_shape(MutationKind kind) {
    switch (kind) {
        case MutationKind::BitSet:
        case MutationKind::BitReset:
        case MutationKind::BitFlip:
            return PayloadShape::Single;
        case MutationKind::Rotation:
            return PayloadShape::Amount;
        default:
            return PayloadShape::Pair;
    }
}

std::string_view kind_name(MutationKind kind) {
    for (const auto& entry : kNames) {
        if (entry.kind == kind) return entry.name;
    }
    return "?";
}

std::optional<MutationKind> parse_kind(std::string_view text) {
    for (const auto& entry : kNames) {
        if (entry.name == text) return entry.kind;
    }
    if (text == "bit") return MutationKind::BitFlip;
    if (text == "2bit") return MutationKind::TwoBitFlip;
    if (text == "rotation") return MutationKind::Rotation;
    return std::nullopt;
}

std::vector<MutationKind> parse_operator_list(std::string_view text) {
    std::vector<MutationKind> kinds;
    while (true) {
        const auto slash = text.find('/');
        const auto token = text.substr(0, slash);
        auto kind = parse_kind(token);
        if (!kind) throw std::invalid_argument("unknown mutation operator '" + std::string(token) + "'");
        kinds.push_back(*kind);
        if (slash == std::string_view::npos) break;
        text.remove_prefix(slash + 1);
    }
    return kinds;
}

std::string format_operator_list(const std::vector<MutationKind>& kinds) {
    std::string out;
    for (auto kind : kinds) {
        if (!out.empty()) out += '/';
        switch (kind) {
            case MutationKind::BitFlip: out += "bit"; break;
            case MutationKind::TwoBitFlip: out += "2bit"; break;
            default: out += kind_name(kind); break;
        }
    }
    return out;
}

MutationDescriptor::MutationDescriptor(MutationKind kind, Payload payload)
    : kind_(kind), payload_(payload) {
    const PayloadShape shape = payload_shape(kind);
    const bool ok = (shape == PayloadShape::Single && std::holds_alternative<BitPosition>(payload_)) ||
                    (shape == PayloadShape::Pair && std::holds_alternative<PositionPair>(payload_)) ||
                    (shape == PayloadShape::Amount && std::holds_alternative<RotationAmount>(payload_));
    if (!ok) throw std::invalid_argument("payload shape does not match mutation kind");
    if (const auto* p = std::get_if<PositionPair>(&payload_); p && p->first >= p->second) {
        throw std::invalid_argument("pair positions must satisfy i < j");
    }
    if (const auto* r = std::get_if<RotationAmount>(&payload_); r && r->amount == 0) {
        throw std::invalid_argument("rotation amount must be at least 1");
    }
}

MutationDescriptor parse_mutation(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("mutation must look like kind:position, got '" + std::string(text) + "'");
    }
    const auto kind = parse_kind(text.substr(0, colon));
    if (!kind) throw std::invalid_argument("unknown mutation kind in '" + std::string(text) + "'");
    const auto args = text.substr(colon + 1);
    switch (payload_shape(*kind)) {
        case PayloadShape::Single:
            return MutationDescriptor::single(*kind, parse_index(args));
        case PayloadShape::Amount:
            return MutationDescriptor::rotation(parse_index(args));
        case PayloadShape::Pair: {
            const auto comma = args.find(',');
            if (comma == std::string_view::npos) throw std::invalid_argument("pair mutation needs 'i,j'");
            return MutationDescriptor::pair(*kind, parse_index(args.substr(0, comma)),
                                            parse_index(args.substr(comma + 1)));
        }
    }
    throw std::logic_error("unreachable");
}

std::string to_string(const MutationDescriptor& m) {
    std::string out(kind_name(m.kind()));
    out += ':';
    std::visit(
        [&out](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BitPosition>) {
                out += std::to_string(p.index);
            } else if constexpr (std::is_same_v<T, PositionPair>) {
                out += std::to_string(p.first) + ',' + std::to_string(p.second);
            } else {
                out += std::to_string(p.amount);
            }
        },
        m.payload());
    return out;
}

void check_in_range(const MutationDescriptor& m, std::size_t table_size) {
    const bool ok = std::visit(
        [table_size](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BitPosition>) {
                return p.index < table_size;
            } else if constexpr (std::is_same_v<T, PositionPair>) {
                return p.second < table_size;
            } else {
                return p.amount < table_size;
            }
        },
        m.payload());
    if (!ok) {
        throw PositionOutOfRange("mutation " + to_string(m) + " is outside a table of length " +
                                 std::to_string(table_size));
    }
}

bool is_effective(const TruthTable& tt, const MutationDescriptor& m) {
    check_in_range(m, tt.size());
    switch (m.kind()) {
        case MutationKind::BitSet:
            return !tt.get(std::get<BitPosition>(m.payload()).index);
        case MutationKind::BitReset:
            return tt.get(std::get<BitPosition>(m.payload()).index);
        case MutationKind::BitFlip:
        case MutationKind::TwoBitFlip:
        case MutationKind::Rotation:
            return true;
        case MutationKind::TwoBitFlipIfEqual: {
            const auto p = std::get<PositionPair>(m.payload());
            return tt.get(p.first) == tt.get(p.second);
        }
        case MutationKind::TwoBitSet: {
            const auto p = std::get<PositionPair>(m.payload());
            return !tt.get(p.first) && !tt.get(p.second);
        }
        case MutationKind::TwoBitReset: {
            const auto p = std::get<PositionPair>(m.payload());
            return tt.get(p.first) && tt.get(p.second);
        }
    }
    return false;
}

std::optional<TruthTable> apply_mutation(const TruthTable& tt, const MutationDescriptor& m) {
    if (!is_effective(tt, m)) return std::nullopt;
    if (m.kind() == MutationKind::Rotation) {
        return tt.rotated_left(std::get<RotationAmount>(m.payload()).amount);
    }
    TruthTable out = tt;
    if (const auto* single = std::get_if<BitPosition>(&m.payload())) {
        out.flip(single->index);
    } else {
        const auto pair = std::get<PositionPair>(m.payload());
        out.flip(pair.first);
        out.flip(pair.second);
    }
    return out;
}

std::uint64_t position_count(MutationKind kind, std::size_t table_size) {
    const std::uint64_t len = table_size;
    switch (payload_shape(kind)) {
        case PayloadShape::Single: return len;
        case PayloadShape::Pair: return len * (len - 1) / 2;
        case PayloadShape::Amount: return len - 1;
    }
    return 0;
}

MutationDescriptor descriptor_at(MutationKind kind, std::size_t table_size, std::uint64_t index) {
    if (index >= position_count(kind, table_size)) {
        throw PositionOutOfRange("neighborhood index " + std::to_string(index) + " out of range");
    }
    switch (payload_shape(kind)) {
        case PayloadShape::Single:
            return MutationDescriptor::single(kind, static_cast<std::uint32_t>(index));
        case PayloadShape::Amount:
            return MutationDescriptor::rotation(static_cast<std::uint32_t>(index + 1));
        case PayloadShape::Pair: {
            const std::uint64_t len = table_size;
            // Invert the row offset i*(2L-i-1)/2 <= index, then correct rounding.
            const double b = 2.0 * static_cast<double>(len) - 1.0;
            auto i = static_cast<std::uint64_t>((b - std::sqrt(b * b - 8.0 * static_cast<double>(index))) / 2.0);
            while (i > 0 && pair_row_offset(i, len) > index) --i;
            while (i + 1 < len && pair_row_offset(i + 1, len) <= index) ++i;
            const std::uint64_t j = i + 1 + (index - pair_row_offset(i, len));
            return MutationDescriptor::pair(kind, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    throw std::logic_error("unreachable");
}

std::optional<DeltaVector> mutation_delta(const MutationDescriptor& m, int num_vars) {
    const std::size_t len = std::size_t{1} << num_vars;
    check_in_range(m, len);
    DeltaVector delta{num_vars, std::vector<std::int32_t>(len, 0)};
    switch (m.kind()) {
        case MutationKind::BitSet:
            add_set_pattern(delta.deltas, std::get<BitPosition>(m.payload()).index, 1);
            return delta;
        case MutationKind::BitReset:
            add_set_pattern(delta.deltas, std::get<BitPosition>(m.payload()).index, -1);
            return delta;
        case MutationKind::TwoBitSet:
        case MutationKind::TwoBitReset: {
            const auto p = std::get<PositionPair>(m.payload());
            const std::int32_t sign = m.kind() == MutationKind::TwoBitSet ? 1 : -1;
            add_set_pattern(delta.deltas, p.first, sign);
            add_set_pattern(delta.deltas, p.second, sign);
            return delta;
        }
        default:
            return std::nullopt;
    }
}

Neighborhood::Neighborhood(const TruthTable& tt, MutationKind kind)
    : table_(tt), kind_(kind), count_(position_count(kind, tt.size())) {}

void Neighborhood::iterator::settle() {
    current_.reset();
    while (index_ < owner_->count_) {
        auto m = descriptor_at(owner_->kind_, owner_->table_.size(), index_);
        if (auto next = apply_mutation(owner_->table_, m)) {
            current_.emplace(Neighbor{m, std::move(*next)});
            return;
        }
        ++index_;
    }
    owner_ = nullptr;
}

}  // namespace boolnl
