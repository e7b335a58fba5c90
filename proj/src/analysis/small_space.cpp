#include "analysis/small_space.hpp"

#include <algorithm>
#include <stdexcept>

#include "boolnl/walsh.hpp"

namespace boolnl::analysis::detail {

SmallSpace::SmallSpace(int num_vars)
    : n_(num_vars), len_(1u << num_vars), mask_(len_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << len_) - 1) {
    if (num_vars < 1 || num_vars > kMaxVars) {
        throw std::invalid_argument("word-level studies support 1 <= n <= 6");
    }
    for (std::size_t a = 0; a < len_; ++a) {
        std::uint64_t w = 0;
        for (std::size_t x = 0; x < len_; ++x) {
            if (std::popcount(a & x) & 1u) w |= std::uint64_t{1} << x;
        }
        linear_[a] = w;
    }
    for (auto kind : kAllMutationKinds) {
        auto& list = moves_[static_cast<std::size_t>(kind)];
        const auto count = position_count(kind, len_);
        list.reserve(count);
        for (std::uint64_t k = 0; k < count; ++k) {
            const auto m = descriptor_at(kind, len_, k);
            WordMove move;
            if (const auto* p = std::get_if<BitPosition>(&m.payload())) {
                move.mask = std::uint64_t{1} << p->index;
            } else if (const auto* q = std::get_if<PositionPair>(&m.payload())) {
                move.mask = (std::uint64_t{1} << q->first) | (std::uint64_t{1} << q->second);
            } else {
                move.rotation = std::get<RotationAmount>(m.payload()).amount;
            }
            list.push_back(move);
        }
    }
    if (num_vars <= 4) {
        table_.resize(function_count());
        for (std::uint64_t f = 0; f < table_.size(); ++f) {
            table_[f] = static_cast<std::uint8_t>(boolnl::nonlinearity(walsh_transform(TruthTable::from_word(n_, f))));
        }
    }
}

int SmallSpace::nonlinearity_by_distance(std::uint64_t f) const {
    const int len = static_cast<int>(len_);
    int best = len;
    for (std::size_t a = 0; a < len_; ++a) {
        const int d = std::popcount(f ^ linear_[a]);
        best = std::min(best, std::min(d, len - d));
    }
    return best;
}

void SmallSpace::spectrum(std::uint64_t f, std::span<std::int32_t> out) const {
    for (std::size_t x = 0; x < len_; ++x) out[x] = ((f >> x) & 1u) ? -1 : 1;
    walsh_butterfly(out.first(len_));
}

ImprovementProbe::ImprovementProbe(const SmallSpace& space, std::uint64_t f) : space_(&space) {
    const int len = static_cast<int>(space.length());
    std::array<std::uint8_t, 64> dist{};
    int best = len;
    for (std::size_t a = 0; a < space.length(); ++a) {
        const int d = std::popcount(f ^ space.linear(a));
        dist[a] = static_cast<std::uint8_t>(std::min(d, len - d));
        best = std::min<int>(best, dist[a]);
    }
    nl_ = best;
    // Counting sort by distance.
    std::array<std::uint32_t, 34> start{};
    for (std::size_t a = 0; a < space.length(); ++a) ++start[dist[a] + 1];
    for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
    for (std::size_t k = 0; k < near_.size(); ++k) {
        near_[k] = start[std::min<std::size_t>(static_cast<std::size_t>(nl_) + k + 1, start.size() - 1)];
    }
    for (std::size_t a = 0; a < space.length(); ++a) order_[start[dist[a]]++] = static_cast<std::uint8_t>(a);
}

bool ImprovementProbe::improves(std::uint64_t g, int changed_bits) const {
    const int len = static_cast<int>(space_->length());
    const std::uint32_t limit =
        (changed_bits >= 1 && changed_bits <= 2) ? near_[static_cast<std::size_t>(changed_bits)] : space_->length();
    for (std::uint32_t k = 0; k < limit; ++k) {
        const int d = std::popcount(g ^ space_->linear(order_[k]));
        if (std::min(d, len - d) <= nl_) return false;
    }
    return true;
}

}  // namespace boolnl::analysis::detail
