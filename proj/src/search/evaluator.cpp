#include <array>
#include <bit>
#include <cstdlib>
#include <mutex>

#include "boolnl/errors.hpp"
#include "boolnl/search.hpp"
#include "boolnl/walsh.hpp"

namespace boolnl::search {

namespace {

constexpr int kMaxTabledVars = 12;

/// Row i of the +-1 Hadamard matrix, (-1)^(a.i) for every a; shared per n.
const std::int8_t* hadamard_row(int n, std::uint32_t i) {
    static std::array<std::once_flag, kMaxTabledVars + 1> once;
    static std::array<std::vector<std::int8_t>, kMaxTabledVars + 1> tables;
    std::call_once(once[static_cast<std::size_t>(n)], [n] {
        const std::size_t len = std::size_t{1} << n;
        auto& t = tables[static_cast<std::size_t>(n)];
        t.resize(len * len);
        for (std::size_t r = 0; r < len; ++r) {
            for (std::size_t a = 0; a < len; ++a) t[r * len + a] = (std::popcount(r & a) & 1) ? -1 : 1;
        }
    });
    return tables[static_cast<std::size_t>(n)].data() + (std::size_t{i} << n);
}

std::vector<std::int32_t> full_spectrum(const TruthTable& t) {
    std::vector<std::int32_t> out(t.size());
    for (std::size_t x = 0; x < t.size(); ++x) out[x] = t.get(x) ? -1 : 1;
    walsh_butterfly(out);
    return out;
}

}  // namespace

TruthTable random_function(int num_vars, RandomSource& rand) {
    if (num_vars <= 6) return TruthTable::from_word(num_vars, rand.next());
    TruthTable t(num_vars);
    for (auto& w : t.words()) w = rand.next();
    return t;
}

Evaluator::Evaluator(int num_vars, FitnessKind kind, bool incremental)
    : n_(num_vars), len_(std::size_t{1} << num_vars), kind_(kind), incremental_(incremental && num_vars <= kMaxTabledVars),
      scratch_(len_) {
    if (num_vars < 1 || num_vars > TruthTable::kMaxVars) throw ConfigInvalid("evaluator: unsupported n");
}

SearchState Evaluator::evaluate(TruthTable table) {
    if (table.num_vars() != n_) throw DimensionMismatch("evaluator: table has the wrong n");
    ++evaluations_;
    auto spectrum = full_spectrum(table);
    const auto fitness = fitness_from_coeffs(kind_, spectrum);
    return {std::move(table), std::move(spectrum), fitness};
}

std::optional<std::pair<std::uint32_t, std::int64_t>> Evaluator::flipped(const MutationDescriptor& m) const {
    if (const auto* p = std::get_if<BitPosition>(&m.payload())) return std::pair{p->index, std::int64_t{-1}};
    const auto& q = std::get<PositionPair>(m.payload());
    return std::pair{q.first, static_cast<std::int64_t>(q.second)};
}

FitnessValue Evaluator::score_flips(const SearchState& s, std::uint32_t i, std::int64_t j) const {
    const std::int32_t* w = s.spectrum.data();
    std::int32_t* out = scratch_.data();
    const std::int8_t* hi = hadamard_row(n_, i);
    const std::int32_t ci = s.table.get(i) ? 2 : -2;
    if (j < 0) {
        for (std::size_t a = 0; a < len_; ++a) out[a] = w[a] + ci * hi[a];
    } else {
        const auto jj = static_cast<std::uint32_t>(j);
        const std::int8_t* hj = hadamard_row(n_, jj);
        const std::int32_t cj = s.table.get(jj) ? 2 : -2;
        for (std::size_t a = 0; a < len_; ++a) out[a] = w[a] + ci * hi[a] + cj * hj[a];
    }
    return fitness_from_coeffs(kind_, scratch_);
}

std::optional<FitnessValue> Evaluator::probe(const SearchState& state, const MutationDescriptor& m) {
    if (!is_effective(state.table, m)) return std::nullopt;
    ++evaluations_;
    if (m.kind() == MutationKind::Rotation || !incremental_) {
        const auto next = apply_mutation(state.table, m);
        for (std::size_t x = 0; x < len_; ++x) scratch_[x] = next->get(x) ? -1 : 1;
        walsh_butterfly(scratch_);
        return fitness_from_coeffs(kind_, scratch_);
    }
    const auto f = flipped(m);
    return score_flips(state, f->first, f->second);
}

SearchState Evaluator::advance(const SearchState& state, const MutationDescriptor& m) const {
    auto next = apply_mutation(state.table, m);
    if (!next) throw ConfigInvalid("advance: mutation is a no-op");
    if (m.kind() == MutationKind::Rotation || !incremental_) {
        auto spectrum = full_spectrum(*next);
        const auto fitness = fitness_from_coeffs(kind_, spectrum);
        return {std::move(*next), std::move(spectrum), fitness};
    }
    const auto f = flipped(m);
    const auto fitness = score_flips(state, f->first, f->second);
    return {std::move(*next), scratch_, fitness};
}

}  // namespace boolnl::search
