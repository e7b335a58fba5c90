#include "boolnl/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "analysis/small_space.hpp"
#include "boolnl/errors.hpp"
#include "boolnl/random.hpp"
#include "boolnl/walsh.hpp"

namespace boolnl::analysis {

using detail::ImprovementProbe;
using detail::SmallSpace;

namespace {

constexpr std::size_t kSampledPartitions = 64;

/// Runs work(p, acc) for every partition p on up to `threads` workers and
/// folds the per-partition accumulators in partition order.
template <class Acc, class Make, class Work, class Merge>
Acc run_partitions(std::size_t partitions, unsigned threads, Make make, Work work, Merge merge) {
    std::vector<Acc> results;
    results.reserve(partitions);
    for (std::size_t p = 0; p < partitions; ++p) results.push_back(make());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t p = next++; p < partitions; p = next++) work(p, results[p]);
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(partitions)));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    Acc total = make();
    for (auto& r : results) merge(total, r);
    return total;
}

/// Visits every function of the plan once with its nonlinearity.
/// Visit is called as visit(f, nl, exact, acc), where `exact` marks functions
/// from a complete enumeration.
template <class Acc, class Make, class Visit, class Merge>
Acc walk(const SmallSpace& space, const SamplePlan& plan, Make make, Visit visit, Merge merge) {
    if (plan.mode == SamplePlan::Mode::Exhaustive) {
        const std::uint64_t total = space.function_count();
        const std::size_t partitions = static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(4096, total / 1024)));
        const std::uint64_t chunk = total / partitions;
        return run_partitions<Acc>(
            partitions, plan.threads, make,
            [&](std::size_t p, Acc& acc) {
                const std::uint64_t begin = p * chunk;
                const std::uint64_t end = p + 1 == partitions ? total : begin + chunk;
                for (std::uint64_t f = begin; f < end; ++f) visit(f, space.nonlinearity(f), true, acc);
            },
            merge);
    }

    const int below = plan.enumerate_below_nl;
    const std::uint32_t len = space.length();
    // Partitions [0, 64) draw uniform samples; partitions [64, 64 + 2L) each
    // enumerate the low-weight errors around one affine function.
    const std::size_t enumerated = below > 0 ? 2 * len : 0;
    return run_partitions<Acc>(
        kSampledPartitions + enumerated, plan.threads, make,
        [&](std::size_t p, Acc& acc) {
            if (p < kSampledPartitions) {
                RandomSource rand(RandomSource::derive_seed(plan.seed, p));
                const std::uint64_t share = plan.sample_count / kSampledPartitions +
                                            (p < plan.sample_count % kSampledPartitions ? 1 : 0);
                for (std::uint64_t k = 0; k < share; ++k) {
                    const std::uint64_t f = rand.next() & space.mask();
                    const int nl = space.nonlinearity(f);
                    if (nl < below) continue;
                    visit(f, nl, false, acc);
                }
                return;
            }
            const std::size_t affine = p - kSampledPartitions;
            const std::uint64_t base = space.linear(affine % len) ^ (affine >= len ? space.mask() : 0);
            // Error patterns of weight w < below, generated in colex order.
            for (int w = 0; w < below; ++w) {
                if (w == 0) {
                    visit(base, 0, true, acc);
                    continue;
                }
                std::uint64_t pattern = (std::uint64_t{1} << w) - 1;
                while (true) {
                    visit(base ^ pattern, w, true, acc);
                    // Gosper's hack: next word with the same popcount.
                    const std::uint64_t c = pattern & (~pattern + 1);
                    const std::uint64_t r = pattern + c;
                    if (r == 0 || (r & ~space.mask()) != 0) break;
                    pattern = (((r ^ pattern) >> 2) / c) | r;
                    if ((pattern & ~space.mask()) != 0) break;
                }
            }
        },
        merge);
}

std::vector<bool> exact_columns(const SamplePlan& plan, int columns) {
    std::vector<bool> out(static_cast<std::size_t>(columns), plan.mode == SamplePlan::Mode::Exhaustive);
    for (int nl = 0; nl < std::min(columns, plan.enumerate_below_nl); ++nl) out[static_cast<std::size_t>(nl)] = true;
    return out;
}

std::string kind_label(MutationKind kind) { return std::string(kind_name(kind)); }

}  // namespace

SamplePlan SamplePlan::exhaustive(unsigned threads) {
    SamplePlan plan;
    plan.mode = Mode::Exhaustive;
    plan.threads = threads;
    return plan;
}

SamplePlan SamplePlan::sampled_fraction(int num_vars, double fraction, std::uint64_t seed, unsigned threads) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ConfigInvalid("sample fraction must lie in (0, 1]");
    if (num_vars > 6) throw ConfigInvalid("studies support n <= 6");
    const double space = std::ldexp(1.0, 1 << num_vars);
    return sampled(static_cast<std::uint64_t>(std::llround(fraction * space)), seed, threads);
}

SamplePlan SamplePlan::sampled(std::uint64_t count, std::uint64_t seed, unsigned threads) {
    SamplePlan plan;
    plan.mode = Mode::Sampled;
    plan.sample_count = count;
    plan.seed = seed;
    plan.threads = threads;
    return plan;
}

void SamplePlan::validate(int num_vars, bool uses_sample_count) const {
    if (num_vars < 1 || num_vars > SmallSpace::kMaxVars) {
        throw ConfigInvalid("studies support 1 <= n <= 6, got n=" + std::to_string(num_vars));
    }
    if (mode == Mode::Exhaustive) {
        if (num_vars > 5 || (num_vars == 5 && !allow_large_exhaustive)) {
            throw ConfigInvalid("exhaustive studies are limited to n <= 4 (n = 5 needs the explicit override)");
        }
        if (enumerate_below_nl != 0) throw ConfigInvalid("enumerate_below_nl only applies to sampled plans");
    } else {
        if (uses_sample_count && sample_count == 0 && enumerate_below_nl == 0) throw ConfigInvalid("sampled plan needs a positive sample count");
        const int limit = (1 << num_vars) / 4;
        if (enumerate_below_nl < 0 || enumerate_below_nl > limit) {
            throw ConfigInvalid("enumerate_below_nl must lie in [0, " + std::to_string(limit) + "]");
        }
    }
    if (pairs_per_cell == 0) throw ConfigInvalid("pairs_per_cell must be positive");
}

std::string SamplePlan::describe() const {
    std::ostringstream out;
    if (mode == Mode::Exhaustive) {
        out << "exhaustive";
    } else {
        out << "sampled count=" << sample_count << " seed=" << seed;
        if (enumerate_below_nl > 0) out << " enumerate_below_nl=" << enumerate_below_nl;
    }
    return out.str();
}

int max_nonlinearity(int num_vars) {
    return static_cast<int>(covering_radius_bound(num_vars).floor());
}

bool ConsistencyReport::all_consistent() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.consistent; });
}

std::array<double, 3> TransitionCounts::percentages() const {
    const auto t = static_cast<double>(total());
    if (t == 0) return {0, 0, 0};
    return {100.0 * increase / t, 100.0 * same / t, 100.0 * decrease / t};
}

TransitionCounts& TransitionCounts::operator+=(const TransitionCounts& other) {
    increase += other.increase;
    same += other.same;
    decrease += other.decrease;
    return *this;
}

std::uint64_t ReachabilityCensus::column_total(int nl) const {
    std::uint64_t total = 0;
    for (const auto& row : counts) total += row[static_cast<std::size_t>(nl)];
    return total;
}

double ReachabilityCensus::percentage(unsigned pattern, int nl) const {
    const auto total = column_total(nl);
    if (total == 0) return 0.0;
    return 100.0 * static_cast<double>(counts[pattern][static_cast<std::size_t>(nl)]) / static_cast<double>(total);
}

std::array<double, 3> CrossoverCell::percentages() const {
    const auto t = static_cast<double>(pairs());
    if (t == 0) return {0, 0, 0};
    return {100.0 * greater / t, 100.0 * lower / t, 100.0 * between / t};
}

// ---------------------------------------------------------------------------

ConsistencyReport consistency_study(MutationKind kind, int num_vars, const SamplePlan& plan) {
    plan.validate(num_vars);
    const SmallSpace space(num_vars);
    const auto& moves = space.moves(kind);
    const std::size_t len = space.length();

    struct Slot {
        std::uint64_t examined = 0;
        bool consistent = true;
        std::vector<std::int32_t> delta;
    };
    using Acc = std::vector<Slot>;

    auto make = [&] { return Acc(moves.size()); };
    auto visit = [&](std::uint64_t f, int, bool, Acc& acc) {
        std::array<std::int32_t, 64> base{};
        std::array<std::int32_t, 64> next{};
        space.spectrum(f, base);
        for (std::size_t k = 0; k < moves.size(); ++k) {
            const auto g = space.apply(kind, f, moves[k]);
            if (!g) continue;
            Slot& slot = acc[k];
            ++slot.examined;
            if (!slot.consistent) continue;
            space.spectrum(*g, next);
            if (slot.delta.empty()) {
                slot.delta.resize(len);
                for (std::size_t a = 0; a < len; ++a) slot.delta[a] = next[a] - base[a];
                continue;
            }
            for (std::size_t a = 0; a < len; ++a) {
                if (slot.delta[a] != next[a] - base[a]) {
                    slot.consistent = false;
                    break;
                }
            }
        }
    };
    auto merge = [](Acc& into, Acc& from) {
        for (std::size_t k = 0; k < into.size(); ++k) {
            Slot& a = into[k];
            Slot& b = from[k];
            if (b.examined == 0) continue;
            if (a.examined == 0) {
                a = std::move(b);
                continue;
            }
            a.examined += b.examined;
            a.consistent = a.consistent && b.consistent && a.delta == b.delta;
        }
    };
    Acc acc = walk<Acc>(space, plan, make, visit, merge);

    ConsistencyReport report{kind, num_vars, plan, {}};
    for (std::size_t k = 0; k < moves.size(); ++k) {
        ConsistencyEntry entry{descriptor_at(kind, len, k), acc[k].examined, acc[k].consistent, std::nullopt};
        if (entry.consistent && entry.examined > 0) entry.delta = std::move(acc[k].delta);
        report.entries.push_back(std::move(entry));
    }
    return report;
}

// ---------------------------------------------------------------------------

namespace {

void verify_collapse(const TransitionTable& table, const std::vector<TransitionRow>& rows) {
    const std::size_t columns = table.exact_column.size();
    for (std::size_t nl = 0; nl < columns; ++nl) {
        TransitionCounts pooled;
        for (const auto& row : rows) pooled += row.by_start_nl[nl];
        for (const auto& row : rows) {
            const auto& cell = row.by_start_nl[nl];
            bool ok = true;
            if (table.exact_column[nl]) {
                ok = cell == rows.front().by_start_nl[nl];
            } else if (cell.total() > 0 && pooled.total() > 0) {
                const std::array<std::uint64_t, 3> mine{cell.increase, cell.same, cell.decrease};
                const std::array<std::uint64_t, 3> all{pooled.increase, pooled.same, pooled.decrease};
                for (std::size_t o = 0; o < 3 && ok; ++o) {
                    const double p = static_cast<double>(all[o]) / static_cast<double>(pooled.total());
                    const double q = static_cast<double>(mine[o]) / static_cast<double>(cell.total());
                    const double se = std::sqrt(p * (1 - p) / static_cast<double>(cell.total()));
                    ok = std::abs(q - p) <= 6 * se + 1e-9;
                }
            }
            if (!ok) {
                throw CollapseViolation("transition counts of " + kind_label(table.kind) + " differ at position " +
                                        to_string(*row.position) + ", starting nl " + std::to_string(nl));
            }
        }
    }
}

}  // namespace

TransitionTable transition_study_by_position(MutationKind kind, int num_vars, const SamplePlan& plan) {
    plan.validate(num_vars);
    const SmallSpace space(num_vars);
    const auto& moves = space.moves(kind);
    const int columns = max_nonlinearity(num_vars) + 1;
    const auto width = static_cast<std::size_t>(columns);

    using Acc = std::vector<TransitionCounts>;  // [move * width + nl]
    auto make = [&] { return Acc(moves.size() * width); };
    auto visit = [&](std::uint64_t f, int nl, bool, Acc& acc) {
        for (std::size_t k = 0; k < moves.size(); ++k) {
            const auto g = space.apply(kind, f, moves[k]);
            if (!g) continue;
            const int next = space.nonlinearity(*g);
            auto& cell = acc[k * width + static_cast<std::size_t>(nl)];
            if (next > nl) {
                ++cell.increase;
            } else if (next == nl) {
                ++cell.same;
            } else {
                ++cell.decrease;
            }
        }
    };
    auto merge = [](Acc& into, Acc& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
    };
    const Acc acc = walk<Acc>(space, plan, make, visit, merge);

    TransitionTable table{kind, num_vars, plan, true, {}, exact_columns(plan, columns)};
    for (std::size_t k = 0; k < moves.size(); ++k) {
        TransitionRow row{descriptor_at(kind, space.length(), k), {}};
        row.by_start_nl.assign(acc.begin() + static_cast<std::ptrdiff_t>(k * width),
                               acc.begin() + static_cast<std::ptrdiff_t>((k + 1) * width));
        table.rows.push_back(std::move(row));
    }
    return table;
}

TransitionTable collapse_positions(const TransitionTable& table) {
    if (!table.per_position) throw ConfigInvalid("table is already collapsed");
    if (table.rows.empty()) throw ConfigInvalid("table has no rows");
    verify_collapse(table, table.rows);
    const std::size_t width = table.exact_column.size();
    TransitionTable out{table.kind, table.num_vars, table.plan, false, {}, table.exact_column};
    TransitionRow collapsed{std::nullopt, std::vector<TransitionCounts>(width)};
    for (const auto& row : table.rows) {
        for (std::size_t nl = 0; nl < width; ++nl) collapsed.by_start_nl[nl] += row.by_start_nl[nl];
    }
    out.rows.push_back(std::move(collapsed));
    return out;
}

TransitionTable transition_study(MutationKind kind, int num_vars, const SamplePlan& plan) {
    auto table = transition_study_by_position(kind, num_vars, plan);
    if (kind == MutationKind::Rotation) return table;
    return collapse_positions(table);
}

// ---------------------------------------------------------------------------

ReachabilityCensus reachability_study(int num_vars, const SamplePlan& plan) {
    plan.validate(num_vars);
    const SmallSpace space(num_vars);
    const int columns = max_nonlinearity(num_vars) + 1;
    const auto width = static_cast<std::size_t>(columns);
    const auto& rotations = space.moves(MutationKind::Rotation);
    const auto& singles = space.moves(MutationKind::BitFlip);
    const auto& pairs = space.moves(MutationKind::TwoBitFlip);
    const bool tabled = num_vars <= 4;

    using Acc = std::vector<std::uint64_t>;  // [pattern * width + nl]
    auto make = [&] { return Acc(8 * width); };
    auto visit = [&](std::uint64_t f, int nl, bool, Acc& acc) {
        unsigned pattern = 0;
        if (tabled) {
            auto any = [&](const std::vector<detail::WordMove>& moves, bool rotate) {
                for (const auto& m : moves) {
                    const std::uint64_t g = rotate ? space.rotate(f, m.rotation) : f ^ m.mask;
                    if (space.nonlinearity(g) > nl) return true;
                }
                return false;
            };
            if (any(rotations, true)) pattern |= ReachabilityPattern::kRotation;
            if (any(singles, false)) pattern |= ReachabilityPattern::kBitFlip;
            if (any(pairs, false)) pattern |= ReachabilityPattern::kTwoBitFlip;
        } else {
            const ImprovementProbe probe(space, f);
            auto any = [&](const std::vector<detail::WordMove>& moves, int changed) {
                for (const auto& m : moves) {
                    const std::uint64_t g = changed == 0 ? space.rotate(f, m.rotation) : f ^ m.mask;
                    if (probe.improves(g, changed)) return true;
                }
                return false;
            };
            if (any(rotations, 0)) pattern |= ReachabilityPattern::kRotation;
            if (any(singles, 1)) pattern |= ReachabilityPattern::kBitFlip;
            if (any(pairs, 2)) pattern |= ReachabilityPattern::kTwoBitFlip;
        }
        ++acc[pattern * width + static_cast<std::size_t>(nl)];
    };
    auto merge = [](Acc& into, Acc& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
    };
    const Acc acc = walk<Acc>(space, plan, make, visit, merge);

    ReachabilityCensus census{num_vars, plan, {}, exact_columns(plan, columns)};
    for (std::size_t p = 0; p < 8; ++p) {
        census.counts[p].assign(acc.begin() + static_cast<std::ptrdiff_t>(p * width),
                                acc.begin() + static_cast<std::ptrdiff_t>((p + 1) * width));
    }
    return census;
}

// ---------------------------------------------------------------------------

NonlinearityCensus nl_census(int num_vars, const SamplePlan& plan) {
    plan.validate(num_vars);
    const SmallSpace space(num_vars);
    const int columns = max_nonlinearity(num_vars) + 1;
    using Acc = std::vector<std::uint64_t>;
    auto make = [&] { return Acc(static_cast<std::size_t>(columns)); };
    auto visit = [](std::uint64_t, int nl, bool, Acc& acc) { ++acc[static_cast<std::size_t>(nl)]; };
    auto merge = [](Acc& into, Acc& from) {
        for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
    };
    return {num_vars, plan, walk<Acc>(space, plan, make, visit, merge), exact_columns(plan, columns)};
}

// ---------------------------------------------------------------------------

namespace {

/// Parents grouped by nonlinearity.
std::vector<std::vector<std::uint64_t>> parent_pools(const SmallSpace& space, const SamplePlan& plan, int columns) {
    std::vector<std::vector<std::uint64_t>> pools(static_cast<std::size_t>(columns));
    if (space.num_vars() <= 4) {
        for (std::uint64_t f = 0; f < space.function_count(); ++f) {
            pools[static_cast<std::size_t>(space.nonlinearity(f))].push_back(f);
        }
        return pools;
    }
    // Larger spaces: bounded rejection sampling; rare classes may stay short.
    RandomSource rand(RandomSource::derive_seed(plan.seed, 0xC0FFEE));
    const std::uint64_t draws = 100 * plan.pairs_per_cell;
    for (std::uint64_t k = 0; k < draws; ++k) {
        const std::uint64_t f = rand.next() & space.mask();
        auto& pool = pools[static_cast<std::size_t>(space.nonlinearity(f))];
        if (pool.size() < plan.pairs_per_cell) pool.push_back(f);
    }
    return pools;
}

}  // namespace

CrossoverMatrix crossover_study(CrossoverKind kind, int num_vars, const SamplePlan& plan) {
    plan.validate(num_vars, false);
    const bool all_pairs = plan.mode == SamplePlan::Mode::Exhaustive;
    if (all_pairs && num_vars > 3) throw ConfigInvalid("exhaustive crossover studies are limited to n <= 3");
    const SmallSpace space(num_vars);
    const int columns = max_nonlinearity(num_vars) + 1;
    const auto width = static_cast<std::size_t>(columns);
    const auto pools = parent_pools(space, plan, columns);

    struct Acc {
        std::vector<CrossoverCell> cells;
    };
    auto make = [&] { return Acc{std::vector<CrossoverCell>(width * width)}; };
    auto work = [&](std::size_t cell_index, Acc& acc) {
        const std::size_t i = cell_index / width;
        const std::size_t j = cell_index % width;
        const auto& first = pools[i];
        const auto& second = pools[j];
        if (first.empty() || second.empty()) return;
        RandomSource rand(RandomSource::derive_seed(plan.seed, cell_index));
        CrossoverCell& cell = acc.cells[cell_index];
        const int hi = static_cast<int>(std::max(i, j));
        const int lo = static_cast<int>(std::min(i, j));
        auto record = [&](std::uint64_t p1, std::uint64_t p2) {
            const auto child = crossover(TruthTable::from_word(num_vars, p1), TruthTable::from_word(num_vars, p2), kind, rand);
            const int nl = space.nonlinearity(child.word());
            if (nl > hi) {
                ++cell.greater;
            } else if (nl < lo) {
                ++cell.lower;
            } else {
                ++cell.between;
            }
        };
        const bool complete = all_pairs || (space.num_vars() <= 4 &&
                              static_cast<double>(first.size()) * static_cast<double>(second.size()) <=
                                  static_cast<double>(plan.pairs_per_cell));
        if (complete) {
            cell.exhaustive = true;
            for (auto p1 : first) {
                for (auto p2 : second) record(p1, p2);
            }
            return;
        }
        for (std::uint64_t k = 0; k < plan.pairs_per_cell; ++k) {
            const auto p1 = first[rand.below(first.size())];
            const auto p2 = second[rand.below(second.size())];
            record(p1, p2);
        }
    };
    auto merge = [](Acc& into, Acc& from) {
        for (std::size_t c = 0; c < into.cells.size(); ++c) {
            auto& a = into.cells[c];
            const auto& b = from.cells[c];
            a.greater += b.greater;
            a.lower += b.lower;
            a.between += b.between;
            a.exhaustive = a.exhaustive || b.exhaustive;
        }
    };
    const Acc acc = run_partitions<Acc>(width * width, plan.threads, make, work, merge);

    CrossoverMatrix matrix{num_vars, kind, plan, std::vector<std::vector<CrossoverCell>>(width)};
    for (std::size_t i = 0; i < width; ++i) {
        matrix.cells[i].assign(acc.cells.begin() + static_cast<std::ptrdiff_t>(i * width),
                               acc.cells.begin() + static_cast<std::ptrdiff_t>((i + 1) * width));
    }
    return matrix;
}

}  // namespace boolnl::analysis
