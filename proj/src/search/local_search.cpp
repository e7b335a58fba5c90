#include <algorithm>
#include <numeric>

#include "boolnl/errors.hpp"
#include "boolnl/search.hpp"
#include "search/tracker.hpp"

namespace boolnl::search {

void LsConfig::validate() const {
    if (num_vars < 1 || num_vars > TruthTable::kMaxVars) throw ConfigInvalid("ls: n must lie in [1, 16]");
    if (operators.empty()) throw ConfigInvalid("ls: operator sequence is empty");
    for (std::size_t k = 0; k < operators.size(); ++k) {
        if (std::find(operators.begin() + static_cast<std::ptrdiff_t>(k) + 1, operators.end(), operators[k]) !=
            operators.end()) {
            throw ConfigInvalid("ls: operator " + std::string(kind_name(operators[k])) + " listed twice");
        }
    }
    if (budget == 0) throw ConfigInvalid("ls: budget must be positive");
    if (start && start->num_vars() != num_vars) throw ConfigInvalid("ls: start table has the wrong n");
}

namespace {

/// Scan order of one neighborhood: position k of the scan visits canonical
/// index (offset + k * stride) mod N, a permutation since gcd(stride, N) = 1.
struct Order {
    bool drawn = false;
    std::uint64_t offset = 0;
    std::uint64_t stride = 1;
};

struct Frame {
    SearchState state;
    std::size_t op = 0;
    std::uint64_t next = 0;
    std::vector<Order> orders;
};

enum class Scan { Improved, Exhausted, OutOfBudget };

class Runner {
public:
    explicit Runner(const LsConfig& config)
        : cfg_(config), rand_(config.seed), eval_(config.num_vars, config.fitness, config.incremental),
          tracker_(config.revert ? "ls-r" : "ls", config_json(config)), len_(std::size_t{1} << config.num_vars) {}

    RunRecord run() {
        std::uint64_t acceptances = 0;
        std::uint64_t depth = 0;
        std::uint64_t descents = 0;
        bool converged = false;
        std::vector<Frame> chain;
        bool first = true;
        while (eval_.evaluations() < cfg_.budget) {
            if (chain.empty()) {
                if (!first && !cfg_.restart_on_convergence) break;
                TruthTable start = first && cfg_.start ? *cfg_.start : random_function(cfg_.num_vars, rand_);
                first = false;
                chain.push_back(fresh(eval_.evaluate(std::move(start))));
                ++descents;
                converged = false;
                offer(chain.back().state);
                continue;
            }
            std::optional<SearchState> found;
            const Scan result = scan(chain.back(), found);
            if (result == Scan::OutOfBudget) break;
            if (result == Scan::Improved) {
                ++acceptances;
                offer(*found);
                if (!cfg_.revert) chain.clear();
                chain.push_back(fresh(std::move(*found)));
                if (cfg_.revert && cfg_.revert_mode == RevertMode::Single && chain.size() > 2) {
                    chain.erase(chain.begin());
                }
                depth = std::max<std::uint64_t>(depth, chain.size() - 1);
                continue;
            }
            // Neighborhood exhausted: plain LS stops here, LS-R steps back.
            if (cfg_.revert) {
                chain.pop_back();
            } else {
                chain.clear();
            }
            if (chain.empty()) converged = true;
        }
        auto record = tracker_.finish(eval_.evaluations());
        record.acceptances = acceptances;
        record.max_chain_depth = depth;
        record.descents = descents;
        record.converged = converged && chain.empty();
        return record;
    }

private:
    Frame fresh(SearchState state) const { return Frame{std::move(state), 0, 0, std::vector<Order>(cfg_.operators.size())}; }

    void offer(const SearchState& s) { tracker_.offer(s.table, s.fitness, eval_.evaluations()); }

    void draw(Order& order, std::uint64_t count) {
        order.drawn = true;
        if (!cfg_.randomized_order || count <= 1) return;
        order.offset = rand_.below(count);
        do {
            order.stride = 1 + rand_.below(count - 1);
        } while (std::gcd(order.stride, count) != 1);
    }

    Scan scan(Frame& f, std::optional<SearchState>& found) {
        for (; f.op < cfg_.operators.size(); ++f.op, f.next = 0) {
            const MutationKind kind = cfg_.operators[f.op];
            const std::uint64_t count = position_count(kind, len_);
            Order& order = f.orders[f.op];
            if (!order.drawn) draw(order, count);
            while (f.next < count) {
                const std::uint64_t k = f.next;
                const std::uint64_t index = (order.offset + k * order.stride) % count;
                const auto m = descriptor_at(kind, len_, index);
                if (!is_effective(f.state.table, m)) {
                    ++f.next;
                    continue;
                }
                if (eval_.evaluations() >= cfg_.budget) return Scan::OutOfBudget;
                ++f.next;
                const auto fitness = eval_.probe(f.state, m);
                if (*fitness > f.state.fitness) {
                    found = eval_.advance(f.state, m);
                    return Scan::Improved;
                }
            }
        }
        return Scan::Exhausted;
    }

    const LsConfig& cfg_;
    RandomSource rand_;
    Evaluator eval_;
    detail::Tracker tracker_;
    std::size_t len_;
};

}  // namespace

RunRecord ls_run(const LsConfig& config) {
    config.validate();
    if (config.revert) throw ConfigInvalid("ls_run: revert must be off");
    return Runner(config).run();
}

RunRecord ls_revert_run(const LsConfig& config) {
    config.validate();
    if (!config.revert) throw ConfigInvalid("ls_revert_run: revert must be on");
    return Runner(config).run();
}

RunRecord local_search(const LsConfig& config) { return config.revert ? ls_revert_run(config) : ls_run(config); }

}  // namespace boolnl::search
