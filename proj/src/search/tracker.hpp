#pragma once

#include <chrono>
#include <optional>
#include <string>

#include "boolnl/search.hpp"

namespace boolnl::search::detail {

/// Best-so-far bookkeeping shared by all algorithms.
class Tracker {
public:
    Tracker(std::string algorithm, std::string config)
        : algorithm_(std::move(algorithm)), config_(std::move(config)), start_(std::chrono::steady_clock::now()) {}

    void offer(const TruthTable& table, const FitnessValue& fitness, std::uint64_t evaluation) {
        if (best_ && !(fitness > best_->second)) return;
        best_.emplace(table, fitness);
        trajectory_.push_back({evaluation, fitness});
    }

    RunRecord finish(std::uint64_t evaluations) {
        RunRecord r{algorithm_, config_, std::move(trajectory_), best_->first, best_->second};
        r.evaluations = evaluations;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return r;
    }

private:
    std::string algorithm_;
    std::string config_;
    std::chrono::steady_clock::time_point start_;
    std::optional<std::pair<TruthTable, FitnessValue>> best_;
    std::vector<TrajectoryPoint> trajectory_;
};

}  // namespace boolnl::search::detail
