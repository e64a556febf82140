#pragma once

#include <vector>

#include "fastgrant/config.hpp"
#include "fastgrant/rng.hpp"

namespace fastgrant {

// What the scheduler is allowed to see: the candidate ids and their reported
// activity probabilities, nothing about ground truth.
struct CandidateSet {
    const std::vector<int>* ids = nullptr;        // sorted
    const std::vector<double>* p_active = nullptr;  // aligned with ids
};

struct PredictionSnapshot {
    long cycle = 0;
    std::vector<int> predicted_active;  // sorted
    std::vector<double> p_active;       // aligned with predicted_active
    std::vector<int> true_active;       // kept for metrics only
    double realized_error = 0.0;        // e_p actually drawn this cycle

    CandidateSet candidates() const { return {&predicted_active, &p_active}; }
};

// The raw randomness of one prediction, independent of any variant's state:
// the same error draw, flip set and P_a values distort every variant's own
// true-active set identically.
struct PredictionDraws {
    double error = 0.0;          // truncated-normal e_p
    std::vector<int> flip_ids;   // round(e_p * N) distinct devices to flip
    std::vector<double> p_active_u;  // one uniform per device, mapped to the P_a range
};

PredictionDraws draw_prediction(const ScenarioConfig& cfg, RngStream& stream);

PredictionSnapshot apply_prediction(const std::vector<int>& true_active,
                                    const PredictionDraws& draws,
                                    const ScenarioConfig& cfg, long cycle);

// Convenience for standalone use: draw + apply in one call.
PredictionSnapshot predict(const std::vector<int>& true_active, const ScenarioConfig& cfg,
                           RngStream& stream, long cycle = 0);

}  // namespace fastgrant
