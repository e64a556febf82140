#include "fastgrant/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fastgrant {

namespace {

double draw_truncated_error(const ScenarioConfig& cfg, RngStream& stream) {
    if (cfg.pred_err_std == 0.0) {
        return std::clamp(cfg.pred_err_mean, 0.0, 1.0);
    }
    for (int attempt = 0; attempt < 100; ++attempt) {
        const double e = normal(stream, cfg.pred_err_mean, cfg.pred_err_std);
        if (e >= 0.0 && e <= 1.0) {
            return e;
        }
    }
    return std::clamp(normal(stream, cfg.pred_err_mean, cfg.pred_err_std), 0.0, 1.0);
}

}  // namespace

PredictionDraws draw_prediction(const ScenarioConfig& cfg, RngStream& stream) {
    const int n = cfg.n_devices;
    PredictionDraws draws;
    draws.error = draw_truncated_error(cfg, stream);

    // Flip candidates are uniform over the whole population, so the
    // false-positive/false-negative mix follows the instantaneous active
    // fraction.
    const int flips = static_cast<int>(std::lround(draws.error * n));
    std::vector<int> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    draws.flip_ids.reserve(flips);
    for (int i = 0; i < flips; ++i) {
        const int j =
            i + static_cast<int>(bounded_uint(stream, static_cast<std::uint64_t>(n - i)));
        std::swap(indices[i], indices[j]);
        draws.flip_ids.push_back(indices[i]);
    }

    draws.p_active_u.resize(n);
    for (int i = 0; i < n; ++i) {
        draws.p_active_u[i] = uniform_double(stream);
    }
    return draws;
}

PredictionSnapshot apply_prediction(const std::vector<int>& true_active,
                                    const PredictionDraws& draws,
                                    const ScenarioConfig& cfg, long cycle) {
    const int n = cfg.n_devices;
    std::vector<char> active(n, 0);
    for (int id : true_active) {
        active[id] = 1;
    }
    std::vector<char> predicted = active;
    for (int id : draws.flip_ids) {
        predicted[id] = !predicted[id];
    }

    PredictionSnapshot snapshot;
    snapshot.cycle = cycle;
    snapshot.realized_error = draws.error;
    snapshot.true_active = true_active;
    for (int i = 0; i < n; ++i) {
        if (predicted[i]) {
            snapshot.predicted_active.push_back(i);
            snapshot.p_active.push_back(cfg.p_active_min +
                                        (cfg.p_active_max - cfg.p_active_min) *
                                            draws.p_active_u[i]);
        }
    }
    return snapshot;
}

PredictionSnapshot predict(const std::vector<int>& true_active, const ScenarioConfig& cfg,
                           RngStream& stream, long cycle) {
    return apply_prediction(true_active, draw_prediction(cfg, stream), cfg, cycle);
}

}  // namespace fastgrant
