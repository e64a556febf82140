#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fastgrant/predictor.hpp"

using namespace fastgrant;

namespace {

ScenarioConfig cfg_with_error(double mean, double stddev, int n = 500) {
    ScenarioConfig cfg;
    cfg.n_devices = n;
    cfg.pred_err_mean = mean;
    cfg.pred_err_std = stddev;
    return cfg;
}

std::size_t symmetric_difference_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> diff;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(diff));
    return diff.size();
}

// Mean and stddev of a normal truncated to [0, 1].
struct TruncatedMoments {
    double mean;
    double stddev;
};

TruncatedMoments truncated_normal_moments(double mu, double sigma) {
    const auto phi = [](double x) { return std::exp(-x * x / 2.0) / std::sqrt(2.0 * M_PI); };
    const auto cdf = [](double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); };
    const double a = (0.0 - mu) / sigma;
    const double b = (1.0 - mu) / sigma;
    const double z = cdf(b) - cdf(a);
    const double mean = mu + sigma * (phi(a) - phi(b)) / z;
    const double variance =
        sigma * sigma *
        (1.0 + (a * phi(a) - b * phi(b)) / z -
         ((phi(a) - phi(b)) / z) * ((phi(a) - phi(b)) / z));
    return {mean, std::sqrt(variance)};
}

}  // namespace

TEST_CASE("zero error reproduces the true set exactly") {
    const ScenarioConfig cfg = cfg_with_error(0.0, 0.0);
    RngStream stream = derive_stream(2, "predictor");
    const std::vector<int> truth = {3, 77, 200, 499};
    const PredictionSnapshot snap = predict(truth, cfg, stream);
    CHECK(snap.predicted_active == truth);
    CHECK(snap.realized_error == 0.0);
}

TEST_CASE("deterministic error of 0.01 over 500 devices flips exactly 5 statuses") {
    const ScenarioConfig cfg = cfg_with_error(0.01, 0.0);
    RngStream stream = derive_stream(3, "predictor");
    std::vector<int> truth;
    for (int i = 0; i < 250; ++i) {
        truth.push_back(2 * i);
    }
    const PredictionSnapshot snap = predict(truth, cfg, stream);
    CHECK(snap.realized_error == doctest::Approx(0.01));
    CHECK(symmetric_difference_size(snap.predicted_active, truth) == 5);
}

TEST_CASE("error of one yields the exact complement") {
    const ScenarioConfig cfg = cfg_with_error(1.0, 0.0, 100);
    RngStream stream = derive_stream(4, "predictor");
    std::vector<int> truth;
    for (int i = 0; i < 100; i += 3) {
        truth.push_back(i);
    }
    const PredictionSnapshot snap = predict(truth, cfg, stream);
    CHECK(symmetric_difference_size(snap.predicted_active, truth) == 100);
    for (int id : truth) {
        CHECK_FALSE(std::binary_search(snap.predicted_active.begin(),
                                       snap.predicted_active.end(), id));
    }
}

TEST_CASE("flip count always equals round(e_p * N)") {
    ScenarioConfig cfg = cfg_with_error(0.1, 0.2, 137);
    RngStream stream = derive_stream(5, "predictor");
    std::vector<int> truth;
    for (int i = 0; i < 137; i += 2) {
        truth.push_back(i);
    }
    for (int trial = 0; trial < 200; ++trial) {
        const PredictionSnapshot snap = predict(truth, cfg, stream);
        CHECK(snap.realized_error >= 0.0);
        CHECK(snap.realized_error <= 1.0);
        const auto expected_flips =
            static_cast<std::size_t>(std::lround(snap.realized_error * cfg.n_devices));
        CHECK(symmetric_difference_size(snap.predicted_active, truth) == expected_flips);
    }
}

TEST_CASE("activity probabilities cover exactly the predicted set, within range") {
    ScenarioConfig cfg = cfg_with_error(0.2, 0.1, 200);
    cfg.p_active_min = 0.8;
    cfg.p_active_max = 1.0;
    RngStream stream = derive_stream(6, "predictor");
    std::vector<int> truth;
    for (int i = 50; i < 150; ++i) {
        truth.push_back(i);
    }
    const PredictionSnapshot snap = predict(truth, cfg, stream);
    CHECK(snap.p_active.size() == snap.predicted_active.size());
    for (double p : snap.p_active) {
        CHECK(p >= 0.8);
        CHECK(p <= 1.0);
    }
    CHECK(std::is_sorted(snap.predicted_active.begin(), snap.predicted_active.end()));
}

TEST_CASE("realized errors match the truncated normal mean over many cycles") {
    const ScenarioConfig cfg = cfg_with_error(0.01, 0.04);
    RngStream stream = derive_stream(7, "predictor");
    const int cycles = 10000;
    double sum = 0.0;
    for (int t = 0; t < cycles; ++t) {
        sum += draw_prediction(cfg, stream).error;
    }
    const TruncatedMoments oracle = truncated_normal_moments(0.01, 0.04);
    const double standard_error = oracle.stddev / std::sqrt(static_cast<double>(cycles));
    CHECK(std::abs(sum / cycles - oracle.mean) < 3.0 * standard_error);
}

TEST_CASE("shared draws distort different truths consistently") {
    // The same draw applied to two different true sets flips the same devices.
    const ScenarioConfig cfg = cfg_with_error(0.1, 0.0, 50);
    RngStream stream = derive_stream(8, "predictor");
    const PredictionDraws draws = draw_prediction(cfg, stream);
    const std::vector<int> truth_a = {0, 1, 2, 3, 4};
    const std::vector<int> truth_b = {45, 46, 47, 48, 49};
    const PredictionSnapshot snap_a = apply_prediction(truth_a, draws, cfg, 0);
    const PredictionSnapshot snap_b = apply_prediction(truth_b, draws, cfg, 0);
    CHECK(snap_a.realized_error == snap_b.realized_error);
    std::set<int> flips(draws.flip_ids.begin(), draws.flip_ids.end());
    CHECK(flips.size() == 5);  // distinct devices
    CHECK(symmetric_difference_size(snap_a.predicted_active, truth_a) == 5);
    CHECK(symmetric_difference_size(snap_b.predicted_active, truth_b) == 5);
}
