#pragma once

#include <vector>

#include "fastgrant/config.hpp"
#include "fastgrant/population.hpp"
#include "fastgrant/rng.hpp"

namespace fastgrant {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double db_to_linear(double db);
double linear_to_db(double linear);

// 3GPP urban-macro path loss, distance clamped below at 1 m.
double path_loss_db(double distance_m);

// gamma = |h|^2 / (N0 * B): path loss x log-normal shadowing x Rayleigh
// (exponential) fading, normalized by the per-RB noise power.
double normalized_gain(double path_loss_linear, double shadowing_db, double fading,
                       double noise_w_per_hz, double bandwidth_hz);

struct ChannelModel {
    explicit ChannelModel(const ScenarioConfig& cfg,
                          const std::vector<MtdProfile>& population);

    // Fresh i.i.d. shadowing and fading per device; fixed stream consumption.
    std::vector<double> draw_gains(RngStream& stream) const;

    const std::vector<double>& path_loss_linear() const { return path_loss_linear_; }
    double noise_power_w() const { return noise_w_per_hz_ * bandwidth_hz_; }

  private:
    double shadowing_sigma_db_;
    double noise_w_per_hz_;
    double bandwidth_hz_;
    std::vector<double> path_loss_linear_;
};

// Interference-free rate: B * log2(1 + p * gamma).
double oma_rate(double p_tx_w, double gamma, double bandwidth_hz);

struct NomaRates {
    double strong_bps;  // decoded first, sees the weak signal as interference
    double weak_bps;    // decoded after cancellation, interference-free
};

NomaRates noma_rates(double p_strong_w, double gamma_strong, double p_weak_w,
                     double gamma_weak, double bandwidth_hz);

}  // namespace fastgrant
