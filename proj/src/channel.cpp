#include "fastgrant/channel.hpp"

#include <algorithm>
#include <cmath>

namespace fastgrant {

double dbm_to_watts(double dbm) {
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) {
    return 10.0 * std::log10(watts) + 30.0;
}

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
    return 10.0 * std::log10(linear);
}

double path_loss_db(double distance_m) {
    const double d_km = std::max(distance_m, 1.0) / 1000.0;
    return 128.1 + 37.6 * std::log10(d_km);
}

double normalized_gain(double path_loss_linear, double shadowing_db, double fading,
                       double noise_w_per_hz, double bandwidth_hz) {
    const double h2 = path_loss_linear * db_to_linear(shadowing_db) * fading;
    return h2 / (noise_w_per_hz * bandwidth_hz);
}

ChannelModel::ChannelModel(const ScenarioConfig& cfg,
                           const std::vector<MtdProfile>& population)
    : shadowing_sigma_db_(cfg.shadowing_sigma_db),
      noise_w_per_hz_(dbm_to_watts(cfg.noise_psd_dbm_hz)),
      bandwidth_hz_(cfg.bandwidth_hz) {
    path_loss_linear_.reserve(population.size());
    for (const auto& dev : population) {
        path_loss_linear_.push_back(db_to_linear(-path_loss_db(distance_to_bs(dev, cfg))));
    }
}

std::vector<double> ChannelModel::draw_gains(RngStream& stream) const {
    std::vector<double> gains(path_loss_linear_.size());
    for (std::size_t i = 0; i < gains.size(); ++i) {
        const double shadow_db = normal(stream, 0.0, shadowing_sigma_db_);
        const double fading = exponential_mean1(stream);
        gains[i] = normalized_gain(path_loss_linear_[i], shadow_db, fading,
                                   noise_w_per_hz_, bandwidth_hz_);
    }
    return gains;
}

double oma_rate(double p_tx_w, double gamma, double bandwidth_hz) {
    return bandwidth_hz * std::log2(1.0 + p_tx_w * gamma);
}

NomaRates noma_rates(double p_strong_w, double gamma_strong, double p_weak_w,
                     double gamma_weak, double bandwidth_hz) {
    const double weak_snr = p_weak_w * gamma_weak;
    NomaRates rates;
    rates.strong_bps =
        bandwidth_hz * std::log2(1.0 + p_strong_w * gamma_strong / (weak_snr + 1.0));
    rates.weak_bps = bandwidth_hz * std::log2(1.0 + weak_snr);
    return rates;
}

}  // namespace fastgrant
