#pragma once

#include "fastgrant/config.hpp"

namespace fastgrant {

// One served (or hypothetically served) transmission.
struct QosSample {
    double value_of_info = 0.0;  // v_i in [0, 1]
    double rate_bps = 0.0;       // achieved rate r_i
    int max_delay = 0;           // D_i, cycles
    long access_delay = 0;       // d_i, cycles
    double min_rate_bps = 0.0;   // R_i_min
};

struct RewardParams {
    double delta1 = 0.2;
    double delta2 = 0.3;
    double delta3 = 0.5;
    double gompertz_a = 1.0;
    double gompertz_b = 8.0;
    double gompertz_c = 0.03;
    double r_max_bps = 2e7;

    static RewardParams from_config(const ScenarioConfig& cfg) {
        return {cfg.delta1, cfg.delta2, cfg.delta3, cfg.gompertz_a,
                cfg.gompertz_b, cfg.gompertz_c, cfg.r_max_bps};
    }
};

// Delay normalizer: a - a*exp(-b*exp(-c*d)); 1-ish at d = 0, falls to 0.
double gompertz(double d, double a, double b, double c);

// delta1*v + delta2*min(r/Rmax, 1) + delta3*f(D). The delay term uses the
// device's tolerance D_i, not the realized delay, so tighter deadlines mean
// higher utility.
double utility(const QosSample& sample, const RewardParams& params);

// Utility gated by the rate and deadline indicators.
double reward(const QosSample& sample, const RewardParams& params);

}  // namespace fastgrant
