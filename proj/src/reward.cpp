#include "fastgrant/reward.hpp"

#include <algorithm>
#include <cmath>

namespace fastgrant {

double gompertz(double d, double a, double b, double c) {
    return a - a * std::exp(-b * std::exp(-c * d));
}

double utility(const QosSample& sample, const RewardParams& params) {
    const double rate_norm = std::min(sample.rate_bps / params.r_max_bps, 1.0);
    const double delay_norm = gompertz(static_cast<double>(sample.max_delay),
                                       params.gompertz_a, params.gompertz_b,
                                       params.gompertz_c);
    return params.delta1 * sample.value_of_info + params.delta2 * rate_norm +
           params.delta3 * delay_norm;
}

double reward(const QosSample& sample, const RewardParams& params) {
    if (sample.rate_bps < sample.min_rate_bps) {
        return 0.0;
    }
    if (sample.access_delay > sample.max_delay) {
        return 0.0;
    }
    return utility(sample, params);
}

}  // namespace fastgrant
