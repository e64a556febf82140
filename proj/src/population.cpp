#include "fastgrant/population.hpp"

#include <cmath>

namespace fastgrant {

std::vector<MtdProfile> build_population(const ScenarioConfig& cfg, RngStream& stream) {
    cfg.validate();
    const int n = cfg.n_devices;
    const int n_strict = (n + 1) / 2;
    std::vector<MtdProfile> devices(n);
    for (int i = 0; i < n; ++i) {
        MtdProfile& dev = devices[i];
        dev.id = i;
        dev.x_m = uniform_in(stream, 0.0, cfg.area_side_m);
        dev.y_m = uniform_in(stream, 0.0, cfg.area_side_m);
        dev.qos_class = i < n_strict ? QosClass::Strict : QosClass::Relaxed;
        const int lo = dev.qos_class == QosClass::Strict ? 1 : 150;
        const int hi = dev.qos_class == QosClass::Strict ? 100 : 300;
        dev.max_delay_cycles =
            lo + static_cast<int>(bounded_uint(stream, static_cast<std::uint64_t>(hi - lo + 1)));
        dev.min_rate_bps = cfg.min_rate_bps;
    }
    return devices;
}

double distance_to_bs(const MtdProfile& dev, const ScenarioConfig& cfg) {
    const double cx = cfg.area_side_m / 2.0;
    const double dx = dev.x_m - cx;
    const double dy = dev.y_m - cx;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace fastgrant
