#pragma once

#include <vector>

#include "fastgrant/config.hpp"
#include "fastgrant/rng.hpp"

namespace fastgrant {

enum class QosClass { Strict, Relaxed };

struct MtdProfile {
    int id = 0;
    double x_m = 0.0;
    double y_m = 0.0;
    int max_delay_cycles = 0;   // D_i
    double min_rate_bps = 0.0;  // R_i_min
    QosClass qos_class = QosClass::Strict;
};

// N devices placed uniformly over the square; the first ceil(N/2) carry a
// strict delay bound in [1, 100] cycles, the rest a relaxed bound in
// [150, 300]. Pure function of (cfg, stream state).
std::vector<MtdProfile> build_population(const ScenarioConfig& cfg, RngStream& stream);

// Base station sits at the center of the square.
double distance_to_bs(const MtdProfile& dev, const ScenarioConfig& cfg);

}  // namespace fastgrant
