#include "fastgrant/rng.hpp"

#include <cmath>
#include <vector>

namespace fastgrant {

RngStream derive_stream(std::uint64_t seed, std::string_view label) {
    std::vector<std::uint32_t> material;
    material.reserve(2 + label.size());
    material.push_back(static_cast<std::uint32_t>(seed));
    material.push_back(static_cast<std::uint32_t>(seed >> 32));
    for (unsigned char c : label) {
        material.push_back(c);
    }
    std::seed_seq seq(material.begin(), material.end());
    return RngStream(seq);
}

double uniform_double(RngStream& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_in(RngStream& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_double(rng);
}

double normal(RngStream& rng, double mean, double stddev) {
    // Box-Muller, fixed two-uniform consumption per call.
    double u1 = uniform_double(rng);
    double u2 = uniform_double(rng);
    while (u1 <= 0.0) {
        u1 = uniform_double(rng);
    }
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * radius * std::cos(2.0 * M_PI * u2);
}

double exponential_mean1(RngStream& rng) {
    return -std::log1p(-uniform_double(rng));
}

std::uint64_t bounded_uint(RngStream& rng, std::uint64_t n) {
    if (n == 0) {
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) {
        x = rng();
    }
    return x % n;
}

}  // namespace fastgrant
