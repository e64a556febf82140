#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fastgrant {

// Every stochastic process in the simulator owns a named stream derived
// from (seed, label). Same pair -> same sequence; different labels are
// independent, so changing one process never perturbs the others.
using RngStream = std::mt19937_64;

RngStream derive_stream(std::uint64_t seed, std::string_view label);

// Samplers are hand-rolled so a given engine state always yields the same
// value sequence regardless of standard-library internals.
double uniform_double(RngStream& rng);                       // [0, 1)
double uniform_in(RngStream& rng, double lo, double hi);
double normal(RngStream& rng, double mean, double stddev);
double exponential_mean1(RngStream& rng);
std::uint64_t bounded_uint(RngStream& rng, std::uint64_t n);  // [0, n)

}  // namespace fastgrant
