#pragma once

#include <cstdint>
#include <random>

#include "graphheat/spectral.hpp"

namespace graphheat {

/// Additive white Gaussian noise parameters. sigma is the standard
/// deviation on the 0..255 intensity scale.
struct NoiseSpec {
    double sigma = 20.0;
    std::uint64_t seed = 0;
};

/// Deterministic Gaussian stream: std::mt19937_64 (bit-exact across
/// conforming implementations) driving a hand-rolled Box-Muller transform,
/// so the sample sequence is pinned by this repo rather than by the
/// standard library's unspecified normal_distribution.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : rng_(seed) {}

    /// Next N(0,1) sample.
    double next();

private:
    double uniform01(); // in [0, 1), 53-bit resolution

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// u + eta with eta_i i.i.d. N(0, sigma^2), freshly seeded per call. No
/// clamping to [0,255]: the perturbation stays additive so the linear
/// theory applies; quantization happens only at image export.
GraphSignal add_awgn(const GraphSignal& u, const NoiseSpec& spec);

} // namespace graphheat
