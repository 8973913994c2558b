#include "graphheat/noise.hpp"

#include <cmath>
#include <numbers>

namespace graphheat {

double GaussianSampler::uniform01() {
    // top 53 bits -> [0, 1)
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double GaussianSampler::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return r * std::cos(angle);
}

GraphSignal add_awgn(const GraphSignal& u, const NoiseSpec& spec) {
    if (!(spec.sigma >= 0.0)) {
        throw RangeError("add_awgn: sigma must be >= 0");
    }
    if (!u.allFinite()) {
        throw RangeError("add_awgn: non-finite input signal");
    }
    GraphSignal out = u;
    if (spec.sigma == 0.0) return out;
    GaussianSampler gauss(spec.seed);
    for (int i = 0; i < out.size(); ++i) {
        out[i] += spec.sigma * gauss.next();
    }
    return out;
}

} // namespace graphheat
