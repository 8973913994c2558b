#include "graphheat/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace graphheat {

namespace {

void check_lengths(const GraphSignal& a, const GraphSignal& b, const char* where) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(where) + ": lengths " + std::to_string(a.size()) +
                             " and " + std::to_string(b.size()) + " differ");
    }
}

} // namespace

double psnr(const GraphSignal& reference, const GraphSignal& candidate) {
    check_lengths(reference, candidate, "psnr");
    if (reference.size() < 1) {
        throw DimensionError("psnr: empty signals");
    }
    const double mse = (reference - candidate).squaredNorm() / static_cast<double>(reference.size());
    if (mse == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double l2_error(const GraphSignal& a, const GraphSignal& b) {
    check_lengths(a, b, "l2_error");
    return (a - b).norm();
}

} // namespace graphheat
