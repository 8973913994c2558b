#pragma once

#include "graphheat/spectral.hpp"

namespace graphheat {

/// 10 log10(255^2 / MSE) in dB. The peak stays 255 even for signals
/// exceeding [0,255]. MSE == 0 returns +infinity (sentinel, not an error).
double psnr(const GraphSignal& reference, const GraphSignal& candidate);

/// Euclidean distance sqrt(sum (a_i - b_i)^2).
double l2_error(const GraphSignal& a, const GraphSignal& b);

} // namespace graphheat
