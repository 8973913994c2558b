#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace graphheat {

enum class PropScale { small_8x8, medium_32x32 };

struct PropResult {
    std::string name;
    bool passed = false;
    int trials = 0;
    std::string detail; // on failure: offending seed and the violated bound
};

struct PropReport {
    std::vector<PropResult> results;
    bool all_passed() const;
};

/// Randomized checks of the reconstruction guarantees, driven by a single
/// master seed:
///
///  - boundedness:   ||P uT(t)|| <= e^{M(T-t)} ||uT|| + 1e-9
///  - stability:     ||P uT(t) - P uT'(t)|| <= e^{M(T-t)} eps + 1e-9
///                   whenever ||uT - uT'|| <= eps
///  - convergence:   ||U(t) - P U'(t)|| <= M^{-1} ||dU/dt|| +
///                   e^{M(T-t)} eps + 1e-8 for band-limited truths
///  - monotone_sweep: median reconstruction error over 5 seeds is
///                   nonincreasing as eps shrinks 0.2 -> 0.025 (at most one
///                   adjacent inversion tolerated)
///  - linearity:     cut-off reconstruction is linear to 1e-10
///  - amplification_safety: no overflow error while M(T-t) stays under the
///                   double-precision exponent guard
///
/// Violations name the offending trial seed in `detail`.
PropReport run_property_suite(std::uint64_t seed, PropScale scale, int trials = 1000);

} // namespace graphheat
