#pragma once

#include "graphheat/graph.hpp"
#include "graphheat/spectral.hpp"

namespace graphheat {

/// Explicit-Euler stepping plan for dU/dt = -L U. dt equals the Courant
/// factor directly (pixel spacing is normalized to 1, the Laplacian absorbs
/// h). steps = ceil(T / dt); the final step uses the remainder T -
/// (steps-1) dt so the evolution lands exactly on T.
struct EulerConfig {
    double courant = 0.03;
    double T = 0.5;
    int steps = 0;
    double dt = 0.0;      // regular step size (= courant)
    double dt_last = 0.0; // remainder step, 0 < dt_last <= dt
};

/// Derives the step plan. Throws RangeError unless courant > 0 and T >= 0.
EulerConfig make_euler_config(double courant, double T);

/// Cut-off regularization parameters. m_eps = ln(eps^-gamma)/T, clamped to
/// lambda_max when the rule exceeds the spectrum (capped = true); then the
/// cut-off projection retains everything and coincides with the naive
/// reconstruction.
struct RegularizationParams {
    double epsilon = 0.1;
    double gamma = 0.5;
    double T = 0.5;
    double m_eps = 0.0;
    bool capped = false;
};

/// Applies the selection rule. Throws RangeError unless epsilon, gamma lie
/// in the open interval (0,1), T > 0, and lambda_max >= 0.
RegularizationParams select_m_eps(double epsilon, double gamma, double T, double lambda_max);

/// U(T) ~= (I - dt L)^steps u0. Refuses configurations violating the
/// explicit-Euler stability bound dt * lambda_max <= 2, checked against the
/// Gershgorin estimate lambda_max <= 2 * max_degree.
GraphSignal forward_euler(const LaplacianMatrix& L, const GraphSignal& u0, const EulerConfig& cfg);

/// Exact forward evolution: mode i decays by exp(-lambda_i T). T >= 0.
GraphSignal forward_spectral(const EigenBasis& basis, const GraphSignal& u0, double T);

/// Unregularized backward reconstruction of U(t) from U(T): mode i is
/// amplified by exp(lambda_i (T - t)). Exponentially unstable in the
/// presence of noise; kept as the comparison baseline. Throws
/// AmplificationError instead of emitting Inf when any exponent exceeds
/// 700.
GraphSignal backward_naive(const EigenBasis& basis, const GraphSignal& uT, double T, double t);

/// Cut-off projection reconstruction: modes with lambda_i <= m_eps (closed
/// threshold, exactly as written) are amplified by exp(lambda_i (T - t));
/// all higher modes are discarded. Work scales with the retained band.
GraphSignal backward_cutoff(const EigenBasis& basis, const GraphSignal& uT,
                            const RegularizationParams& params, double t);

/// |{i : lambda_i <= m_eps}|. Monotone in m_eps; never exceeds n.
int count_admissible(const EigenBasis& basis, double m_eps);

} // namespace graphheat
