#include "graphheat/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace graphheat {

namespace {

constexpr double kExpGuard = 700.0; // just under the e^x overflow limit

void check_time_window(double T, double t, const char* where) {
    if (!(T >= 0.0) || !(t >= 0.0) || !(t <= T)) {
        throw RangeError(std::string(where) + ": need 0 <= t <= T, got t=" + std::to_string(t) +
                         ", T=" + std::to_string(T));
    }
}

} // namespace

EulerConfig make_euler_config(double courant, double T) {
    if (!(courant > 0.0)) {
        throw RangeError("make_euler_config: courant must be > 0");
    }
    if (!(T >= 0.0)) {
        throw RangeError("make_euler_config: T must be >= 0");
    }
    EulerConfig cfg;
    cfg.courant = courant;
    cfg.T = T;
    cfg.dt = courant;
    if (T == 0.0) {
        cfg.steps = 0;
        cfg.dt_last = 0.0;
        return cfg;
    }
    if (T / courant > 1e8) {
        throw ConfigError("make_euler_config: more than 1e8 steps requested");
    }
    int steps = std::max(1, static_cast<int>(std::ceil(T / courant)));
    double last = T - (steps - 1) * courant;
    // ceil can land one step high or low at representation boundaries;
    // settle on 0 < dt_last <= dt.
    while (steps > 1 && last <= 0.0) {
        --steps;
        last = T - (steps - 1) * courant;
    }
    while (last > courant) {
        ++steps;
        last = T - (steps - 1) * courant;
    }
    cfg.steps = steps;
    cfg.dt_last = last;
    return cfg;
}

GraphSignal forward_euler(const LaplacianMatrix& L, const GraphSignal& u0, const EulerConfig& cfg) {
    if (u0.size() != L.size()) {
        throw DimensionError("forward_euler: signal length " + std::to_string(u0.size()) +
                             " != graph size " + std::to_string(L.size()));
    }
    if (!u0.allFinite()) {
        throw RangeError("forward_euler: non-finite input signal");
    }
    // Stability against the Gershgorin bound lambda_max <= 2 max_degree;
    // violations are refused, never silently computed.
    const double lam_bound = 2.0 * L.max_degree();
    if (cfg.dt * lam_bound > 2.0) {
        throw ConfigError("forward_euler: dt * lambda_max bound = " +
                          std::to_string(cfg.dt * lam_bound) +
                          " > 2 violates explicit-Euler stability");
    }
    GraphSignal u = u0;
    for (int s = 0; s < cfg.steps; ++s) {
        const double h = (s + 1 == cfg.steps) ? cfg.dt_last : cfg.dt;
        u -= h * L.apply(u);
    }
    return u;
}

GraphSignal forward_spectral(const EigenBasis& basis, const GraphSignal& u0, double T) {
    if (!(T >= 0.0)) {
        throw RangeError("forward_spectral: negative T rejected; use the backward operations");
    }
    SpectralCoefficients coeffs = basis.analyze(u0);
    const Eigen::VectorXd& lam = basis.eigenvalues();
    for (int i = 0; i < coeffs.size(); ++i) {
        coeffs[i] *= std::exp(-lam[i] * T);
    }
    return basis.synthesize(coeffs);
}

GraphSignal backward_naive(const EigenBasis& basis, const GraphSignal& uT, double T, double t) {
    check_time_window(T, t, "backward_naive");
    const double max_exponent = basis.lambda_max() * (T - t);
    if (max_exponent > kExpGuard) {
        throw AmplificationError("backward_naive: exponent lambda_max (T - t) = " +
                                 std::to_string(max_exponent) + " exceeds " +
                                 std::to_string(kExpGuard) + "; result would overflow");
    }
    SpectralCoefficients coeffs = basis.analyze(uT);
    const Eigen::VectorXd& lam = basis.eigenvalues();
    for (int i = 0; i < coeffs.size(); ++i) {
        coeffs[i] *= std::exp(lam[i] * (T - t));
    }
    return basis.synthesize(coeffs);
}

RegularizationParams select_m_eps(double epsilon, double gamma, double T, double lambda_max) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw RangeError("select_m_eps: epsilon must lie in (0,1), got " + std::to_string(epsilon));
    }
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw RangeError("select_m_eps: gamma must lie in (0,1), got " + std::to_string(gamma));
    }
    if (!(T > 0.0)) {
        throw RangeError("select_m_eps: T must be > 0");
    }
    if (!(lambda_max >= 0.0)) {
        throw RangeError("select_m_eps: lambda_max must be >= 0");
    }
    RegularizationParams p;
    p.epsilon = epsilon;
    p.gamma = gamma;
    p.T = T;
    const double rule = -gamma * std::log(epsilon) / T; // ln(eps^-gamma) / T
    if (rule > lambda_max) {
        p.m_eps = lambda_max;
        p.capped = true;
    } else {
        p.m_eps = rule;
        p.capped = false;
    }
    return p;
}

GraphSignal backward_cutoff(const EigenBasis& basis, const GraphSignal& uT,
                            const RegularizationParams& params, double t) {
    check_time_window(params.T, t, "backward_cutoff");
    const int retained = count_admissible(basis, params.m_eps);
    if (retained > 0) {
        const double max_exponent = basis.eigenvalue(retained - 1) * (params.T - t);
        if (max_exponent > kExpGuard) {
            throw AmplificationError("backward_cutoff: exponent " + std::to_string(max_exponent) +
                                     " exceeds " + std::to_string(kExpGuard));
        }
    }
    SpectralCoefficients coeffs = basis.analyze_leading(uT, retained);
    const Eigen::VectorXd& lam = basis.eigenvalues();
    for (int i = 0; i < retained; ++i) {
        coeffs[i] *= std::exp(lam[i] * (params.T - t));
    }
    return basis.synthesize(coeffs);
}

int count_admissible(const EigenBasis& basis, double m_eps) {
    const Eigen::VectorXd& lam = basis.eigenvalues();
    // closed threshold: lambda_i <= m_eps retained
    const double* begin = lam.data();
    const double* end = lam.data() + lam.size();
    return static_cast<int>(std::upper_bound(begin, end, m_eps) - begin);
}

} // namespace graphheat
