#include "graphheat/propsuite.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "graphheat/diffusion.hpp"
#include "graphheat/metrics.hpp"
#include "graphheat/noise.hpp"
#include "graphheat/spectral.hpp"

namespace graphheat {

bool PropReport::all_passed() const {
    return std::all_of(results.begin(), results.end(),
                       [](const PropResult& r) { return r.passed; });
}

namespace {

constexpr double kT = 0.5;
const double kTimes[] = {0.0, kT / 2.0, kT};

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t trial) {
    // splitmix64 step; decorrelates per-trial streams
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct TrialRng {
    explicit TrialRng(std::uint64_t seed) : rng(seed) {}

    double uniform() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Eigen::VectorXd uniform_vec(int n, double lo, double hi) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    /// Random direction with the requested norm.
    Eigen::VectorXd perturbation(int n, double norm) {
        GaussianSampler g(rng());
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = g.next();
        const double len = v.norm();
        return len > 0.0 ? Eigen::VectorXd(v * (norm / len)) : v;
    }

    std::mt19937_64 rng;
};

RegularizationParams direct_cutoff(double m_eps, double T) {
    RegularizationParams p;
    p.epsilon = 0.5;
    p.gamma = 0.5;
    p.T = T;
    p.m_eps = m_eps;
    p.capped = false;
    return p;
}

std::string fail_detail(const char* what, std::uint64_t trial, std::uint64_t seed, double lhs,
                        double rhs) {
    std::ostringstream os;
    os << what << " violated at trial " << trial << " (seed " << seed << "): lhs=" << lhs
       << " > rhs=" << rhs;
    return os.str();
}

/// ||P uT(t)|| <= e^{M (T-t)} ||uT|| + 1e-9
PropResult check_boundedness(const EigenBasis& basis, std::uint64_t master, int trials) {
    PropResult res{"boundedness", true, trials, ""};
    const int n = basis.size();
    const double lam_max = basis.lambda_max();

    // kernel-only edge case: M = 0 keeps only the constant mode
    {
        TrialRng rng(mix_seed(master, 0xB0));
        const Eigen::VectorXd uT = rng.uniform_vec(n, 50.0, 255.0); // nonzero mean
        const double lhs = backward_cutoff(basis, uT, direct_cutoff(0.0, kT), 0.0).norm();
        if (lhs > uT.norm() + 1e-9) {
            res.passed = false;
            res.detail = fail_detail("boundedness (M=0)", 0, 0xB0, lhs, uT.norm());
            return res;
        }
    }

    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = mix_seed(master, static_cast<std::uint64_t>(trial));
        TrialRng rng(seed);
        const Eigen::VectorXd uT = rng.uniform_vec(n, 0.0, 255.0);
        const double m = rng.uniform(0.0, lam_max);
        const RegularizationParams params = direct_cutoff(m, kT);
        for (const double t : kTimes) {
            const double lhs = backward_cutoff(basis, uT, params, t).norm();
            const double rhs = std::exp(m * (kT - t)) * uT.norm() + 1e-9;
            if (lhs > rhs) {
                res.passed = false;
                res.detail = fail_detail("boundedness", trial, seed, lhs, rhs);
                return res;
            }
        }
    }
    return res;
}

/// ||P uT(t) - P uT'(t)|| <= e^{M (T-t)} eps + 1e-9 when ||uT - uT'|| <= eps
PropResult check_stability(const EigenBasis& basis, std::uint64_t master, int trials) {
    PropResult res{"stability", true, trials, ""};
    const int n = basis.size();
    const double lam_max = basis.lambda_max();
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = mix_seed(master ^ 0x5741B1A1ULL, static_cast<std::uint64_t>(trial));
        TrialRng rng(seed);
        const Eigen::VectorXd uT = rng.uniform_vec(n, 0.0, 255.0);
        const double eps = std::exp(rng.uniform(std::log(1e-3), 0.0));
        const Eigen::VectorXd noisy = uT + rng.perturbation(n, 0.99 * eps);
        const double m = rng.uniform(0.0, lam_max);
        const RegularizationParams params = direct_cutoff(m, kT);
        for (const double t : kTimes) {
            const double lhs =
                (backward_cutoff(basis, uT, params, t) - backward_cutoff(basis, noisy, params, t))
                    .norm();
            const double rhs = std::exp(m * (kT - t)) * eps + 1e-9;
            if (lhs > rhs) {
                res.passed = false;
                res.detail = fail_detail("stability", trial, seed, lhs, rhs);
                return res;
            }
        }
    }
    return res;
}

constexpr int kBandModes = 10;

Eigen::VectorXd band_limited_terminal(const EigenBasis& basis, TrialRng& rng,
                                      Eigen::VectorXd& coeffs_out) {
    coeffs_out = rng.uniform_vec(kBandModes, -50.0, 50.0);
    return basis.synthesize(coeffs_out);
}

/// d/dt U(t) = sum_i -lambda_i e^{lambda_i (T-t)} <U_T, phi_i> phi_i
double time_derivative_norm(const EigenBasis& basis, const Eigen::VectorXd& band_coeffs, double t) {
    Eigen::VectorXd g(band_coeffs.size());
    for (int i = 0; i < band_coeffs.size(); ++i) {
        const double lam = basis.eigenvalue(i);
        g[i] = -lam * std::exp(lam * (kT - t)) * band_coeffs[i];
    }
    return basis.synthesize(g).norm();
}

/// ||U(t) - P U'(t)|| <= M^{-1} ||dU/dt|| + e^{M (T-t)} eps + 1e-8
PropResult check_convergence(const EigenBasis& basis, std::uint64_t master, int trials) {
    PropResult res{"convergence", true, trials, ""};
    const int n = basis.size();
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = mix_seed(master ^ 0xC04E5ULL, static_cast<std::uint64_t>(trial));
        TrialRng rng(seed);
        Eigen::VectorXd band_coeffs;
        const Eigen::VectorXd uT = band_limited_terminal(basis, rng, band_coeffs);
        const double eps = std::exp(rng.uniform(std::log(1e-3), 0.0));
        const double gamma = rng.uniform(0.05, 0.95);
        const RegularizationParams params = select_m_eps(eps, gamma, kT, basis.lambda_max());
        const Eigen::VectorXd noisy = uT + rng.perturbation(n, 0.99 * eps);
        for (const double t : kTimes) {
            const Eigen::VectorXd truth = backward_naive(basis, uT, kT, t);
            const Eigen::VectorXd rec = backward_cutoff(basis, noisy, params, t);
            const double lhs = (truth - rec).norm();
            const double rhs = time_derivative_norm(basis, band_coeffs, t) / params.m_eps +
                               std::exp(params.m_eps * (kT - t)) * eps + 1e-8;
            if (lhs > rhs) {
                res.passed = false;
                res.detail = fail_detail("convergence", trial, seed, lhs, rhs);
                return res;
            }
        }
    }
    return res;
}

/// Median (over 5 seeds) reconstruction error at t=0 is nonincreasing as
/// eps falls with M_eps = ln(eps^-gamma)/T; one adjacent inversion allowed.
PropResult check_monotone_sweep(const EigenBasis& basis, std::uint64_t master) {
    const double eps_grid[] = {0.2, 0.1, 0.05, 0.025};
    constexpr int kSeeds = 5;
    PropResult res{"monotone_sweep", true, kSeeds * 4, ""};
    const int n = basis.size();

    std::vector<std::vector<double>> errs(4);
    for (int s = 0; s < kSeeds; ++s) {
        TrialRng rng(mix_seed(master ^ 0x30303030ULL, static_cast<std::uint64_t>(s)));
        Eigen::VectorXd band_coeffs;
        const Eigen::VectorXd uT = band_limited_terminal(basis, rng, band_coeffs);
        const Eigen::VectorXd u0 = backward_naive(basis, uT, kT, 0.0);
        for (int k = 0; k < 4; ++k) {
            const double eps = eps_grid[k];
            const RegularizationParams params = select_m_eps(eps, 0.5, kT, basis.lambda_max());
            const Eigen::VectorXd noisy = uT + rng.perturbation(n, 0.99 * eps);
            errs[static_cast<std::size_t>(k)].push_back(
                l2_error(u0, backward_cutoff(basis, noisy, params, 0.0)));
        }
    }

    double median[4];
    for (int k = 0; k < 4; ++k) {
        auto& v = errs[static_cast<std::size_t>(k)];
        std::sort(v.begin(), v.end());
        median[k] = v[v.size() / 2];
    }
    int inversions = 0;
    for (int k = 0; k + 1 < 4; ++k) {
        if (median[k + 1] > median[k]) ++inversions;
    }
    if (inversions > 1) {
        std::ostringstream os;
        os << "monotone_sweep: medians";
        for (const double m : median) os << ' ' << m;
        os << " have " << inversions << " inversions";
        res.passed = false;
        res.detail = os.str();
    }
    return res;
}

/// P(a u + b v) == a P(u) + b P(v) to 1e-10
PropResult check_linearity(const EigenBasis& basis, std::uint64_t master, int trials) {
    PropResult res{"linearity", true, trials, ""};
    const int n = basis.size();
    const double lam_max = basis.lambda_max();
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = mix_seed(master ^ 0x11EA11ULL, static_cast<std::uint64_t>(trial));
        TrialRng rng(seed);
        const Eigen::VectorXd u = rng.uniform_vec(n, 0.0, 255.0);
        const Eigen::VectorXd v = rng.uniform_vec(n, 0.0, 255.0);
        const double a = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(-2.0, 2.0);
        const RegularizationParams params = direct_cutoff(rng.uniform(0.0, lam_max), kT);
        const double t = rng.uniform(0.0, kT);
        const Eigen::VectorXd lhs = backward_cutoff(basis, a * u + b * v, params, t);
        const Eigen::VectorXd rhs =
            a * backward_cutoff(basis, u, params, t) + b * backward_cutoff(basis, v, params, t);
        const double gap = (lhs - rhs).norm();
        if (gap > 1e-10) {
            res.passed = false;
            res.detail = fail_detail("linearity", trial, seed, gap, 1e-10);
            return res;
        }
    }
    return res;
}

/// No overflow refusal while M (T - t) stays under the exponent guard; the
/// guard itself fires past it; the full-resolution naive reconstruction
/// stays finite (its worst exponent is lambda_max * T ~= 4).
PropResult check_amplification_safety(const EigenBasis& basis, std::uint64_t master, int trials) {
    PropResult res{"amplification_safety", true, trials, ""};
    const int n = basis.size();
    const double lam_max = basis.lambda_max();

    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t seed = mix_seed(master ^ 0xA3F7ULL, static_cast<std::uint64_t>(trial));
        TrialRng rng(seed);
        const Eigen::VectorXd uT = rng.uniform_vec(n, 0.0, 255.0);
        const double m = rng.uniform(0.0, lam_max);
        const double T = rng.uniform(0.5, 700.0 / std::max(m, 1e-3));
        RegularizationParams params = direct_cutoff(m, T);
        if (m * T > 700.0) continue; // outside the guaranteed-safe region
        try {
            const Eigen::VectorXd rec = backward_cutoff(basis, uT, params, 0.0);
            if (!rec.allFinite()) {
                res.passed = false;
                res.detail = "amplification_safety: non-finite output at trial " +
                             std::to_string(trial);
                return res;
            }
        } catch (const AmplificationError& e) {
            res.passed = false;
            res.detail = "amplification_safety: spurious overflow refusal at trial " +
                         std::to_string(trial) + ": " + e.what();
            return res;
        }
    }

    // guard must fire when the exponent would overflow
    {
        TrialRng rng(mix_seed(master, 0xF1FEULL));
        const Eigen::VectorXd uT = rng.uniform_vec(n, 0.0, 255.0);
        bool threw = false;
        try {
            (void)backward_naive(basis, uT, 701.0 / basis.lambda_max() * 1.0, 0.0);
        } catch (const AmplificationError&) {
            threw = true;
        }
        if (!threw) {
            res.passed = false;
            res.detail = "amplification_safety: overflow guard did not fire";
            return res;
        }
    }

    // naive backward at full image resolution: amplification <= e^4, finite
    {
        const EigenBasis full = eigendecompose_grid({128, 128});
        TrialRng rng(mix_seed(master, 0x128128ULL));
        const Eigen::VectorXd uT = rng.uniform_vec(full.size(), 0.0, 255.0);
        const Eigen::VectorXd rec = backward_naive(full, uT, 0.5, 0.0);
        if (!rec.allFinite()) {
            res.passed = false;
            res.detail = "amplification_safety: 128x128 naive reconstruction not finite";
        }
    }
    return res;
}

} // namespace

PropReport run_property_suite(std::uint64_t seed, PropScale scale, int trials) {
    if (trials < 1) {
        throw RangeError("run_property_suite: trials must be >= 1");
    }
    const int side = scale == PropScale::small_8x8 ? 8 : 32;
    const EigenBasis basis = eigendecompose_grid({side, side});

    PropReport report;
    report.results.push_back(check_boundedness(basis, seed, trials));
    report.results.push_back(check_stability(basis, seed, trials));
    report.results.push_back(check_convergence(basis, seed, trials));
    report.results.push_back(check_monotone_sweep(basis, seed));
    report.results.push_back(check_linearity(basis, seed, trials));
    report.results.push_back(check_amplification_safety(basis, seed, std::min(trials, 200)));
    return report;
}

} // namespace graphheat
