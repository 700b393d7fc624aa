#include "fnmix/intervals.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace fnmix {

namespace {

double mean_after(std::span<const double> samples, long long burnin) {
    const auto n = static_cast<long long>(samples.size());
    if (burnin >= n) throw InsufficientSamples("burn-in swallows every sample");
    double sum = 0.0;
    for (long long i = burnin; i < n; ++i) sum += samples[static_cast<size_t>(i)];
    return sum / static_cast<double>(n - burnin);
}

}  // namespace

AsymptoticVariance asymptotic_variance(const SpectralDecomposition& dec,
                                       const FunctionOnChain& f) {
    const int d = dec.d();
    const double proj_tol = 1e-12 * std::max(1.0, f.values.cwiseAbs().maxCoeff());
    AsymptoticVariance av;
    av.sigma2_f = f.sigma2;
    for (int j = 2; j <= d; ++j) {
        const double c = dec.projection(f.values, j);
        if (std::abs(c) <= proj_tol) continue;
        const double lambda = dec.eigenvalues(j - 1);
        if (lambda > 1.0 - 1e-12) {
            throw GapTooSmall("eigenvalue too close to 1 carries mass of f");
        }
        av.sigma2_asym += c * c * (1.0 + lambda) / (1.0 - lambda);
    }
    av.rho_f = (av.sigma2_asym > 0.0) ? av.sigma2_f / av.sigma2_asym : 1.0;
    return av;
}

double uniform_ci_half_width(long long N, double gamma_0,
                             const std::function<double(double)>& T_at, double alpha,
                             double alpha0) {
    if (!(alpha0 > 0.0 && alpha0 < alpha)) {
        throw PreconditionViolated("requires 0 < alpha0 < alpha");
    }
    const double T = T_at(alpha0);
    if (static_cast<double>(N) <= T) {
        throw InsufficientSamples("requires N > T(alpha0)");
    }
    return std::sqrt(2.0 * (2.0 - gamma_0)) *
           std::sqrt(std::log(2.0 / (alpha - alpha0)) /
                     (gamma_0 * (static_cast<double>(N) - T)));
}

ConfidenceInterval uniform_ci(std::span<const double> samples, double gamma_0,
                              const std::function<double(double)>& T_at, double alpha,
                              double alpha0) {
    const auto N = static_cast<long long>(samples.size());
    const double width = uniform_ci_half_width(N, gamma_0, T_at, alpha, alpha0);
    const auto burnin = static_cast<long long>(std::ceil(T_at(alpha0 / 2.0)));
    if (burnin >= N) throw InsufficientSamples("requires N > T(alpha0/2)");

    ConfidenceInterval ci;
    ci.method = "uniform";
    ci.center = mean_after(samples, burnin);
    ci.half_width = width;
    ci.alpha = alpha;
    ci.burnin = burnin;
    ci.diagnostics.alpha0_star = alpha0;
    return ci;
}

ConfidenceInterval optimize_alpha0(std::span<const double> samples, double gamma_0,
                                   const std::function<double(double)>& T_at,
                                   double alpha) {
    const int grid = 200;
    const double lo = 1e-4 * alpha;
    const double hi = 0.99 * alpha;
    std::optional<ConfidenceInterval> best;
    for (int i = 0; i < grid; ++i) {
        const double alpha0 =
            lo * std::pow(hi / lo, static_cast<double>(i) / (grid - 1));
        try {
            ConfidenceInterval ci = uniform_ci(samples, gamma_0, T_at, alpha, alpha0);
            if (!best || ci.half_width < best->half_width) best = ci;
        } catch (const InsufficientSamples&) {
            // infeasible grid point: too much burn-in for this N
        }
    }
    if (!best) throw InsufficientSamples("no feasible alpha0 in the grid");
    return *best;
}

ConfidenceInterval adaptive_ci(std::span<const double> samples, double alpha,
                               const MixingTimeBound& tf_bound, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw PreconditionViolated("eta must lie in (0,1)");
    const auto N = static_cast<long long>(samples.size());
    const double T = std::max(1.0, tf_bound(eta / 2.0));
    if (static_cast<double>(N) <= T) {
        throw InsufficientSamples("requires N > T_f(eta/2)");
    }
    const double eps =
        2.0 * std::sqrt(2.0) *
        std::sqrt(T * std::log(2.0 / alpha) / (static_cast<double>(N) - T));
    if (eps < eta) {
        throw EtaTooLarge(
            "eps_N < eta: the lower bound on the rate certificate does not cover "
            "this width; rerun with a smaller eta");
    }
    const auto burnin = static_cast<long long>(std::ceil(T));

    ConfidenceInterval ci;
    ci.method = "adaptive";
    ci.center = mean_after(samples, burnin);
    ci.half_width = eps;
    ci.alpha = alpha;
    ci.burnin = burnin;
    ci.diagnostics.r_N = eps * eps * (static_cast<double>(N) / T - 1.0);
    return ci;
}

double berry_esseen_gap(long long N, double gamma_0, double pi_min, double sigma_asym) {
    const double sqrt_pimin = std::sqrt(pi_min);
    return std::exp(-gamma_0 * static_cast<double>(N)) / (3.0 * sqrt_pimin) +
           13.0 / (sigma_asym * sqrt_pimin) /
               (gamma_0 * std::sqrt(static_cast<double>(N)));
}

double berry_esseen_minimum_n(double alpha, double gamma_0, double pi_min,
                              double sigma_asym) {
    const double first = std::log(2.0 / (std::sqrt(pi_min) * alpha)) / gamma_0;
    const double second =
        6084.0 / (gamma_0 * gamma_0 * sigma_asym * sigma_asym * pi_min * alpha * alpha);
    return std::max(first, second);
}

double berry_esseen_half_width(long long N, double alpha, double sigma_asym) {
    return sigma_asym * std::sqrt(2.0 * std::log(6.0 / alpha) / static_cast<double>(N));
}

ConfidenceInterval berry_esseen_ci(std::span<const double> samples, double alpha,
                                   double sigma_asym, double gamma_0, double pi_min) {
    const auto N = static_cast<long long>(samples.size());
    const double required = berry_esseen_minimum_n(alpha, gamma_0, pi_min, sigma_asym);
    if (static_cast<double>(N) < required) {
        std::ostringstream msg;
        msg << "corrected CLT interval needs N >= " << required << ", got " << N;
        throw MinimumNUnmet(msg.str(), required);
    }
    ConfidenceInterval ci;
    ci.method = "clt";
    ci.center = mean_after(samples, 0);
    ci.half_width = berry_esseen_half_width(N, alpha, sigma_asym);
    ci.alpha = alpha;
    ci.diagnostics.minimum_n_ok = true;
    return ci;
}

}  // namespace fnmix
