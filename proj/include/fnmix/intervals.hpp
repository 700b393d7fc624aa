#pragma once

#include <functional>
#include <span>
#include <string>

#include "fnmix/concentration.hpp"

namespace fnmix {

// Asymptotic variance of partial sums of f along the stationary chain,
// evaluated through the reversible spectral sum
//   sigma_asym^2 = sum_{j>=2} (1+lambda_j)/(1-lambda_j) (q_j^T f)^2,
// together with the stationary variance and the non-independence penalty
// rho_f = sigma_f^2 / sigma_asym^2 (1 for iid chains, and by convention for
// constant functions).
struct AsymptoticVariance {
    double sigma2_asym = 0.0;
    double sigma2_f = 0.0;
    double rho_f = 1.0;
};

AsymptoticVariance asymptotic_variance(const SpectralDecomposition& dec,
                                       const FunctionOnChain& f);

struct ConfidenceInterval {
    std::string method;
    double center = 0.0;
    double half_width = 0.0;
    double alpha = 0.0;
    long long burnin = 0;
    struct Diagnostics {
        double r_N = 0.0;         // rate certificate for the adaptive interval
        double alpha0_star = 0.0; // burn-in level chosen by the optimizer
        bool minimum_n_ok = true;
    } diagnostics;
};

// Width function of the uniform Hoeffding interval, exposed so optimizers and
// tests can evaluate it without samples.
double uniform_ci_half_width(long long N, double gamma_0,
                             const std::function<double(double)>& T_at, double alpha,
                             double alpha0);

// Interval from the stationary uniform Hoeffding bound with burn-in level
// alpha0: drop T(alpha0/2) samples, half-width
// sqrt(2(2-gamma_0)) sqrt(log(2/(alpha-alpha0)) / (gamma_0 [N - T(alpha0)])).
ConfidenceInterval uniform_ci(std::span<const double> samples, double gamma_0,
                              const std::function<double(double)>& T_at, double alpha,
                              double alpha0);

// Grid search over alpha0 in (1e-4 alpha, 0.99 alpha), 200 log-spaced points.
ConfidenceInterval optimize_alpha0(std::span<const double> samples, double gamma_0,
                                   const std::function<double(double)>& T_at,
                                   double alpha);

// Function-adaptive interval: burn-in T~_f(eta/2), half-width
// 2 sqrt(2) sqrt(T~_f(eta/2) log(2/alpha) / (N - T~_f(eta/2))). The width is
// only certified when eps_N >= eta; otherwise EtaTooLarge is thrown.
ConfidenceInterval adaptive_ci(std::span<const double> samples, double alpha,
                               const MixingTimeBound& tf_bound, double eta);

// CDF-approximation error of the Markov chain CLT:
//   exp(-gamma_0 N) / (3 sqrt(pi_min)) + 13/(sigma_asym sqrt(pi_min) gamma_0 sqrt(N)).
double berry_esseen_gap(long long N, double gamma_0, double pi_min, double sigma_asym);

// Sample size below which the corrected CLT interval is not certified.
double berry_esseen_minimum_n(double alpha, double gamma_0, double pi_min,
                              double sigma_asym);

// Width formula sigma_asym sqrt(2 log(6/alpha) / N), independent of the gate.
double berry_esseen_half_width(long long N, double alpha, double sigma_asym);

// Corrected CLT interval, half-width sigma_asym sqrt(2 log(6/alpha) / N),
// no burn-in. Throws MinimumNUnmet (with the required N) below the gate.
ConfidenceInterval berry_esseen_ci(std::span<const double> samples, double alpha,
                                   double sigma_asym, double gamma_0, double pi_min);

}  // namespace fnmix
