#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "fnmix/spectral_bounds.hpp"

namespace fnmix {

// A bound on the f-mixing time as a function of the tolerance delta. Exact
// values, spectral bounds, or user tables all plug in through this signature;
// any valid upper bound on T_f yields a valid concentration bound.
using MixingTimeBound = std::function<double(double)>;

struct TailBound {
    std::string method;
    double epsilon = 0.0;   // deviation (for jsplit, the derived 2(Delta_J+Delta))
    long long N = 0;
    double value = 1.0;     // tail probability bound, clipped to [0,1]
    double n_eff = 0.0;     // N / T_f
    long long burnin = 0;
    bool two_sided = false;
};

// One-sided master bound exp(-eps^2 floor(N/T_f(eps/2)) / 8). Requires
// N >= T_f(eps/2) and, when check_start is supplied, d_f(pi_0,pi) <= eps/2.
TailBound master_hoeffding(double epsilon, long long N, const MixingTimeBound& tf_at,
                           std::optional<double> check_start = std::nullopt);

// N / Tf, minus one when burn-in is accounted for.
double effective_sample_size(double N, double tf, bool with_burnin = false);

// Spectral corollary of the master bound. Branches on eps <= 2 lambda_f /
// sqrt(pi_min); the first branch exponent is (eps^2/8) gamma_f N /
// log(2/(eps sqrt(pi_min))), the second is eps^2 N / 8.
TailBound hoeffding_spectral(double epsilon, long long N, const FSpectrum& fs,
                             double pi_min);

// J-split corollary: deviation 2(Delta_J + Delta), requires
// Delta_J >= Delta*_J and N at least the split mixing bound.
TailBound hoeffding_jsplit(double Delta, double Delta_J, long long N,
                           const JSplit& split, double pi_min);

// Stationary-start uniform bound 2 exp(-gamma_0 eps^2 N / (2(2-gamma_0))),
// two-sided as printed; the one-sided variant halves it.
TailBound uniform_hoeffding(double epsilon, long long N, double gamma_0,
                            bool two_sided = true);

// Burn-in variant: dtv(T0) + exp(-gamma_0 eps^2 (N-T0) / (2(1-gamma_0))).
// gamma_0 within 1e-12 of 1 uses the iid limit exponent eps^2 (N-T0) / 2.
TailBound uniform_hoeffding_burnin(double epsilon, long long N, long long T0,
                                   double gamma_0, double dtv_at_T0);

// Scans T0 over [T0_lo, T0_hi] and returns the minimizing burn-in bound.
std::pair<long long, TailBound> optimize_burnin(
    double epsilon, long long N, double gamma_0,
    const std::function<double(long long)>& dtv_at, long long T0_lo, long long T0_hi);

}  // namespace fnmix
