#include "fnmix/concentration.hpp"

#include <cmath>

namespace fnmix {

namespace {

double clip_probability(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

TailBound master_hoeffding(double epsilon, long long N, const MixingTimeBound& tf_at,
                           std::optional<double> check_start) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw PreconditionViolated("master bound requires epsilon in (0,1)");
    }
    const double tf = std::max(1.0, tf_at(epsilon / 2.0));
    if (static_cast<double>(N) < tf) {
        throw PreconditionViolated("master bound requires N >= T_f(eps/2)");
    }
    if (check_start && *check_start > epsilon / 2.0) {
        throw PreconditionViolated(
            "master bound requires d_f(pi_0, pi) <= eps/2 at the start");
    }
    TailBound b;
    b.method = "master";
    b.epsilon = epsilon;
    b.N = N;
    // The thinning argument needs an integer number of blocks; flooring is
    // the conservative direction.
    const double n0 = std::floor(static_cast<double>(N) / tf);
    b.value = clip_probability(std::exp(-epsilon * epsilon * n0 / 8.0));
    b.n_eff = static_cast<double>(N) / tf;
    return b;
}

double effective_sample_size(double N, double tf, bool with_burnin) {
    if (tf < 1.0) throw PreconditionViolated("T_f must be >= 1");
    return N / tf - (with_burnin ? 1.0 : 0.0);
}

TailBound hoeffding_spectral(double epsilon, long long N, const FSpectrum& fs,
                             double pi_min) {
    if (!(epsilon > 0.0)) throw PreconditionViolated("epsilon must be positive");
    const double sqrt_pimin = std::sqrt(pi_min);
    TailBound b;
    b.method = "spectral";
    b.epsilon = epsilon;
    b.N = N;
    if (fs.lambda_f > 0.0 && epsilon <= 2.0 * fs.lambda_f / sqrt_pimin) {
        const double log_term = std::log(2.0 / (epsilon * sqrt_pimin));
        const double tf_bound = log_term / std::log(1.0 / fs.lambda_f);
        if (static_cast<double>(N) < tf_bound) {
            throw PreconditionViolated("spectral bound requires N >= T_f(eps/2) bound");
        }
        b.value = clip_probability(
            std::exp(-(epsilon * epsilon / 8.0) * fs.gamma_f * static_cast<double>(N) /
                     log_term));
        b.n_eff = static_cast<double>(N) / std::max(1.0, tf_bound);
    } else {
        if (N < 1) throw PreconditionViolated("spectral bound requires N >= 1");
        b.value = clip_probability(
            std::exp(-epsilon * epsilon * static_cast<double>(N) / 8.0));
        b.n_eff = static_cast<double>(N);
    }
    return b;
}

TailBound hoeffding_jsplit(double Delta, double Delta_J, long long N,
                           const JSplit& split, double pi_min) {
    if (!(Delta > 0.0) || !(Delta_J > 0.0)) {
        throw PreconditionViolated("Delta and Delta_J must be positive");
    }
    if (Delta_J < split.delta_star) {
        throw PreconditionViolated("split bound requires Delta_J >= Delta*_J");
    }
    const double sqrt_pimin = std::sqrt(pi_min);
    const double dev = Delta_J + Delta;
    TailBound b;
    b.method = "jsplit";
    b.epsilon = 2.0 * dev;
    b.N = N;
    if (split.lambda_minus_J > 0.0 && Delta <= split.lambda_minus_J / sqrt_pimin) {
        const double log_term = std::log(1.0 / (Delta * sqrt_pimin));
        const double tf_bound = log_term / std::log(1.0 / split.lambda_minus_J);
        if (static_cast<double>(N) < tf_bound) {
            throw PreconditionViolated("split bound requires N >= T_f(Delta_J+Delta) bound");
        }
        b.value = clip_probability(
            std::exp(-(dev * dev / 2.0) * (1.0 - split.lambda_minus_J) *
                     static_cast<double>(N) / log_term));
        b.n_eff = static_cast<double>(N) / std::max(1.0, tf_bound);
    } else {
        if (N < 1) throw PreconditionViolated("split bound requires N >= 1");
        b.value = clip_probability(
            std::exp(-dev * dev * static_cast<double>(N) / 2.0));
        b.n_eff = static_cast<double>(N);
    }
    return b;
}

TailBound uniform_hoeffding(double epsilon, long long N, double gamma_0,
                            bool two_sided) {
    if (!(gamma_0 > 0.0 && gamma_0 <= 1.0)) {
        throw PreconditionViolated("gamma_0 must lie in (0,1]");
    }
    TailBound b;
    b.method = "uniform";
    b.epsilon = epsilon;
    b.N = N;
    b.two_sided = two_sided;
    const double rate = gamma_0 / (2.0 * (2.0 - gamma_0));
    const double one_sided = std::exp(-rate * epsilon * epsilon * static_cast<double>(N));
    b.value = clip_probability((two_sided ? 2.0 : 1.0) * one_sided);
    b.n_eff = static_cast<double>(N);
    return b;
}

TailBound uniform_hoeffding_burnin(double epsilon, long long N, long long T0,
                                   double gamma_0, double dtv_at_T0) {
    if (!(gamma_0 > 0.0 && gamma_0 <= 1.0)) {
        throw PreconditionViolated("gamma_0 must lie in (0,1]");
    }
    if (T0 >= N) throw PreconditionViolated("burn-in T0 must be smaller than N");
    TailBound b;
    b.method = "uniform_burnin";
    b.epsilon = epsilon;
    b.N = N;
    b.burnin = T0;
    // rate 1/(1-gamma_0) is singular at gamma_0 = 1; treat that as the iid
    // limit exponent eps^2 (N - T0) / 2.
    const double rate =
        (gamma_0 >= 1.0 - 1e-12) ? 0.5 : gamma_0 / (2.0 * (1.0 - gamma_0));
    b.value = clip_probability(
        dtv_at_T0 +
        std::exp(-rate * epsilon * epsilon * static_cast<double>(N - T0)));
    b.n_eff = static_cast<double>(N - T0);
    return b;
}

std::pair<long long, TailBound> optimize_burnin(
    double epsilon, long long N, double gamma_0,
    const std::function<double(long long)>& dtv_at, long long T0_lo, long long T0_hi) {
    if (T0_lo < 0 || T0_hi < T0_lo) throw InvalidData("bad burn-in range");
    std::optional<std::pair<long long, TailBound>> best;
    for (long long T0 = T0_lo; T0 <= std::min(T0_hi, N - 1); ++T0) {
        TailBound b = uniform_hoeffding_burnin(epsilon, N, T0, gamma_0, dtv_at(T0));
        if (!best || b.value < best->second.value) {
            best = {T0, b};
        }
    }
    if (!best) throw PreconditionViolated("no feasible burn-in in range");
    return *best;
}

}  // namespace fnmix
