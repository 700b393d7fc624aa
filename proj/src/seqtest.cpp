#include "fnmix/seqtest.hpp"

#include <cmath>
#include <limits>

namespace fnmix {

namespace {

void check_levels(double alpha, double xi) {
    if (!(alpha > 0.0 && alpha <= 0.4)) {
        throw PreconditionViolated("alpha must lie in (0, 2/5]");
    }
    if (!(xi > 0.0 && xi < 0.4)) {
        throw PreconditionViolated("xi must lie in (0, 2/5)");
    }
}

// Shared runner: pulls samples up to each decision time and applies the
// band rule. `band_at(k, N_k)` gives the half-width of the continue region.
SeqDecision run_banded(const SampleStream& stream, const SeqTestConfig& config,
                       long long N0, const std::function<double(int, long long)>& band_at) {
    SeqDecision out;
    double sum = 0.0;
    long long count = 0;
    long long prev_Nk = 0;
    for (int k = 1;; ++k) {
        const long long Nk = decision_time(N0, config.xi, k);
        if (Nk == prev_Nk) continue;  // duplicate decision time from flooring
        prev_Nk = Nk;
        if (Nk > config.n_cap) {
            out.verdict = Verdict::Running;
            out.stop_index = count;
            out.k_stop = k - 1;
            return out;
        }
        while (count < Nk) {
            auto x = stream();
            if (!x) {
                out.verdict = Verdict::Running;
                out.stop_index = count;
                out.k_stop = k - 1;
                return out;
            }
            sum += *x;
            ++count;
        }
        const double mean = sum / static_cast<double>(count);
        const double band = band_at(k, Nk);
        out.trace.push_back({Nk, mean, band});
        if (mean >= config.r + band) {
            out.verdict = Verdict::H0;
            out.stop_index = count;
            out.k_stop = k;
            return out;
        }
        if (mean <= config.r - band) {
            out.verdict = Verdict::H1;
            out.stop_index = count;
            out.k_stop = k;
            return out;
        }
    }
}

}  // namespace

long long decision_time(long long N0, double xi, int k) {
    return static_cast<long long>(
        std::floor(static_cast<double>(N0) * std::pow(1.0 + xi, k)));
}

long long algfix_sample_size(double delta, double alpha, const MixingTimeBound& tf_at) {
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionViolated("delta must lie in (0,1)");
    if (!(alpha > 0.0 && alpha <= 0.4)) throw PreconditionViolated("alpha must lie in (0, 2/5]");
    const double tf = std::max(1.0, tf_at(delta));
    return static_cast<long long>(
        std::ceil(2.0 * tf * std::log(1.0 / alpha) / (delta * delta)));
}

long long algfix_sample_size_uniform(double delta, double alpha, double gamma_0) {
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionViolated("delta must lie in (0,1)");
    if (!(alpha > 0.0 && alpha <= 0.4)) throw PreconditionViolated("alpha must lie in (0, 2/5]");
    return static_cast<long long>(
        std::ceil(std::log(1.0 / alpha) / (gamma_0 * delta * delta)));
}

SeqDecision algfix_run(const SampleStream& stream, double r, double delta, long long N) {
    double sum = 0.0;
    for (long long n = 0; n < N; ++n) {
        auto x = stream();
        if (!x) throw StreamExhausted("stream ended before N samples");
        sum += *x;
    }
    const double mean = sum / static_cast<double>(N);
    SeqDecision out;
    out.stop_index = N;
    out.k_stop = 0;
    out.trace.push_back({N, mean, delta});
    if (mean >= r + delta) {
        out.verdict = Verdict::H0;
    } else if (mean <= r - delta) {
        out.verdict = Verdict::H1;
    } else {
        out.verdict = Verdict::Indifference;
    }
    return out;
}

double algseq_margin(double delta, double alpha, double xi, const MixingTimeBound& tf_at) {
    check_levels(alpha, xi);
    if (!(delta > 0.0)) throw PreconditionViolated("delta must be positive");
    const double tf = std::max(1.0, tf_at(delta / 2.0));
    return 8.0 * tf * std::log(2.0 / std::sqrt(alpha * xi)) / delta;
}

double algseq_margin_uniform(double delta, double alpha, double xi, double gamma_0) {
    check_levels(alpha, xi);
    if (!(delta > 0.0)) throw PreconditionViolated("delta must be positive");
    return std::log(2.0 / std::sqrt(alpha * xi)) / (gamma_0 * delta);
}

SeqDecision algseq_run(const SampleStream& stream, const SeqTestConfig& config) {
    check_levels(config.alpha, config.xi);
    if (config.mode != SeqMode::Seq) throw InvalidData("config.mode must be Seq");
    if (!(config.delta > 0.0)) throw PreconditionViolated("mode Seq requires delta > 0");
    if (!(config.M > 0.0)) throw PreconditionViolated("mode Seq requires M > 0");
    if (!(config.r > 0.0 && config.r < 1.0)) throw InvalidData("r must lie in (0,1)");
    const long long N0 = static_cast<long long>(std::floor(
        config.M * std::min(1.0 / config.r, 1.0 / (1.0 - config.r))));
    return run_banded(stream, config, std::max<long long>(N0, 1),
                      [&](int, long long Nk) { return config.M / static_cast<double>(Nk); });
}

double algdiff_epsilon_k(double alpha, int k, long long N_k, const MixingTimeBound& tf_at) {
    if (k < 1) throw InvalidData("k must be >= 1");
    const double target =
        (std::log(1.0 / alpha) + 1.0 + 2.0 * std::log(static_cast<double>(k))) /
        static_cast<double>(N_k);
    const auto rate = [&](double eps) {
        return eps * eps / (8.0 * std::max(1.0, tf_at(eps / 2.0)));
    };
    if (rate(1.0) < target) return std::numeric_limits<double>::infinity();
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || rate(mid) >= target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

double algdiff_epsilon_k_uniform(double alpha, int k, long long N_k, double gamma_0) {
    if (k < 1) throw InvalidData("k must be >= 1");
    return std::sqrt(
        (std::log(1.0 / alpha) + 1.0 + 2.0 * std::log(static_cast<double>(k))) /
        (gamma_0 * static_cast<double>(N_k)));
}

SeqDecision algdiff_run(const SampleStream& stream, const SeqTestConfig& config,
                        const std::function<double(int, long long)>& epsilon_k) {
    check_levels(config.alpha, config.xi);
    if (config.mode != SeqMode::Diff) throw InvalidData("config.mode must be Diff");
    if (config.N0 < 1) throw PreconditionViolated("mode Diff requires N0 >= 1");
    return run_banded(stream, config, config.N0, epsilon_k);
}

double stopping_bound_seq(double Delta, double M, double xi, const MixingTimeBound& tf_at,
                          double delta) {
    if (!(Delta > 0.0)) throw PreconditionViolated("requires Delta = |r - mu| > 0");
    const double tf = std::max(1.0, tf_at(delta / 2.0));
    return (1.0 + xi) *
           (M / Delta +
            (4.0 / Delta) * std::sqrt(2.0 * tf * M / Delta + 8.0 * tf) + 1.0);
}

double stopping_bound_diff(double Delta, double alpha, double xi,
                           const std::function<double(int, long long)>& epsilon_k,
                           const SeqTestConfig& config, const MixingTimeBound& tf_at) {
    if (!(Delta > 0.0)) throw PreconditionViolated("requires Delta = |r - mu| > 0");
    // k*_0: first decision index whose margin drops to Delta/2.
    long long N_star = -1;
    for (int k = 1; k <= 10000000; ++k) {
        const long long Nk = decision_time(config.N0, config.xi, k);
        if (epsilon_k(k, Nk) <= Delta / 2.0) {
            N_star = Nk;
            break;
        }
        if (Nk > (1LL << 60)) break;
    }
    if (N_star < 0) return std::numeric_limits<double>::infinity();
    const double tf = std::max(1.0, tf_at(Delta / 4.0));
    return (1.0 + xi) * static_cast<double>(N_star + 1) +
           32.0 * alpha * tf / (Delta * Delta);
}

}  // namespace fnmix
