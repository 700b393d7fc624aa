#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fnmix/concentration.hpp"

namespace fnmix {

// Pull-based sample source; nullopt means the stream is exhausted. The same
// runners serve simulated chains and recorded sample files.
using SampleStream = std::function<std::optional<double>()>;

enum class Verdict { H0, H1, Indifference, Running };

enum class SeqMode { Fix, Seq, Diff };

// Parameters of the sequential tests. The decision schedule is
//   N_0 = floor(M min(1/r, 1/(1-r)))   (mode Seq; mode Diff takes N0 as given)
//   N_k = floor(N_0 (1+xi)^k),
// and runs are capped at n_cap samples, turning potential non-termination
// (mu = r) into a Running verdict.
struct SeqTestConfig {
    SeqMode mode = SeqMode::Seq;
    double r = 0.5;
    double delta = 0.0;  // indifference half-width, required > 0 for Fix/Seq
    double alpha = 0.1;  // must be <= 2/5
    double xi = 0.1;     // must be < 2/5
    double M = 0.0;      // margin parameter (Seq)
    long long N0 = 0;    // initial decision time (Diff)
    long long n_cap = 10000000;
};

struct DecisionPoint {
    long long N_k = 0;
    double mean = 0.0;
    double band = 0.0;  // M/N_k or eps_k
};

struct SeqDecision {
    Verdict verdict = Verdict::Running;
    long long stop_index = 0;  // samples consumed at decision
    int k_stop = 0;            // decision-time index
    std::vector<DecisionPoint> trace;
};

// Sample sizes making err(alg) <= alpha:
//   adaptive: 2 T_f(delta) log(1/alpha) / delta^2
//   uniform:  log(1/alpha) / (gamma_0 delta^2)
long long algfix_sample_size(double delta, double alpha, const MixingTimeBound& tf_at);
long long algfix_sample_size_uniform(double delta, double alpha, double gamma_0);

// Collects exactly N samples, then H0 if mean >= r+delta, H1 if <= r-delta,
// Indifference otherwise. Throws StreamExhausted on a short stream.
SeqDecision algfix_run(const SampleStream& stream, double r, double delta, long long N);

// Margin parameters:
//   adaptive: 8 T_f(delta/2) log(2/sqrt(alpha xi)) / delta
//   uniform:  log(2/sqrt(alpha xi)) / (gamma_0 delta)
double algseq_margin(double delta, double alpha, double xi, const MixingTimeBound& tf_at);
double algseq_margin_uniform(double delta, double alpha, double xi, double gamma_0);

// Continues while the running mean stays inside (r - M/N_k, r + M/N_k).
SeqDecision algseq_run(const SampleStream& stream, const SeqTestConfig& config);

// Smallest eps in (0,1] with eps^2 / (8 T_f(eps/2)) >= (log(1/alpha)+1+2 log k)/N_k,
// found by bisection (the left side is nondecreasing in eps). inf{} = +infinity.
double algdiff_epsilon_k(double alpha, int k, long long N_k, const MixingTimeBound& tf_at);

// Uniform closed form sqrt((log(1/alpha)+1+2 log k) / (gamma_0 N_k)).
double algdiff_epsilon_k_uniform(double alpha, int k, long long N_k, double gamma_0);

// Continues while the running mean stays inside (r - eps_k, r + eps_k).
SeqDecision algdiff_run(const SampleStream& stream, const SeqTestConfig& config,
                        const std::function<double(int, long long)>& epsilon_k);

// Expected stopping time bounds, Delta = |r - mu| > 0:
//   seq:  (1+xi) [ M/Delta + (4/Delta) sqrt(2 T_f(delta/2) M / Delta
//                                           + 8 T_f(delta/2)) + 1 ]
//   diff: (1+xi)(N*_0 + 1) + 32 alpha T_f(Delta/4) / Delta^2,
// where N*_0 is the first decision time whose band drops to Delta/2.
double stopping_bound_seq(double Delta, double M, double xi, const MixingTimeBound& tf_at,
                          double delta);
double stopping_bound_diff(double Delta, double alpha, double xi,
                           const std::function<double(int, long long)>& epsilon_k,
                           const SeqTestConfig& config, const MixingTimeBound& tf_at);

// Decision times N_k = floor(N0 (1+xi)^k).
long long decision_time(long long N0, double xi, int k);

}  // namespace fnmix
