#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fnmix/chain.hpp"
#include "fnmix/intervals.hpp"
#include "fnmix/rng.hpp"
#include "fnmix/seqtest.hpp"

namespace fnmix {

// Start distribution for simulated paths.
struct Pi0Spec {
    enum class Kind { PointMass, Stationary, Explicit };
    Kind kind = Kind::Stationary;
    int state = 0;
    Vector dist;

    static Pi0Spec point_mass(int i) { return {Kind::PointMass, i, {}}; }
    static Pi0Spec stationary() { return {Kind::Stationary, 0, {}}; }
    static Pi0Spec explicit_dist(Vector v) { return {Kind::Explicit, 0, std::move(v)}; }
};

// Exact categorical sampling by inverse CDF over precomputed cumulative rows.
class ChainSampler {
  public:
    explicit ChainSampler(const TransitionMatrix& chain);

    int initial(const Pi0Spec& pi0, double u) const;
    int step(int from, double u) const;
    int d() const { return d_; }

  private:
    int sample_row(const double* cum_row, double u) const;
    int d_ = 0;
    std::vector<double> cum_;  // cumulative transition rows, row-major
    Vector cum_pi_;            // cumulative stationary distribution
};

struct SimPlan {
    Pi0Spec pi0 = Pi0Spec::stationary();
    long long N = 0;       // path length (samples X_1..X_N)
    int reps = 1;
    uint64_t seed = 0;
};

struct MCEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    int reps = 0;
};

// States X_1..X_N of replicate `rep`; X_0 is drawn internally from pi0.
// Identical (chain, pi0, N, seed, rep) give bit-identical paths.
std::vector<int> sample_path(const TransitionMatrix& chain, const Pi0Spec& pi0,
                             long long N, uint64_t seed, uint64_t rep = 0);

// Lazy stream of f(X_1), f(X_2), ... for the sequential runners.
SampleStream make_chain_stream(const TransitionMatrix& chain, const FunctionOnChain& f,
                               const Pi0Spec& pi0, uint64_t seed, uint64_t rep);

// Frequency of { mean of f over samples burnin+1..N  >=  mu + epsilon }.
MCEstimate empirical_tail(const TransitionMatrix& chain, const FunctionOnChain& f,
                          const SimPlan& plan, double epsilon, long long burnin);

// Coverage frequency of an interval builder over simulated sample arrays.
using IntervalBuilder = std::function<ConfidenceInterval(std::span<const double>)>;
MCEstimate empirical_coverage(const TransitionMatrix& chain, const FunctionOnChain& f,
                              const SimPlan& plan, const IntervalBuilder& builder);

struct SeqTestSummary {
    MCEstimate error;      // frequency of the wrong verdict
    double mean_stop = 0;  // average samples consumed at decision
    int capped = 0;        // replicates that hit the cap (verdict Running)
};

using SeqRunner = std::function<SeqDecision(const SampleStream&)>;
SeqTestSummary empirical_seqtest(const TransitionMatrix& chain, const FunctionOnChain& f,
                                 const SimPlan& plan, const SeqRunner& runner,
                                 Verdict truth);

// Pooled batch-means estimate of the asymptotic variance of partial sums:
// each replicate path of length N is cut into segments of `segment` steps and
// the per-segment sums are pooled across replicates.
MCEstimate simulated_asymptotic_variance(const TransitionMatrix& chain,
                                         const FunctionOnChain& f, const SimPlan& plan,
                                         long long segment);

}  // namespace fnmix
