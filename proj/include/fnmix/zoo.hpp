#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnmix/chain.hpp"

namespace fnmix {

// Lazy random walk on the cycle C_{2d}: hold with probability 1/2, step to
// either neighbor with probability 1/4. Stationary distribution is uniform.
TransitionMatrix lazy_cycle(int d);

// f_j(u) = (1 + cos(pi j u / d)) / 2 on C_{2d}, for 0 <= j <= d. f_0 is
// constant 1 and f_d matches the parity function up to relabeling.
FunctionOnChain cycle_periodic_function(const TransitionMatrix& cycle, int j);

// Indicator of odd states on C_{2d}; mixes in a single step.
FunctionOnChain cycle_parity(const TransitionMatrix& cycle);

enum class ValueDistribution { Uniform01, PointMassHalf };

// Function values drawn iid from nu (mean 1/2), reproducible from the seed.
FunctionOnChain random_function(const TransitionMatrix& chain, uint64_t seed,
                                ValueDistribution nu = ValueDistribution::Uniform01);

// Frequency indices j in [1, 2d-1] with j <= 4 delta sqrt(d / log d) or
// j >= 2d - 4 delta sqrt(d / log d): the near-unit part of the cycle spectrum.
std::vector<int> j_delta_set(int d, double delta);

// Lazy walk on the line with 2d states; interior states hold with probability
// 1/2 and move 1/4 each way, endpoints hold with probability 3/4. With this
// boundary rule the stationary distribution is exactly uniform.
TransitionMatrix line_chain(int d);

// Step function 1/2 - delta on the first half, 1/2 + delta on the second.
FunctionOnChain threshold_function(const TransitionMatrix& line, double delta);

// Independent sampling chain P = 1 pi^T (mixes in one step).
TransitionMatrix rank_one_chain(const Vector& pi);

// Eq-style closed-form upper bound on the mixing time of f_j on C_{2d}:
//   (24/pi^2) [ (1/2) log 2d + log(1/delta) ] d^2/j^2    for j <= d/2,
//   log 2d + 2 log(1/delta)                              for d/2 < j <= d.
double cycle_tf_trig_bound(int d, int j, double delta);

// --- Logistic regression Metropolis-Hastings chain -------------------------

struct LogisticData {
    std::vector<double> x;  // temperature / 100
    std::vector<int> y;     // binary failure outcome
};

LogisticData read_logistic_csv(const std::string& path);

struct OringModel {
    TransitionMatrix chain;
    FunctionOnChain f65;    // failure probability at temperature 0.65
    double alpha_hat = 0.0; // logistic MLE, grid center
    double beta_hat = 0.0;
    Vector log_posterior;   // unnormalized, per grid state
};

// 289-state Metropolis-Hastings chain on the 17x17 grid centered at the MLE
// with mesh 0.1. The proposal draws a grid point with weight proportional to
// the bivariate normal density with covariance diag(4, 10); with the
// normalizer correction in the acceptance ratio the chain is reversible with
// respect to the discretized posterior. Prior scale b = exp(alpha_hat).
OringModel oring_mh_chain(const LogisticData& data, int grid_half = 8,
                          double mesh = 0.1, double sigma2_alpha = 4.0,
                          double sigma2_beta = 10.0);

// --- Collapsed Gibbs chain for a two-component Gaussian mixture ------------

struct MixturePriors {
    double alpha0 = 1.0;
    double alpha1 = 1.0;
    double rho = 237.0;   // prior std of the component means
    double sigma = 70.0;  // observation noise std
};

struct MixtureModel {
    TransitionMatrix chain;
    FunctionOnChain recovery;  // indicator of the two ground-truth labelings
    Vector log_posterior;      // unnormalized, per assignment state
    int z_star0 = 0;           // encoded ground-truth assignments
    int z_star1 = 0;
};

// Random-scan collapsed Gibbs chain over z in {0,1}^10 (1024 states): pick a
// coordinate uniformly and resample it from its collapsed conditional, with
// the component means and the mixing weight integrated out analytically.
// The first five observations form group 0, the last five group 1.
MixtureModel mixture_gibbs_chain(const std::vector<double>& x,
                                 const MixturePriors& priors = {});

std::vector<double> read_mixture_csv(const std::string& path);

}  // namespace fnmix
