#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fnmix/chain.hpp"
#include "fnmix/discrepancy.hpp"

namespace fnmix {

// Function-specific spectrum: the eigenvalue indices (paper-style, j in
// [2, d]) whose eigenspaces carry a nonzero projection of f. Membership is
// decided per eigenspace: eigenvalues equal within `group_tol` are grouped
// and the aggregated projection norm is tested against tau_orth, which makes
// the result invariant to eigenvector rotation inside repeated eigenspaces.
struct FSpectrum {
    std::vector<int> indices;  // J_f, ascending, each in [2, d]
    double lambda_f = 0.0;     // max_{j in J_f} |lambda_j|, 0 if empty
    double gamma_f = 1.0;      // 1 - lambda_f
    Vector projections;        // |q_j^T f| for j = 2..d (entry j-2)
    double tau_orth = 0.0;
    double e_pi_f2 = 0.0;      // E_pi[f^2], cached for the bounds
};

FSpectrum f_spectrum(const SpectralDecomposition& dec, const FunctionOnChain& f,
                     double tau_orth = -1.0);  // < 0 picks 1e-12 * ||f||_inf

// A "bad set" J inside J_f, with the constants of the split bound:
//   Delta*_J = 2 |J| max_{j in J} ||h_j||_inf  max_{j in J} |q_j^T f|,
//   lambda_J = max_{j in J} |lambda_j|, lambda_-J over the complement.
// Empty maxima are 0 by convention so that J = {} and J = J_f reduce to
// exact identities.
struct JSplit {
    std::vector<int> J;  // subset of J_f, paper-style indices
    double delta_star = 0.0;
    double lambda_J = 0.0;
    double lambda_minus_J = 0.0;
};

JSplit make_jsplit(const SpectralDecomposition& dec, const FSpectrum& fs,
                   const FunctionOnChain& f, const std::vector<int>& J);

// h_J(n) = sum_{j in J} (q_j^T f) lambda_j^n h_j.
Vector h_J_vector(const SpectralDecomposition& dec, const FunctionOnChain& f,
                  const std::vector<int>& J, long long n);

// d_TV(pi_n, pi) <= pimin^{-1/2} lambda_*^n d_TV(pi_0, pi).
double uniform_tv_bound(const SpectralDecomposition& dec, double dtv0, long long n);

// d_f(pi_n, pi) <= sqrt(E_pi[f^2]/pimin) lambda_f^n d_f(pi_0, pi).
double f_gap_bound(const SpectralDecomposition& dec, const FSpectrum& fs, double df0,
                   long long n);

// d_f(pi_n, pi) <= Delta*_J lambda_J^n d_TV(pi_0,pi)
//                  + sqrt(E_pi[f^2]/pimin) lambda_-J^n d_f(pi_0,pi).
double sharper_bound(const SpectralDecomposition& dec, const FSpectrum& fs,
                     const JSplit& split, double dtv0, double df0, long long n);

// Oracle bound with an explicit start distribution:
//   |(pi_0 - pi)^T h_J(n)| + sqrt(E_pi[f^2]/pimin) lambda_-J^n d_f(pi_0,pi).
double oracle_bound(const SpectralDecomposition& dec, const FSpectrum& fs,
                    const JSplit& split, const FunctionOnChain& f, const Vector& pi0,
                    long long n);

// Worst-case oracle form: 2 dtv0 ||h_J(n)||_inf replaces the dot product.
double oracle_bound_worst(const SpectralDecomposition& dec, const FSpectrum& fs,
                          const JSplit& split, const FunctionOnChain& f, long long n,
                          double dtv0 = 1.0, double df0 = 1.0);

// Smallest n >= 1 with c * lambda^n <= delta. nullopt when the bound never
// decays below delta.
std::optional<long long> invert_geometric_bound(double c, double lambda, double delta);

// First n in [1, n_max] with bound(n) <= delta, for a nonincreasing bound;
// found by binary search. nullopt = not attained within n_max.
std::optional<long long> invert_bound_to_mixing_time(
    const std::function<double(long long)>& bound, double delta,
    long long n_max = kDefaultNMax);

// T(delta) >= (1/gamma_star - 1) log(1/(2 delta)), valid for delta < 1/2.
double tv_mixing_lower_bound(double gamma_star, double delta);

}  // namespace fnmix
