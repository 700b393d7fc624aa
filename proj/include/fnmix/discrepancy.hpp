#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fnmix/chain.hpp"

namespace fnmix {

// Default horizon for mixing-time searches; overridable per call and through
// the FNMIX_NMAX environment variable at the CLI layer.
inline constexpr long long kDefaultNMax = 1000000;

enum class CurveKind { FDiscrepancy, TotalVariation };

// Worst-case discrepancy w(n) = max_i d(pi_n^(i), pi) for n = 1..n_max.
struct DiscrepancyCurve {
    CurveKind kind = CurveKind::FDiscrepancy;
    std::vector<double> w;  // w[n-1] = w(n)

    double at(long long n) const { return w.at(static_cast<size_t>(n - 1)); }
    long long n_max() const { return static_cast<long long>(w.size()); }
};

// |pi0^T P^n f - mu|, by n applications of P to the distribution row.
double f_discrepancy(const TransitionMatrix& chain, const FunctionOnChain& f,
                     const Vector& pi0, long long n);

// max_i |e_i^T P^n f - mu|, by n applications of P to the function column.
double worst_case_f_discrepancy(const TransitionMatrix& chain, const FunctionOnChain& f,
                                long long n);

// Exact total-variation distance (1/2) ||pi0^T P^n - pi||_1.
double tv_discrepancy(const TransitionMatrix& chain, const Vector& pi0, long long n);

// max over point-mass starts; costs O(n d^3).
double worst_case_tv(const TransitionMatrix& chain, long long n);

// Literal first crossing of the worst-case curve below delta; the curve need
// not be monotone, so this is the min of the defining set, not the last
// crossing. nullopt means not attained within n_max.
std::optional<long long> f_mixing_time(const TransitionMatrix& chain,
                                       const FunctionOnChain& f, double delta,
                                       long long n_max = kDefaultNMax);

std::optional<long long> tv_mixing_time(const TransitionMatrix& chain, double delta,
                                        long long n_max = kDefaultNMax);

DiscrepancyCurve f_discrepancy_curve(const TransitionMatrix& chain,
                                     const FunctionOnChain& f, long long n_max);

DiscrepancyCurve tv_discrepancy_curve(const TransitionMatrix& chain, long long n_max);

}  // namespace fnmix
