#include "fnmix/spectral_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace fnmix {

namespace {

constexpr double kEigenvalueGroupTol = 1e-9;

double pow_n(double lambda, long long n) { return std::pow(lambda, static_cast<double>(n)); }

void check_subset(const FSpectrum& fs, const std::vector<int>& J) {
    for (int j : J) {
        if (!std::binary_search(fs.indices.begin(), fs.indices.end(), j)) {
            throw InvalidData("J must be a subset of J_f");
        }
    }
}

}  // namespace

FSpectrum f_spectrum(const SpectralDecomposition& dec, const FunctionOnChain& f,
                     double tau_orth) {
    const int d = dec.d();
    if (tau_orth < 0.0) {
        tau_orth = 1e-12 * f.values.cwiseAbs().maxCoeff();
    }

    FSpectrum fs;
    fs.tau_orth = tau_orth;
    fs.projections = Vector(d - 1);
    for (int j = 2; j <= d; ++j) {
        fs.projections(j - 2) = std::abs(dec.projection(f.values, j));
    }

    // Group equal eigenvalues (among j >= 2 only) and test the aggregated
    // projection norm of each eigenspace.
    int j = 2;
    while (j <= d) {
        int k = j;
        double norm2 = 0.0;
        while (k <= d &&
               std::abs(dec.eigenvalues(k - 1) - dec.eigenvalues(j - 1)) <= kEigenvalueGroupTol) {
            const double c = fs.projections(k - 2);
            norm2 += c * c;
            ++k;
        }
        if (std::sqrt(norm2) > tau_orth) {
            for (int m = j; m < k; ++m) fs.indices.push_back(m);
        }
        j = k;
    }

    fs.lambda_f = 0.0;
    for (int idx : fs.indices) {
        fs.lambda_f = std::max(fs.lambda_f, std::abs(dec.eigenvalues(idx - 1)));
    }
    fs.gamma_f = 1.0 - fs.lambda_f;
    fs.e_pi_f2 = dec.pi.dot(f.values.cwiseAbs2());
    return fs;
}

JSplit make_jsplit(const SpectralDecomposition& dec, const FSpectrum& fs,
                   const FunctionOnChain& f, const std::vector<int>& J) {
    check_subset(fs, J);
    JSplit split;
    split.J = J;
    std::sort(split.J.begin(), split.J.end());

    if (!split.J.empty()) {
        double max_h_inf = 0.0;
        double max_proj = 0.0;
        for (int j : split.J) {
            max_h_inf = std::max(max_h_inf, dec.h.col(j - 1).cwiseAbs().maxCoeff());
            max_proj = std::max(max_proj, std::abs(dec.projection(f.values, j)));
            split.lambda_J = std::max(split.lambda_J, std::abs(dec.eigenvalues(j - 1)));
        }
        split.delta_star = 2.0 * static_cast<double>(split.J.size()) * max_h_inf * max_proj;
    }
    for (int j : fs.indices) {
        if (!std::binary_search(split.J.begin(), split.J.end(), j)) {
            split.lambda_minus_J = std::max(split.lambda_minus_J,
                                            std::abs(dec.eigenvalues(j - 1)));
        }
    }
    return split;
}

Vector h_J_vector(const SpectralDecomposition& dec, const FunctionOnChain& f,
                  const std::vector<int>& J, long long n) {
    Vector h = Vector::Zero(dec.d());
    for (int j : J) {
        const double c = dec.projection(f.values, j);
        h += c * pow_n(dec.eigenvalues(j - 1), n) * dec.h.col(j - 1);
    }
    return h;
}

double uniform_tv_bound(const SpectralDecomposition& dec, double dtv0, long long n) {
    return pow_n(dec.lambda_star, n) * dtv0 / std::sqrt(dec.pi_min);
}

double f_gap_bound(const SpectralDecomposition& dec, const FSpectrum& fs, double df0,
                   long long n) {
    return std::sqrt(fs.e_pi_f2 / dec.pi_min) * pow_n(fs.lambda_f, n) * df0;
}

double sharper_bound(const SpectralDecomposition& dec, const FSpectrum& fs,
                     const JSplit& split, double dtv0, double df0, long long n) {
    return split.delta_star * pow_n(split.lambda_J, n) * dtv0 +
           std::sqrt(fs.e_pi_f2 / dec.pi_min) * pow_n(split.lambda_minus_J, n) * df0;
}

double oracle_bound(const SpectralDecomposition& dec, const FSpectrum& fs,
                    const JSplit& split, const FunctionOnChain& f, const Vector& pi0,
                    long long n) {
    const Vector h = h_J_vector(dec, f, split.J, n);
    const double df0 = std::abs(pi0.dot(f.values) - f.mu);
    return std::abs((pi0 - dec.pi).dot(h)) +
           std::sqrt(fs.e_pi_f2 / dec.pi_min) * pow_n(split.lambda_minus_J, n) * df0;
}

double oracle_bound_worst(const SpectralDecomposition& dec, const FSpectrum& fs,
                          const JSplit& split, const FunctionOnChain& f, long long n,
                          double dtv0, double df0) {
    const Vector h = h_J_vector(dec, f, split.J, n);
    return 2.0 * dtv0 * h.cwiseAbs().maxCoeff() +
           std::sqrt(fs.e_pi_f2 / dec.pi_min) * pow_n(split.lambda_minus_J, n) * df0;
}

std::optional<long long> invert_geometric_bound(double c, double lambda, double delta) {
    if (!(delta > 0.0)) throw InvalidData("delta must be positive");
    if (c <= delta) return 1;
    if (lambda <= 0.0) return 1;  // one step kills the bound entirely
    if (lambda >= 1.0) return std::nullopt;
    const double n = std::ceil(std::log(c / delta) / std::log(1.0 / lambda));
    return std::max<long long>(1, static_cast<long long>(n));
}

std::optional<long long> invert_bound_to_mixing_time(
    const std::function<double(long long)>& bound, double delta, long long n_max) {
    if (!(delta > 0.0)) throw InvalidData("delta must be positive");
    if (n_max < 1) throw InvalidData("n_max must be >= 1");
    if (bound(n_max) > delta) return std::nullopt;
    long long lo = 1, hi = n_max;
    while (lo < hi) {
        const long long mid = lo + (hi - lo) / 2;
        if (bound(mid) <= delta) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

double tv_mixing_lower_bound(double gamma_star, double delta) {
    if (!(gamma_star > 0.0 && gamma_star <= 1.0)) {
        throw InvalidData("gamma_star must lie in (0,1]");
    }
    if (!(delta > 0.0 && delta < 0.5)) {
        throw InvalidData("delta must lie in (0, 1/2)");
    }
    return (1.0 / gamma_star - 1.0) * std::log(1.0 / (2.0 * delta));
}

}  // namespace fnmix
