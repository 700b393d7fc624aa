#include "fnmix/discrepancy.hpp"

#include <cmath>

namespace fnmix {

namespace {

void check_distribution(const TransitionMatrix& chain, const Vector& pi0) {
    if (pi0.size() != chain.d()) {
        throw InvalidData("start distribution has wrong length");
    }
    if (!pi0.allFinite() || pi0.minCoeff() < -1e-12 || std::abs(pi0.sum() - 1.0) > 1e-8) {
        throw InvalidData("start distribution must be a probability vector");
    }
}

void check_n(long long n) {
    if (n < 0) throw InvalidData("step count must be nonnegative");
}

}  // namespace

double f_discrepancy(const TransitionMatrix& chain, const FunctionOnChain& f,
                     const Vector& pi0, long long n) {
    check_distribution(chain, pi0);
    check_n(n);
    Eigen::RowVectorXd row = pi0.transpose();
    for (long long k = 0; k < n; ++k) row = row * chain.P();
    return std::abs(row.dot(f.values) - f.mu);
}

double worst_case_f_discrepancy(const TransitionMatrix& chain, const FunctionOnChain& f,
                                long long n) {
    check_n(n);
    Vector v = f.values;
    for (long long k = 0; k < n; ++k) v = chain.P() * v;
    return (v.array() - f.mu).abs().maxCoeff();
}

double tv_discrepancy(const TransitionMatrix& chain, const Vector& pi0, long long n) {
    check_distribution(chain, pi0);
    check_n(n);
    Eigen::RowVectorXd row = pi0.transpose();
    for (long long k = 0; k < n; ++k) row = row * chain.P();
    return 0.5 * (row.transpose() - chain.pi()).cwiseAbs().sum();
}

double worst_case_tv(const TransitionMatrix& chain, long long n) {
    check_n(n);
    Matrix Q = Matrix::Identity(chain.d(), chain.d());
    for (long long k = 0; k < n; ++k) Q = Q * chain.P();
    double worst = 0.0;
    for (int i = 0; i < chain.d(); ++i) {
        worst = std::max(worst, 0.5 * (Q.row(i).transpose() - chain.pi()).cwiseAbs().sum());
    }
    return worst;
}

std::optional<long long> f_mixing_time(const TransitionMatrix& chain,
                                       const FunctionOnChain& f, double delta,
                                       long long n_max) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidData("delta must lie in (0,1)");
    if (n_max < 1) throw InvalidData("n_max must be >= 1");
    Vector v = f.values;
    for (long long n = 1; n <= n_max; ++n) {
        v = chain.P() * v;
        if ((v.array() - f.mu).abs().maxCoeff() <= delta) return n;
    }
    return std::nullopt;
}

std::optional<long long> tv_mixing_time(const TransitionMatrix& chain, double delta,
                                        long long n_max) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidData("delta must lie in (0,1)");
    if (n_max < 1) throw InvalidData("n_max must be >= 1");
    Matrix Q = chain.P();
    for (long long n = 1; n <= n_max; ++n) {
        double worst = 0.0;
        for (int i = 0; i < chain.d(); ++i) {
            worst = std::max(worst, 0.5 * (Q.row(i).transpose() - chain.pi()).cwiseAbs().sum());
        }
        if (worst <= delta) return n;
        if (n < n_max) Q = Q * chain.P();
    }
    return std::nullopt;
}

DiscrepancyCurve f_discrepancy_curve(const TransitionMatrix& chain,
                                     const FunctionOnChain& f, long long n_max) {
    if (n_max < 1) throw InvalidData("n_max must be >= 1");
    DiscrepancyCurve curve;
    curve.kind = CurveKind::FDiscrepancy;
    curve.w.reserve(static_cast<size_t>(n_max));
    Vector v = f.values;
    for (long long n = 1; n <= n_max; ++n) {
        v = chain.P() * v;
        curve.w.push_back((v.array() - f.mu).abs().maxCoeff());
    }
    return curve;
}

DiscrepancyCurve tv_discrepancy_curve(const TransitionMatrix& chain, long long n_max) {
    if (n_max < 1) throw InvalidData("n_max must be >= 1");
    DiscrepancyCurve curve;
    curve.kind = CurveKind::TotalVariation;
    curve.w.reserve(static_cast<size_t>(n_max));
    Matrix Q = chain.P();
    for (long long n = 1; n <= n_max; ++n) {
        double worst = 0.0;
        for (int i = 0; i < chain.d(); ++i) {
            worst = std::max(worst, 0.5 * (Q.row(i).transpose() - chain.pi()).cwiseAbs().sum());
        }
        curve.w.push_back(worst);
        if (n < n_max) Q = Q * chain.P();
    }
    return curve;
}

}  // namespace fnmix
