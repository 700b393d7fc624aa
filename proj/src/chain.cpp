#include "fnmix/chain.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace fnmix {

namespace {

// Symmetric matrix sharing the spectrum of a reversible P, built without
// knowledge of pi: S_ij = sqrt(P_ij * P_ji) = (D_pi P D_pi^-1)_ij.
Matrix sqrt_symmetrization(const Matrix& P) {
    const auto d = P.rows();
    Matrix S(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        S(i, i) = P(i, i);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double w = std::sqrt(std::max(P(i, j), 0.0) * std::max(P(j, i), 0.0));
            S(i, j) = w;
            S(j, i) = w;
        }
    }
    return S;
}

void check_degenerate_rows(const Matrix& P, const ChainTolerances& tol) {
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
        if (P(i, i) >= 1.0 - tol.unit_eigenvalue) {
            throw ReduciblePeriodic("absorbing state: chain is reducible");
        }
    }
}

void check_stochastic(const Matrix& P, const ChainTolerances& tol) {
    if (P.rows() != P.cols() || P.rows() < 2) {
        throw NotStochastic("transition matrix must be square with d >= 2");
    }
    if (!P.allFinite()) {
        throw NotStochastic("transition matrix has non-finite entries");
    }
    if (P.minCoeff() < -tol.row_sum || P.maxCoeff() > 1.0 + tol.row_sum) {
        throw NotStochastic("transition probabilities must lie in [0,1]");
    }
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
        const double s = P.row(i).sum();
        if (std::abs(s - 1.0) > tol.row_sum) {
            std::ostringstream msg;
            msg << "row " << i << " sums to " << s << ", not 1";
            throw NotStochastic(msg.str());
        }
    }
}

}  // namespace

Vector stationary_distribution(const Matrix& P) {
    ChainTolerances tol;
    check_stochastic(P, tol);
    check_degenerate_rows(P, tol);
    const Matrix S = sqrt_symmetrization(P);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(S);
    if (solver.info() != Eigen::Success) {
        throw NoConvergence("eigensolver failed on the symmetrized matrix");
    }
    const auto d = P.rows();
    // Eigen sorts ascending; the last slot is the unit eigenvalue.
    if (solver.eigenvalues()(d - 2) >= 1.0 - tol.unit_eigenvalue) {
        throw ReduciblePeriodic("unit eigenvalue is not simple: chain is reducible");
    }
    Vector pi = solver.eigenvectors().col(d - 1).array().square();
    pi /= pi.sum();
    return pi;
}

TransitionMatrix validate_chain(const Matrix& P,
                                const std::optional<Vector>& pi_in,
                                const ChainTolerances& tol) {
    check_stochastic(P, tol);
    check_degenerate_rows(P, tol);
    const auto d = P.rows();

    Vector pi;
    if (pi_in) {
        if (pi_in->size() != d) {
            throw NonPositivePi("pi has wrong length");
        }
        if (!pi_in->allFinite() || pi_in->minCoeff() <= 0.0) {
            throw NonPositivePi("pi must be strictly positive");
        }
        const double s = pi_in->sum();
        if (std::abs(s - 1.0) > 1e-8) {
            throw NonPositivePi("pi must sum to 1");
        }
        pi = *pi_in / s;
    } else {
        pi = stationary_distribution(P);
        if (pi.minCoeff() <= 0.0) {
            throw NonPositivePi("computed stationary distribution is not strictly positive");
        }
    }

    // Detailed balance, relative to the largest probability flow.
    double max_flow = 0.0;
    double max_violation = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double flow = pi(i) * P(i, j);
            max_flow = std::max(max_flow, flow);
            max_violation = std::max(max_violation, std::abs(flow - pi(j) * P(j, i)));
        }
    }
    if (max_violation > tol.reversibility * max_flow) {
        std::ostringstream msg;
        msg << "detailed balance violated: max |pi_i P_ij - pi_j P_ji| = " << max_violation
            << " vs flow scale " << max_flow;
        throw NotReversible(msg.str());
    }

    if (((pi.transpose() * P).transpose() - pi).cwiseAbs().maxCoeff() > tol.stationarity) {
        throw NotReversible("pi is not stationary: ||pi P - pi||_inf exceeds tolerance");
    }

    // Irreducibility and aperiodicity: second-largest eigenvalue modulus < 1.
    // Absorbing states show up here as a repeated unit eigenvalue.
    Vector sqrt_pi = pi.array().sqrt();
    Matrix A = sqrt_pi.asDiagonal() * P * sqrt_pi.cwiseInverse().asDiagonal();
    Matrix S = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(S, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw EigensolverFailure("eigensolver failed during validation");
    }
    const double slem =
        std::max(solver.eigenvalues()(d - 2), std::abs(solver.eigenvalues()(0)));
    if (slem >= 1.0 - tol.unit_eigenvalue) {
        throw ReduciblePeriodic(
            "second-largest eigenvalue modulus is 1 within tolerance: "
            "chain is reducible or periodic");
    }

    const double pi_min = pi.minCoeff();
    return TransitionMatrix(P, std::move(pi), pi_min);
}

SpectralDecomposition spectral_decompose(const TransitionMatrix& chain) {
    const int d = chain.d();
    const Vector& pi = chain.pi();
    Vector sqrt_pi = pi.array().sqrt();

    Matrix A = sqrt_pi.asDiagonal() * chain.P() * sqrt_pi.cwiseInverse().asDiagonal();
    Matrix S = 0.5 * (A + A.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(S);
    if (solver.info() != Eigen::Success) {
        throw EigensolverFailure("eigensolver failed on the symmetrized matrix");
    }

    SpectralDecomposition dec;
    dec.pi = pi;
    dec.pi_min = chain.pi_min();
    dec.eigenvalues = Vector(d);
    dec.h = Matrix(d, d);
    dec.q = Matrix(d, d);

    // The trivial pair is stored exactly.
    dec.eigenvalues(0) = 1.0;
    dec.h.col(0) = Vector::Ones(d);
    dec.q.col(0) = pi;

    // Remaining pairs in descending eigenvalue order with a deterministic
    // sign convention (largest-magnitude entry positive).
    for (int j = 1; j < d; ++j) {
        const int src = d - 1 - j;  // Eigen sorts ascending
        dec.eigenvalues(j) = solver.eigenvalues()(src);
        Vector gamma = solver.eigenvectors().col(src);
        int arg_max = 0;
        gamma.cwiseAbs().maxCoeff(&arg_max);
        if (gamma(arg_max) < 0.0) gamma = -gamma;
        dec.h.col(j) = gamma.cwiseQuotient(sqrt_pi);
        dec.q.col(j) = gamma.cwiseProduct(sqrt_pi);
    }

    dec.lambda_star = std::max(dec.eigenvalues(1), std::abs(dec.eigenvalues(d - 1)));
    dec.lambda_0 = std::max(dec.eigenvalues(1), 0.0);
    dec.gamma_star = 1.0 - dec.lambda_star;
    dec.gamma_0 = 1.0 - dec.lambda_0;
    return dec;
}

FunctionOnChain make_function(const TransitionMatrix& chain, const Vector& values) {
    if (values.size() != chain.d()) {
        throw InvalidData("function length does not match state count");
    }
    if (!values.allFinite() || values.minCoeff() < -1e-12 || values.maxCoeff() > 1.0 + 1e-12) {
        throw InvalidData("function values must lie in [0,1]");
    }
    FunctionOnChain f;
    f.values = values;
    f.mu = chain.pi().dot(values);
    f.sigma2 = chain.pi().dot(values.cwiseAbs2()) - f.mu * f.mu;
    return f;
}

}  // namespace fnmix
