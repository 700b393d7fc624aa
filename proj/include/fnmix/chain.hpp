#pragma once

#include <Eigen/Dense>
#include <optional>

#include "fnmix/errors.hpp"

namespace fnmix {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Numerical tolerances for chain validation. The reversibility tolerance is
// relative to the largest probability flow pi_i * P_ij.
struct ChainTolerances {
    double row_sum = 1e-12;
    double reversibility = 1e-10;
    double stationarity = 1e-10;
    double unit_eigenvalue = 1e-12;
};

// A validated row-stochastic, irreducible, aperiodic, reversible transition
// matrix together with its stationary distribution.
class TransitionMatrix {
  public:
    int d() const { return static_cast<int>(P_.rows()); }
    const Matrix& P() const { return P_; }
    const Vector& pi() const { return pi_; }
    double pi_min() const { return pi_min_; }

    friend TransitionMatrix validate_chain(const Matrix& P,
                                           const std::optional<Vector>& pi,
                                           const ChainTolerances& tol);

  private:
    TransitionMatrix(Matrix P, Vector pi, double pi_min)
        : P_(std::move(P)), pi_(std::move(pi)), pi_min_(pi_min) {}

    Matrix P_;
    Vector pi_;
    double pi_min_;
};

// Validates P (and pi, when given) against all standing assumptions.
// If pi is absent it is computed from the symmetrized matrix
// S_ij = sqrt(P_ij * P_ji), whose top eigenvector is sqrt(pi) for
// reversible chains.
//
// Throws NotStochastic, NotReversible, ReduciblePeriodic, NonPositivePi.
TransitionMatrix validate_chain(const Matrix& P,
                                const std::optional<Vector>& pi = std::nullopt,
                                const ChainTolerances& tol = {});

// Stationary distribution of a reversible row-stochastic matrix, via the
// top eigenvector of S_ij = sqrt(P_ij * P_ji), squared and normalized.
// Throws NoConvergence if the eigensolver fails and ReduciblePeriodic if
// the unit eigenvalue is not simple.
Vector stationary_distribution(const Matrix& P);

// Eigensystem of the symmetrized matrix (A + A^T)/2 with
// A = diag(sqrt(pi)) P diag(sqrt(pi))^-1. Expressed in chain coordinates:
//
//   P = 1 pi^T + sum_{j>=2} lambda_j h_j q_j^T,
//
// with right eigenvectors h_j (columns of `h`, ||h_j||_pi = 1) and left
// eigenvectors q_j (columns of `q`, q_j^T h_k = delta_jk). Index 0 holds the
// trivial pair (lambda=1, h=1, q=pi) exactly.
struct SpectralDecomposition {
    Vector eigenvalues;  // descending, eigenvalues[0] == 1
    Matrix h;            // d x d, column j = h_{j+1}
    Matrix q;            // d x d, column j = q_{j+1}
    Vector pi;
    double pi_min = 0.0;
    double lambda_star = 0.0;  // max(lambda_2, |lambda_d|)
    double lambda_0 = 0.0;     // max(lambda_2, 0)
    double gamma_star = 1.0;
    double gamma_0 = 1.0;

    int d() const { return static_cast<int>(eigenvalues.size()); }

    // Projection of f onto the j-th left eigenvector, q_j^T f.
    // Paper-style index j in [1, d]; j = 1 gives pi^T f.
    double projection(const Vector& f, int j) const {
        return q.col(j - 1).dot(f);
    }
};

SpectralDecomposition spectral_decompose(const TransitionMatrix& chain);

// A target function f : [d] -> [0,1] with its stationary mean and variance.
struct FunctionOnChain {
    Vector values;
    double mu = 0.0;      // pi^T f
    double sigma2 = 0.0;  // Var_pi[f]
};

// Binds values to a chain and computes mu and sigma2. Throws InvalidData if
// any value falls outside [0,1] (beyond rounding slack) or the size is wrong.
FunctionOnChain make_function(const TransitionMatrix& chain, const Vector& values);

}  // namespace fnmix
