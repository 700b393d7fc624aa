#include "fnmix/zoo.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fnmix/rng.hpp"

namespace fnmix {

namespace {

constexpr double kPi = std::numbers::pi;

Vector uniform_pi(int m) { return Vector::Constant(m, 1.0 / m); }

}  // namespace

TransitionMatrix lazy_cycle(int d) {
    if (d < 2) throw InvalidData("cycle needs d >= 2");
    const int m = 2 * d;
    Matrix P = Matrix::Zero(m, m);
    for (int u = 0; u < m; ++u) {
        P(u, u) = 0.5;
        P(u, (u + 1) % m) = 0.25;
        P(u, (u + m - 1) % m) = 0.25;
    }
    return validate_chain(P, uniform_pi(m));
}

FunctionOnChain cycle_periodic_function(const TransitionMatrix& cycle, int j) {
    const int m = cycle.d();
    const int d = m / 2;
    if (j < 0 || j > d) throw InvalidData("periodic function needs 0 <= j <= d");
    Vector values(m);
    for (int u = 0; u < m; ++u) {
        values(u) = 0.5 * (1.0 + std::cos(kPi * j * u / static_cast<double>(d)));
    }
    return make_function(cycle, values);
}

FunctionOnChain cycle_parity(const TransitionMatrix& cycle) {
    Vector values(cycle.d());
    for (int u = 0; u < cycle.d(); ++u) values(u) = (u % 2 == 1) ? 1.0 : 0.0;
    return make_function(cycle, values);
}

FunctionOnChain random_function(const TransitionMatrix& chain, uint64_t seed,
                                ValueDistribution nu) {
    Vector values(chain.d());
    for (int u = 0; u < chain.d(); ++u) {
        values(u) = (nu == ValueDistribution::PointMassHalf)
                        ? 0.5
                        : counter_uniform(seed, 0, static_cast<uint64_t>(u));
    }
    return make_function(chain, values);
}

std::vector<int> j_delta_set(int d, double delta) {
    if (d < 2 || !(delta > 0.0)) throw InvalidData("need d >= 2 and delta > 0");
    const double t = 4.0 * delta * std::sqrt(static_cast<double>(d) / std::log(d));
    std::vector<int> J;
    for (int j = 1; j <= 2 * d - 1; ++j) {
        if (j <= t || j >= 2 * d - t) J.push_back(j);
    }
    return J;
}

TransitionMatrix line_chain(int d) {
    if (d < 2) throw InvalidData("line needs d >= 2");
    const int m = 2 * d;
    Matrix P = Matrix::Zero(m, m);
    for (int u = 0; u < m; ++u) {
        if (u == 0) {
            P(u, u) = 0.75;
            P(u, u + 1) = 0.25;
        } else if (u == m - 1) {
            P(u, u) = 0.75;
            P(u, u - 1) = 0.25;
        } else {
            P(u, u) = 0.5;
            P(u, u - 1) = 0.25;
            P(u, u + 1) = 0.25;
        }
    }
    return validate_chain(P, uniform_pi(m));
}

FunctionOnChain threshold_function(const TransitionMatrix& line, double delta) {
    if (!(delta > 0.0 && delta < 0.5)) throw InvalidData("delta must lie in (0, 1/2)");
    const int m = line.d();
    Vector values(m);
    for (int u = 0; u < m; ++u) {
        values(u) = (u < m / 2) ? 0.5 - delta : 0.5 + delta;
    }
    return make_function(line, values);
}

TransitionMatrix rank_one_chain(const Vector& pi) {
    Matrix P = Vector::Ones(pi.size()) * pi.transpose();
    return validate_chain(P, pi);
}

double cycle_tf_trig_bound(int d, int j, double delta) {
    if (j < 1 || j > d) throw InvalidData("bound needs 1 <= j <= d");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidData("delta must lie in (0,1)");
    const double log2d = std::log(2.0 * d);
    const double log1delta = std::log(1.0 / delta);
    if (j <= d / 2.0) {
        return (24.0 / (kPi * kPi)) * (0.5 * log2d + log1delta) *
               static_cast<double>(d) * d / (static_cast<double>(j) * j);
    }
    return log2d + 2.0 * log1delta;
}

// --- Logistic regression Metropolis-Hastings chain -------------------------

LogisticData read_logistic_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataMissing("cannot open data file: " + path);
    LogisticData data;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_of("0123456789") == std::string::npos) continue;  // header
        std::istringstream row(line);
        std::string xs, ys;
        if (!std::getline(row, xs, ',') || !std::getline(row, ys, ',')) {
            throw InvalidData("expected two columns in " + path);
        }
        data.x.push_back(std::stod(xs));
        data.y.push_back(std::stoi(ys));
    }
    if (data.x.size() != 23) {
        throw InvalidData("expected the 23-row component failure dataset");
    }
    return data;
}

namespace {

double logistic_log_posterior(double a, double b_coef, const LogisticData& data,
                              double prior_scale) {
    double lp = a - std::exp(a) / prior_scale;
    for (size_t i = 0; i < data.x.size(); ++i) {
        const double eta = a + b_coef * data.x[i];
        lp += data.y[i] * eta - std::log1p(std::exp(eta));
    }
    return lp;
}

// Newton-Raphson for the 2-parameter logistic MLE.
std::pair<double, double> logistic_mle(const LogisticData& data) {
    double a = 0.0, b = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        double g0 = 0.0, g1 = 0.0, h00 = 0.0, h01 = 0.0, h11 = 0.0;
        for (size_t i = 0; i < data.x.size(); ++i) {
            const double eta = a + b * data.x[i];
            const double p = 1.0 / (1.0 + std::exp(-eta));
            const double r = p - data.y[i];
            const double w = p * (1.0 - p);
            g0 += r;
            g1 += r * data.x[i];
            h00 += w;
            h01 += w * data.x[i];
            h11 += w * data.x[i] * data.x[i];
        }
        const double det = h00 * h11 - h01 * h01;
        if (std::abs(det) < 1e-14) break;
        const double da = (h11 * g0 - h01 * g1) / det;
        const double db = (-h01 * g0 + h00 * g1) / det;
        a -= da;
        b -= db;
        if (std::abs(da) + std::abs(db) < 1e-12) break;
    }
    return {a, b};
}

}  // namespace

OringModel oring_mh_chain(const LogisticData& data, int grid_half, double mesh,
                          double sigma2_alpha, double sigma2_beta) {
    const auto [a_hat, b_hat] = logistic_mle(data);
    const int side = 2 * grid_half + 1;
    const int d = side * side;
    const double prior_scale = std::exp(a_hat);

    std::vector<double> alpha(d), beta(d);
    Vector lp(d);
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
            const int s = i * side + j;
            alpha[s] = a_hat + mesh * (i - grid_half);
            beta[s] = b_hat + mesh * (j - grid_half);
            lp(s) = logistic_log_posterior(alpha[s], beta[s], data, prior_scale);
        }
    }

    // Discretized Gaussian proposal, renormalized per state.
    Matrix W(d, d);
    Vector Z(d);
    for (int s = 0; s < d; ++s) {
        for (int t = 0; t < d; ++t) {
            const double da = alpha[t] - alpha[s];
            const double db = beta[t] - beta[s];
            W(s, t) = std::exp(-0.5 * (da * da / sigma2_alpha + db * db / sigma2_beta));
        }
        Z(s) = W.row(s).sum();
    }

    Matrix P = Matrix::Zero(d, d);
    for (int s = 0; s < d; ++s) {
        double off = 0.0;
        for (int t = 0; t < d; ++t) {
            if (t == s) continue;
            const double accept =
                std::min(1.0, std::exp(lp(t) - lp(s)) * Z(s) / Z(t));
            P(s, t) = W(s, t) / Z(s) * accept;
            off += P(s, t);
        }
        P(s, s) = 1.0 - off;
    }

    Vector pi = (lp.array() - lp.maxCoeff()).exp();
    pi /= pi.sum();

    TransitionMatrix chain = validate_chain(P, pi);

    Vector f(d);
    for (int s = 0; s < d; ++s) {
        const double eta = alpha[s] + 0.65 * beta[s];
        f(s) = 1.0 / (1.0 + std::exp(-eta));
    }
    FunctionOnChain f65 = make_function(chain, f);

    return OringModel{std::move(chain), std::move(f65), a_hat, b_hat, std::move(lp)};
}

// --- Collapsed Gibbs chain for a two-component Gaussian mixture ------------

std::vector<double> read_mixture_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataMissing("cannot open data file: " + path);
    std::vector<double> x;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_of("0123456789") == std::string::npos) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');
        x.push_back(std::stod(field));
    }
    if (x.size() != 10) throw InvalidData("expected exactly 10 observations");
    return x;
}

namespace {

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// log of the marginal likelihood of one component's observations with the
// mean integrated out: mu ~ N(0, rho^2), x_i | mu ~ N(mu, sigma^2).
double group_log_marginal(int n, double sum, double sumsq, double rho, double sigma) {
    if (n == 0) return 0.0;
    const double s2 = sigma * sigma;
    const double r2 = rho * rho;
    return -0.5 * n * std::log(2.0 * kPi * s2) +
           0.5 * std::log(s2 / (n * r2 + s2)) - sumsq / (2.0 * s2) +
           r2 * sum * sum / (2.0 * s2 * (n * r2 + s2));
}

}  // namespace

MixtureModel mixture_gibbs_chain(const std::vector<double>& x,
                                 const MixturePriors& priors) {
    if (x.size() != 10) throw InvalidData("mixture chain expects exactly 10 observations");
    const int n_obs = 10;
    const int d = 1 << n_obs;

    Vector lp(d);
    for (int z = 0; z < d; ++z) {
        int n1 = 0;
        double s0 = 0.0, ss0 = 0.0, s1 = 0.0, ss1 = 0.0;
        for (int i = 0; i < n_obs; ++i) {
            if (z & (1 << i)) {
                ++n1;
                s1 += x[i];
                ss1 += x[i] * x[i];
            } else {
                s0 += x[i];
                ss0 += x[i] * x[i];
            }
        }
        lp(z) = log_beta(priors.alpha0 + n1, priors.alpha1 + (n_obs - n1)) -
                log_beta(priors.alpha0, priors.alpha1) +
                group_log_marginal(n_obs - n1, s0, ss0, priors.rho, priors.sigma) +
                group_log_marginal(n1, s1, ss1, priors.rho, priors.sigma);
    }

    Matrix P = Matrix::Zero(d, d);
    const double scan = 1.0 / n_obs;
    for (int z = 0; z < d; ++z) {
        double stay = 0.0;
        for (int i = 0; i < n_obs; ++i) {
            const int flipped = z ^ (1 << i);
            // conditional probability of the flipped value given z_{-i}
            const double p_flip = 1.0 / (1.0 + std::exp(lp(z) - lp(flipped)));
            P(z, flipped) = scan * p_flip;
            stay += scan * (1.0 - p_flip);
        }
        P(z, z) = stay;
    }

    Vector pi = (lp.array() - lp.maxCoeff()).exp();
    pi /= pi.sum();

    TransitionMatrix chain = validate_chain(P, pi);

    const int z_star1 = (1 << 5) - 1;          // first five in component 1
    const int z_star0 = ((1 << 5) - 1) << 5;   // last five in component 1
    Vector f = Vector::Zero(d);
    f(z_star0) = 1.0;
    f(z_star1) = 1.0;
    FunctionOnChain recovery = make_function(chain, f);

    return MixtureModel{std::move(chain), std::move(recovery), std::move(lp),
                        z_star0, z_star1};
}

}  // namespace fnmix
