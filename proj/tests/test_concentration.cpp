#include <doctest.h>

#include <cmath>

#include "fnmix/concentration.hpp"
#include "fnmix/discrepancy.hpp"
#include "fnmix/zoo.hpp"

using namespace fnmix;

namespace {

const MixingTimeBound kIid = [](double) { return 1.0; };

struct TwoState {
    TransitionMatrix chain;
    SpectralDecomposition dec;
    FunctionOnChain f;
    FSpectrum fs;

    TwoState()
        : chain(validate_chain((Matrix(2, 2) << 0.7, 0.3, 0.3, 0.7).finished())),
          dec(spectral_decompose(chain)),
          f(make_function(chain, (Vector(2) << 0.0, 1.0).finished())),
          fs(f_spectrum(dec, f)) {}
};

}  // namespace

TEST_SUITE("concentration") {

TEST_CASE("master bound on iid and two-state chains") {
    auto iid = master_hoeffding(0.2, 800, kIid);
    CHECK(iid.value == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
    CHECK(iid.n_eff == doctest::Approx(800.0).epsilon(1e-12));

    TwoState ts;
    const MixingTimeBound tf_exact = [&](double delta) {
        return static_cast<double>(f_mixing_time(ts.chain, ts.f, delta).value());
    };
    CHECK(tf_exact(0.05) == 3.0);
    auto b = master_hoeffding(0.1, 2400, tf_exact);
    CHECK(b.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(b.n_eff == doctest::Approx(800.0).epsilon(1e-12));
}

TEST_CASE("master bound preconditions") {
    CHECK_THROWS_AS(master_hoeffding(0.1, 2, [](double) { return 3.0; }),
                    PreconditionViolated);
    CHECK_THROWS_AS(master_hoeffding(0.1, 1000, kIid, 0.5), PreconditionViolated);
    CHECK_NOTHROW(master_hoeffding(0.1, 1000, kIid, 0.05));
}

TEST_CASE("master bound floors the block count") {
    // N = 10, T_f = 3: floor(10/3) = 3 blocks in the exponent
    auto b = master_hoeffding(0.5, 10, [](double) { return 3.0; });
    CHECK(b.value == doctest::Approx(std::exp(-0.25 * 3.0 / 8.0)).epsilon(1e-12));
    CHECK(b.n_eff == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("effective sample size") {
    CHECK(effective_sample_size(1000, 5) == doctest::Approx(200.0));
    CHECK(effective_sample_size(1000, 5, true) == doctest::Approx(199.0));
    CHECK(effective_sample_size(1000, 1000) == doctest::Approx(1.0));
    CHECK(effective_sample_size(1000, 1000, true) == doctest::Approx(0.0));
}

TEST_CASE("spectral corollary branches") {
    TwoState ts;
    const double sqrt_pimin = std::sqrt(0.5);
    // branch threshold 2 lambda_f / sqrt(pi_min) = 0.8 / sqrt(0.5)
    const double threshold = 0.8 / sqrt_pimin;
    CHECK(threshold == doctest::Approx(1.13137).epsilon(1e-4));

    const long long N = 10000;
    auto b1 = hoeffding_spectral(0.1, N, ts.fs, 0.5);
    const double log_term = std::log(2.0 / (0.1 * sqrt_pimin));
    CHECK(log_term == doctest::Approx(3.3422).epsilon(1e-4));
    CHECK(b1.value ==
          doctest::Approx(std::exp(-(0.01 / 8.0) * 0.6 * N / log_term)).epsilon(1e-12));

    auto b2 = hoeffding_spectral(1.2, N, ts.fs, 0.5);
    CHECK(b2.value == doctest::Approx(std::exp(-1.44 * N / 8.0)).epsilon(1e-12));

    // constant function: lambda_f = 0 always takes the iid-like branch
    auto constant = make_function(ts.chain, Vector::Constant(2, 0.4));
    auto fs0 = f_spectrum(ts.dec, constant);
    auto b3 = hoeffding_spectral(0.1, 100, fs0, 0.5);
    CHECK(b3.value == doctest::Approx(std::exp(-0.01 * 100 / 8.0)).epsilon(1e-12));
}

TEST_CASE("J-split corollary branches and preconditions") {
    JSplit split;
    split.delta_star = 0.02;
    split.lambda_J = 0.9;
    split.lambda_minus_J = 0.5;

    const long long N = 1000;
    auto b1 = hoeffding_jsplit(0.1, 0.1, N, split, 0.25);
    CHECK(b1.epsilon == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(b1.value ==
          doctest::Approx(std::exp(-0.02 * 0.5 * N / std::log(20.0))).epsilon(1e-12));

    // Delta above lambda_-J / sqrt(pi_min) = 1 switches branch
    auto b2 = hoeffding_jsplit(1.5, 0.1, N, split, 0.25);
    CHECK(b2.value == doctest::Approx(std::exp(-1.6 * 1.6 * N / 2.0)).epsilon(1e-10));

    split.delta_star = 0.02;
    CHECK_THROWS_AS(hoeffding_jsplit(0.1, 0.01, N, split, 0.25), PreconditionViolated);
}

TEST_CASE("uniform Hoeffding bound") {
    auto iid = uniform_hoeffding(0.1, 1000, 1.0);
    CHECK(iid.value == doctest::Approx(2.0 * std::exp(-0.01 * 1000 / 2.0)).epsilon(1e-12));

    auto b = uniform_hoeffding(0.1, 10000, 0.6);
    const double rate = 0.6 / (2.0 * 1.4);
    CHECK(b.value == doctest::Approx(2.0 * std::exp(-rate * 0.01 * 10000)).epsilon(1e-12));
    CHECK(uniform_hoeffding(0.1, 10000, 0.6, false).value ==
          doctest::Approx(0.5 * b.value).epsilon(1e-12));

    CHECK(uniform_hoeffding(1e-9, 10, 0.6).value == 1.0);  // clipped
}

TEST_CASE("uniform bound with burn-in") {
    auto pure = uniform_hoeffding_burnin(0.1, 1000, 0, 0.5, 0.0);
    CHECK(pure.value ==
          doctest::Approx(std::exp(-0.5 * 0.01 * 1000)).epsilon(1e-12));

    // additivity: dtv + exponential term, built to equal 0.11 exactly
    const double eps = std::sqrt(std::log(100.0) / 500.0);
    auto add = uniform_hoeffding_burnin(eps, 1500, 500, 0.5, 0.1);
    CHECK(add.value == doctest::Approx(0.11).epsilon(1e-12));

    // gamma_0 = 1 falls back to the iid limit exponent
    auto limit = uniform_hoeffding_burnin(0.1, 1000, 0, 1.0, 0.0);
    CHECK(limit.value == doctest::Approx(std::exp(-0.01 * 1000 / 2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(uniform_hoeffding_burnin(0.1, 100, 100, 0.5, 0.0),
                    PreconditionViolated);
}

TEST_CASE("burn-in optimizer finds an interior optimum") {
    const double gamma0 = 0.1;
    const long long N = 2000;
    const auto dtv = [](long long T0) { return std::pow(0.9, static_cast<double>(T0)); };
    auto [t_star, best] = optimize_burnin(0.1, N, gamma0, dtv, 0, 1999);
    CHECK(t_star > 0);
    CHECK(t_star < 1999);
    CHECK(best.value < uniform_hoeffding_burnin(0.1, N, 0, gamma0, dtv(0)).value);
    CHECK(best.value < uniform_hoeffding_burnin(0.1, N, 1999, gamma0, dtv(1999)).value);
    // exhaustive scan is the oracle
    for (long long T0 = 0; T0 < N; T0 += 7) {
        CHECK(best.value <= uniform_hoeffding_burnin(0.1, N, T0, gamma0, dtv(T0)).value + 1e-15);
    }
}

TEST_CASE("bounds are nonincreasing in N and epsilon") {
    TwoState ts;
    const MixingTimeBound tf_exact = [&](double delta) {
        return static_cast<double>(f_mixing_time(ts.chain, ts.f, delta).value());
    };
    double prev = 1.0;
    for (long long N = 100; N <= 3000; N += 200) {
        const double v = master_hoeffding(0.2, N, tf_exact).value;
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
    prev = 1.0;
    for (double eps = 0.05; eps < 0.9; eps += 0.05) {
        const double v = master_hoeffding(eps, 5000, tf_exact).value;
        CHECK(v <= prev + 1e-15);
        prev = v;
        const double u = uniform_hoeffding(eps, 5000, 0.6).value;
        const double s = hoeffding_spectral(eps, 5000, ts.fs, 0.5).value;
        CHECK(u <= uniform_hoeffding(eps - 0.04, 5000, 0.6).value + 1e-15);
        CHECK(s <= hoeffding_spectral(eps - 0.04, 5000, ts.fs, 0.5).value + 1e-15);
    }
}

}  // TEST_SUITE
