#include <doctest.h>

#include <cmath>

#include "fnmix/discrepancy.hpp"
#include "fnmix/spectral_bounds.hpp"
#include "fnmix/zoo.hpp"

using namespace fnmix;

TEST_SUITE("zoo") {

TEST_CASE("lazy cycle structure") {
    auto chain = lazy_cycle(2);
    CHECK(chain.d() == 4);
    CHECK(chain.P()(0, 0) == 0.5);
    CHECK(chain.P()(0, 1) == 0.25);
    CHECK(chain.P()(0, 3) == 0.25);
    for (int i = 0; i < 4; ++i) CHECK(chain.P().row(i).sum() == 1.0);
}

TEST_CASE("periodic functions: endpoints and means") {
    auto chain = lazy_cycle(8);
    auto f0 = cycle_periodic_function(chain, 0);
    CHECK((f0.values.array() == 1.0).all());

    for (int j : {1, 4, 8}) {
        auto f = cycle_periodic_function(chain, j);
        CHECK(f.mu == doctest::Approx(0.5).epsilon(1e-12));
    }

    // parity is f_d up to relabeling: identical discrepancy at every step
    auto parity = cycle_parity(chain);
    auto fd = cycle_periodic_function(chain, 8);
    for (long long n = 1; n <= 5; ++n) {
        CHECK(worst_case_f_discrepancy(chain, parity, n) ==
              doctest::Approx(worst_case_f_discrepancy(chain, fd, n)).epsilon(1e-12));
    }
}

TEST_CASE("spectral gap of f_j matches the trigonometric value") {
    const int d = 8;
    auto chain = lazy_cycle(d);
    auto dec = spectral_decompose(chain);
    for (int j : {1, 2, 4, 7, 8}) {
        auto fs = f_spectrum(dec, cycle_periodic_function(chain, j));
        const double gamma = 0.5 * (1.0 - std::cos(M_PI * j / static_cast<double>(d)));
        CHECK(fs.gamma_f == doctest::Approx(gamma).epsilon(1e-9));
        if (j <= d / 2) {
            CHECK(fs.gamma_f >= M_PI * M_PI * j * j / (24.0 * d * d) - 1e-12);
        } else {
            CHECK(fs.gamma_f >= 0.5 - 1e-12);
        }
    }
}

TEST_CASE("random functions are reproducible and nu options work") {
    auto chain = lazy_cycle(16);
    auto f1 = random_function(chain, 42);
    auto f2 = random_function(chain, 42);
    CHECK((f1.values - f2.values).cwiseAbs().maxCoeff() == 0.0);
    auto f3 = random_function(chain, 43);
    CHECK((f1.values - f3.values).cwiseAbs().maxCoeff() > 0.0);

    auto flat = random_function(chain, 7, ValueDistribution::PointMassHalf);
    CHECK((flat.values.array() == 0.5).all());
    CHECK(f_mixing_time(chain, flat, 0.01).value() == 1);
}

TEST_CASE("J_delta index bands") {
    auto J = j_delta_set(100, 0.1);
    REQUIRE(J.size() == 2);
    CHECK(J[0] == 1);
    CHECK(J[1] == 199);
}

TEST_CASE("projections of random functions on the near-unit cycle spectrum") {
    // Fourier-sum oracle for |q_j^T f| on C_{2d}; the bound
    // 2 sqrt(10 log d / d) must hold for the vast majority of seeds.
    const int d = 200;
    auto chain = lazy_cycle(d);
    const auto J = j_delta_set(d, 0.1);
    const double threshold = 2.0 * std::sqrt(10.0 * std::log(d) / d);
    int good = 0;
    const int seeds = 1000;
    for (int seed = 0; seed < seeds; ++seed) {
        auto f = random_function(chain, static_cast<uint64_t>(seed));
        double worst = 0.0;
        for (int j : J) {
            double A = 0.0, B = 0.0;
            for (int u = 0; u < 2 * d; ++u) {
                A += f.values(u) * std::cos(M_PI * j * u / static_cast<double>(d));
                B += f.values(u) * std::sin(M_PI * j * u / static_cast<double>(d));
            }
            A /= 2.0 * d;
            B /= 2.0 * d;
            worst = std::max(worst, std::sqrt(A * A + B * B));
        }
        if (worst <= threshold) ++good;
    }
    CHECK(static_cast<double>(good) / seeds >= 0.99);
}

TEST_CASE("line chain boundary rule and uniform pi") {
    auto chain = line_chain(4);
    CHECK(chain.d() == 8);
    CHECK(chain.P()(0, 0) == 0.75);
    CHECK(chain.P()(0, 1) == 0.25);
    CHECK(chain.P()(7, 7) == 0.75);
    CHECK(chain.P()(3, 2) == 0.25);
    for (int i = 0; i < 8; ++i) {
        CHECK(chain.pi()(i) == doctest::Approx(0.125).epsilon(1e-12));
    }
}

TEST_CASE("threshold function mixes immediately at its own delta") {
    auto chain = line_chain(10);
    auto f = threshold_function(chain, 0.1);
    CHECK(f.mu == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f_mixing_time(chain, f, 0.1).value() == 1);
    // the outer-quarter event carries at least a third of the mass
    const int m = chain.d();
    double mass = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i < m / 4 || i >= 3 * m / 4) mass += chain.pi()(i);
    }
    CHECK(mass >= 1.0 / 3.0);
}

TEST_CASE("trig mixing-time bound formula") {
    CHECK(cycle_tf_trig_bound(8, 8, 0.1) ==
          doctest::Approx(std::log(16.0) + 2.0 * std::log(10.0)).epsilon(1e-12));
    CHECK(cycle_tf_trig_bound(8, 1, 0.1) ==
          doctest::Approx(24.0 / (M_PI * M_PI) * (0.5 * std::log(16.0) + std::log(10.0)) *
                          64.0).epsilon(1e-12));
}

TEST_CASE("logistic MH chain on the component-failure data") {
    auto data = read_logistic_csv(DATA_DIR "/oring.csv");
    REQUIRE(data.x.size() == 23);
    auto model = oring_mh_chain(data);
    CHECK(model.chain.d() == 289);
    // failure probability decreases with temperature
    CHECK(model.beta_hat < 0.0);
    CHECK(model.f65.values.minCoeff() >= 0.0);
    CHECK(model.f65.values.maxCoeff() <= 1.0);
    auto dec = spectral_decompose(model.chain);
    MESSAGE("oring lambda_star = ", dec.lambda_star);
    CHECK(dec.lambda_star < 1.0);
    CHECK(dec.lambda_star > 0.0);
}

TEST_CASE("mixture Gibbs chain on the bundled synthetic data") {
    auto x = read_mixture_csv(DATA_DIR "/mixture.csv");
    REQUIRE(x.size() == 10);
    auto model = mixture_gibbs_chain(x);
    CHECK(model.chain.d() == 1024);
    CHECK(model.recovery.values(model.z_star0) == 1.0);
    CHECK(model.recovery.values(model.z_star1) == 1.0);
    CHECK(model.recovery.values.sum() == 2.0);
    MESSAGE("mixture pi_min = ", model.chain.pi_min());
    auto dec = spectral_decompose(model.chain);
    MESSAGE("mixture gamma_star = ", dec.gamma_star);
    CHECK(dec.gamma_star > 0.0);
}

TEST_CASE("mixture chain rejects wrong-sized data") {
    CHECK_THROWS_AS(mixture_gibbs_chain({1.0, 2.0, 3.0}), InvalidData);
}

}  // TEST_SUITE
