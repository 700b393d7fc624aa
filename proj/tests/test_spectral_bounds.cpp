#include <doctest.h>

#include <cmath>

#include "fnmix/discrepancy.hpp"
#include "fnmix/spectral_bounds.hpp"
#include "fnmix/zoo.hpp"

using namespace fnmix;

namespace {

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

Vector e_i(int d, int i) {
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

}  // namespace

TEST_SUITE("spectral_bounds") {

TEST_CASE("f-spectrum of the two-state indicator") {
    TwoState ts;
    REQUIRE(ts.fs.indices.size() == 1);
    CHECK(ts.fs.indices[0] == 2);
    CHECK(ts.fs.lambda_f == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(ts.fs.gamma_f == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(ts.fs.projections(0) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("periodic functions project onto a single eigenspace of the cycle") {
    auto chain = lazy_cycle(8);
    auto dec = spectral_decompose(chain);
    for (int j : {1, 3, 8}) {
        auto f = cycle_periodic_function(chain, j);
        auto fs = f_spectrum(dec, f);
        const double expected_lambda =
            0.5 * (1.0 + std::cos(M_PI * j / 8.0));
        CHECK(fs.lambda_f == doctest::Approx(std::abs(expected_lambda)).epsilon(1e-9));
        // all selected eigenvalues share |lambda| = lambda_f (one eigenspace,
        // possibly two frequency branches at equal |lambda|)
        for (int idx : fs.indices) {
            CHECK(std::abs(std::abs(dec.eigenvalues(idx - 1)) - fs.lambda_f) < 1e-8);
        }
    }
}

TEST_CASE("constant f has empty f-spectrum and unit gap") {
    TwoState ts;
    auto f = make_function(ts.chain, Vector::Constant(2, 0.3));
    auto fs = f_spectrum(ts.dec, f);
    CHECK(fs.indices.empty());
    CHECK(fs.lambda_f == 0.0);
    CHECK(fs.gamma_f == 1.0);
}

TEST_CASE("gamma_f dominates gamma_star, and gamma_0 under orthogonality") {
    auto chain = lazy_cycle(8);
    auto dec = spectral_decompose(chain);
    for (int j : {1, 4, 8}) {
        auto fs = f_spectrum(dec, cycle_periodic_function(chain, j));
        CHECK(fs.gamma_f >= dec.gamma_star - 1e-12);
        if (j > 1) CHECK(fs.gamma_f >= dec.gamma_0 - 1e-12);
    }
}

TEST_CASE("uniform TV bound values") {
    TwoState ts;
    CHECK(uniform_tv_bound(ts.dec, 0.5, 1) ==
          doctest::Approx(std::sqrt(2.0) * 0.4 * 0.5).epsilon(1e-12));
    CHECK(uniform_tv_bound(ts.dec, 0.5, 0) ==
          doctest::Approx(0.5 / std::sqrt(0.5)).epsilon(1e-12));
    Vector pi(3);
    pi << 0.2, 0.3, 0.5;
    auto dec1 = spectral_decompose(rank_one_chain(pi));
    CHECK(uniform_tv_bound(dec1, 1.0, 1) < 1e-10);
}

TEST_CASE("f-gap bound is tight on the two-state chain") {
    TwoState ts;
    CHECK(f_gap_bound(ts.dec, ts.fs, 0.5, 2) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(f_gap_bound(ts.dec, ts.fs, 0.5, 2) ==
          doctest::Approx(worst_case_f_discrepancy(ts.chain, ts.f, 2)).epsilon(1e-10));
    auto constant = make_function(ts.chain, Vector::Constant(2, 0.3));
    auto fs0 = f_spectrum(ts.dec, constant);
    CHECK(f_gap_bound(ts.dec, fs0, 1.0, 1) == 0.0);
}

TEST_CASE("sharper bound limits: empty J and full J") {
    TwoState ts;
    auto empty = make_jsplit(ts.dec, ts.fs, ts.f, {});
    CHECK(empty.delta_star == 0.0);
    CHECK(empty.lambda_J == 0.0);
    CHECK(empty.lambda_minus_J == doctest::Approx(0.4).epsilon(1e-12));
    for (long long n : {0, 1, 3}) {
        CHECK(sharper_bound(ts.dec, ts.fs, empty, 0.7, 0.5, n) ==
              doctest::Approx(f_gap_bound(ts.dec, ts.fs, 0.5, n)).epsilon(1e-12));
    }

    auto full = make_jsplit(ts.dec, ts.fs, ts.f, ts.fs.indices);
    CHECK(full.delta_star == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(full.lambda_J == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(full.lambda_minus_J == 0.0);
    CHECK(sharper_bound(ts.dec, ts.fs, full, 0.5, 0.5, 2) ==
          doctest::Approx(0.08).epsilon(1e-10));
}

TEST_CASE("J must be inside J_f") {
    TwoState ts;
    CHECK_THROWS_AS(make_jsplit(ts.dec, ts.fs, ts.f, {3}), InvalidData);
}

TEST_CASE("oracle bound with full J and explicit start is exact") {
    TwoState ts;
    auto full = make_jsplit(ts.dec, ts.fs, ts.f, ts.fs.indices);
    CHECK(oracle_bound(ts.dec, ts.fs, full, ts.f, e_i(2, 0), 1) ==
          doctest::Approx(0.2).epsilon(1e-12));
    for (long long n = 1; n <= 40; ++n) {
        const double exact = f_discrepancy(ts.chain, ts.f, e_i(2, 0), n);
        CHECK(std::abs(oracle_bound(ts.dec, ts.fs, full, ts.f, e_i(2, 0), n) - exact) <
              1e-10);
    }
    auto empty = make_jsplit(ts.dec, ts.fs, ts.f, {});
    const double df0 = std::abs(e_i(2, 0).dot(ts.f.values) - ts.f.mu);
    for (long long n : {1, 2, 5}) {
        CHECK(oracle_bound(ts.dec, ts.fs, empty, ts.f, e_i(2, 0), n) ==
              doctest::Approx(f_gap_bound(ts.dec, ts.fs, df0, n)).epsilon(1e-12));
    }
}

TEST_CASE("soundness chain: exact <= oracle(worst) <= sharper on small zoo chains") {
    auto run_chain = [](const TransitionMatrix& chain, const FunctionOnChain& f) {
        auto dec = spectral_decompose(chain);
        auto fs = f_spectrum(dec, f);
        // natural bad set: top half of J_f by eigenvalue magnitude
        std::vector<int> sorted = fs.indices;
        std::sort(sorted.begin(), sorted.end(), [&](int a, int b) {
            return std::abs(dec.eigenvalues(a - 1)) > std::abs(dec.eigenvalues(b - 1));
        });
        sorted.resize(sorted.size() / 2);
        for (const auto& J : {std::vector<int>{}, sorted, fs.indices}) {
            auto split = make_jsplit(dec, fs, f, J);
            for (long long n = 1; n <= 100; ++n) {
                const double exact = worst_case_f_discrepancy(chain, f, n);
                const double oracle = oracle_bound_worst(dec, fs, split, f, n);
                const double sharper = sharper_bound(dec, fs, split, 1.0, 1.0, n);
                CHECK(exact <= oracle + 1e-10);
                CHECK(oracle <= sharper + 1e-10);
            }
        }
    };
    auto cycle = lazy_cycle(4);
    run_chain(cycle, cycle_periodic_function(cycle, 2));
    run_chain(cycle, random_function(cycle, 17));
    auto line = line_chain(4);
    run_chain(line, threshold_function(line, 0.2));
}

TEST_CASE("bound inversion") {
    TwoState ts;
    // tight f-gap bound: first n with 1 * 0.4^n * 0.5 <= 0.05 is n = 3
    auto curve = [&](long long n) { return f_gap_bound(ts.dec, ts.fs, 0.5, n); };
    CHECK(invert_bound_to_mixing_time(curve, 0.05).value() == 3);
    CHECK(invert_geometric_bound(0.5, 0.4, 0.05).value() == 3);
    // constant function: any delta crossed at n = 1
    CHECK(invert_geometric_bound(0.0, 0.0, 0.3).value() == 1);
    // non-decaying bound is reported as not attained
    auto flat = [](long long) { return 0.5; };
    CHECK_FALSE(invert_bound_to_mixing_time(flat, 0.1, 1000).has_value());
}

TEST_CASE("cycle closed-form bound dominates the exact mixing time") {
    for (int d : {4, 8}) {
        auto chain = lazy_cycle(d);
        for (int j : {1, d / 2, d}) {
            auto f = cycle_periodic_function(chain, j);
            for (double delta : {0.1, 0.01}) {
                const double bound = cycle_tf_trig_bound(d, j, delta);
                const auto exact = f_mixing_time(chain, f, delta, 200000);
                REQUIRE(exact.has_value());
                CHECK(static_cast<double>(exact.value()) <= bound);
            }
        }
    }
}

TEST_CASE("TV mixing lower bound") {
    CHECK(tv_mixing_lower_bound(0.5, 0.125) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(tv_mixing_lower_bound(1.0, 0.125) == 0.0);
    // lazy C_64: the gamma_star lower bound never exceeds the exact time
    auto chain = lazy_cycle(32);
    auto dec = spectral_decompose(chain);
    const double lb = tv_mixing_lower_bound(dec.gamma_star, 0.125);
    const auto exact = tv_mixing_time(chain, 0.125, 100000);
    REQUIRE(exact.has_value());
    CHECK(lb <= static_cast<double>(exact.value()));
}

}  // TEST_SUITE
