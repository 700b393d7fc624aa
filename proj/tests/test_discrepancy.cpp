#include <doctest.h>

#include <cmath>

#include "fnmix/discrepancy.hpp"
#include "fnmix/zoo.hpp"

using namespace fnmix;

namespace {

TransitionMatrix two_state_chain() {
    Matrix P(2, 2);
    P << 0.7, 0.3, 0.3, 0.7;
    return validate_chain(P);
}

Vector e_i(int d, int i) {
    Vector v = Vector::Zero(d);
    v(i) = 1.0;
    return v;
}

}  // namespace

TEST_SUITE("discrepancy") {

TEST_CASE("constant functions have zero discrepancy at every step") {
    auto chain = lazy_cycle(3);
    auto f = make_function(chain, Vector::Constant(6, 0.3));
    for (long long n : {0, 1, 5}) {
        CHECK(f_discrepancy(chain, f, e_i(6, 0), n) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(worst_case_f_discrepancy(chain, f, n) < 1e-14);
    }
}

TEST_CASE("two-state chain closed form 0.5 * 0.4^n") {
    auto chain = two_state_chain();
    Vector v(2);
    v << 0.0, 1.0;
    auto f = make_function(chain, v);
    CHECK(f_discrepancy(chain, f, e_i(2, 0), 3) == doctest::Approx(0.032).epsilon(1e-12));
    CHECK(worst_case_f_discrepancy(chain, f, 1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(tv_discrepancy(chain, e_i(2, 0), 1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(worst_case_tv(chain, 1) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("stationary start has zero TV discrepancy") {
    auto chain = two_state_chain();
    CHECK(tv_discrepancy(chain, chain.pi(), 7) < 1e-14);
}

TEST_CASE("rank-one chain reaches equilibrium in one step") {
    Vector pi(3);
    pi << 0.2, 0.3, 0.5;
    auto chain = rank_one_chain(pi);
    auto f = make_function(chain, (Vector(3) << 0.1, 0.9, 0.4).finished());
    CHECK(worst_case_f_discrepancy(chain, f, 1) < 1e-14);
    CHECK(worst_case_tv(chain, 1) < 1e-14);
    CHECK(tv_mixing_time(chain, 0.1).value() == 1);
}

TEST_CASE("parity mixes in a single step on the lazy cycle") {
    auto chain = lazy_cycle(4);
    auto parity = cycle_parity(chain);
    CHECK(worst_case_f_discrepancy(chain, parity, 1) < 1e-14);
    for (double delta : {0.1, 0.01, 1e-6}) {
        CHECK(f_mixing_time(chain, parity, delta).value() == 1);
    }
}

TEST_CASE("mixing times of the two-state chain") {
    auto chain = two_state_chain();
    Vector v(2);
    v << 0.0, 1.0;
    auto f = make_function(chain, v);
    CHECK(f_mixing_time(chain, f, 0.05).value() == 3);
    CHECK(tv_mixing_time(chain, 0.05).value() == 3);
    auto constant = make_function(chain, Vector::Constant(2, 0.4));
    CHECK(f_mixing_time(chain, constant, 0.5).value() == 1);
}

TEST_CASE("NotAttained is reported as an empty result") {
    auto chain = two_state_chain();
    Vector v(2);
    v << 0.0, 1.0;
    auto f = make_function(chain, v);
    CHECK_FALSE(f_mixing_time(chain, f, 1e-9, 5).has_value());
}

TEST_CASE("mixing time is nonincreasing in delta") {
    auto chain = lazy_cycle(8);
    auto f = cycle_periodic_function(chain, 2);
    long long prev = 1000000;
    for (double delta : {0.01, 0.02, 0.05, 0.1, 0.2}) {
        const long long t = f_mixing_time(chain, f, delta, 100000).value();
        CHECK(t <= prev);
        prev = t;
    }
}

TEST_CASE("curves match point evaluations and TV dominates f") {
    auto chain = lazy_cycle(4);
    auto f = cycle_periodic_function(chain, 1);
    const long long n_max = 30;
    auto fc = f_discrepancy_curve(chain, f, n_max);
    auto tc = tv_discrepancy_curve(chain, n_max);
    for (long long n = 1; n <= n_max; ++n) {
        CHECK(fc.at(n) == doctest::Approx(worst_case_f_discrepancy(chain, f, n)).epsilon(1e-12));
        CHECK(fc.at(n) <= tc.at(n) + 1e-12);
    }
}

TEST_CASE("brute-force oracle: mat-vec equals explicitly formed P^n for d <= 12") {
    auto chain = lazy_cycle(5);  // 10 states
    auto f = cycle_periodic_function(chain, 3);
    Matrix Pn = Matrix::Identity(10, 10);
    for (long long n = 1; n <= 40; ++n) {
        Pn = Pn * chain.P();
        double brute = 0.0;
        for (int i = 0; i < 10; ++i) {
            brute = std::max(brute, std::abs(Pn.row(i).dot(f.values) - f.mu));
        }
        CHECK(worst_case_f_discrepancy(chain, f, n) == doctest::Approx(brute).epsilon(1e-10));
    }
}

TEST_CASE("T_f never exceeds the TV mixing time") {
    auto chain = lazy_cycle(4);
    for (int j : {1, 2, 4}) {
        auto f = cycle_periodic_function(chain, j);
        for (double delta : {0.1, 0.02}) {
            const auto tf = f_mixing_time(chain, f, delta, 100000);
            const auto ttv = tv_mixing_time(chain, delta, 100000);
            REQUIRE(tf.has_value());
            REQUIRE(ttv.has_value());
            CHECK(tf.value() <= ttv.value());
        }
    }
}

}  // TEST_SUITE
