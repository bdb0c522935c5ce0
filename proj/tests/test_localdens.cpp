#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbl/localdens.hpp"

using namespace qbl;
using arith::i64;
using arith::Rat;

TEST_CASE("local densities for x=(1,1,1,-1) at p=3") {
    auto x = arith::make_coeff_vector(1, 1, 1, -1);
    CHECK(loc::local_density_fiber(x, 3, 1) == Rat(7, 9));
    CHECK(loc::local_density_fiber(x, 3, 2) == Rat(23, 27));
    double d = arith::to_double(loc::local_density_fiber(x, 3, 6));
    CHECK(d == doctest::Approx(5.0 / 6.0).epsilon(1e-3));
    CHECK(loc::euler_factor_good(x, 3) == Rat(5, 6));
}

TEST_CASE("good Euler factor formula") {
    auto x = arith::make_coeff_vector(1, 1, 1, -1);  // Delta = -1
    // chi(p) = (-1|p): +1 for p=5 (5 mod 4 = 1), -1 for p=7.
    CHECK(loc::euler_factor_good(x, 5) == Rat(6, 5));
    CHECK(loc::euler_factor_good(x, 7) == Rat(25, 28));
    CHECK_THROWS(loc::euler_factor_good(x, 2));
}

TEST_CASE("lifted densities converge to the good closed form") {
    for (auto xv : {std::array<i64, 4>{1, 2, 3, -5}, std::array<i64, 4>{2, 3, -5, 7}}) {
        auto x = arith::make_coeff_vector(xv);
        for (i64 p : {3, 7, 11}) {
            if ((2 * x.delta) % p == 0) continue;
            double lifted = arith::to_double(loc::local_density_fiber(x, p, 6));
            double closed = arith::to_double(loc::euler_factor_good(x, p));
            CHECK(lifted == doctest::Approx(closed).epsilon(1e-4));
        }
    }
}

TEST_CASE("n_full") {
    CHECK(loc::n_full(3, 1, loc::NMethod::factorized) == 2241);
    CHECK(loc::n_full(3, 1, loc::NMethod::brute) == 2241);
    for (auto [p, t] : std::vector<std::pair<i64, int>>{{2, 1}, {2, 2}, {2, 3}, {3, 2},
                                                        {5, 1}, {7, 1}})
        CHECK(loc::n_full(p, t, loc::NMethod::factorized) ==
              loc::n_full(p, t, loc::NMethod::brute));
    CHECK(loc::n_full(3, 2, loc::NMethod::factorized) == 5255361);
    CHECK_THROWS(loc::n_full(11, 1, loc::NMethod::brute));
}

TEST_CASE("singular series") {
    auto x = arith::make_coeff_vector(1, 1, 1, -1);
    loc::EulerFactorization s = loc::singular_series_fiber(x, 2000);
    CHECK(s.value > 0.0);
    CHECK(s.truncation_prime_bound == 2000);
    // p=2 is the only bad prime for Delta=-1.
    REQUIRE(s.prime_factors.size() == 1);
    CHECK(s.prime_factors[0].p == 2);
    // Enlarging the truncation moves the value by roughly the tail estimate.
    loc::EulerFactorization s2 = loc::singular_series_fiber(x, 10000);
    CHECK(std::abs(s.value - s2.value) <= 2.0 * (s.tail_estimate + s2.tail_estimate));
    CHECK_THROWS(loc::singular_series_fiber(arith::make_coeff_vector(1, 1, 1, 1), 100));
    CHECK_THROWS(loc::singular_series_fiber(arith::make_coeff_vector(1, -1, 2, -2), 100));
}

TEST_CASE("main term M1 exact values") {
    loc::MainTermEstimate m = loc::main_term_M1(1, 1.0);
    // Y = 1: primitive y with |y| <= 1, weights 2^{#nonzero} 24/prod(mult!).
    CHECK(m.exact_sum == Rat(1600, 3));
    CHECK(m.empirical_sum == doctest::Approx(arith::to_double(m.exact_sum)));
    loc::MainTermEstimate m2 = loc::main_term_M1(10000, 200.0);
    CHECK(m2.empirical_sum > m.empirical_sum);
    CHECK(m2.predicted_slope == doctest::Approx(200.0 / (2.0 * loc::zeta4())));
}

TEST_CASE("main term M2") {
    // Window collapses for small B: ceil(B^{2 eta}) exceeds floor(B^{1/6}).
    loc::MainTermEstimate empty = loc::main_term_M2(10, 0.009, 200, 1e-2, 1.0);
    CHECK(empty.empty_window);
    CHECK(empty.empirical_sum == 0.0);
    double tau = 247.5;
    loc::MainTermEstimate a = loc::main_term_M2(1000, 0.005, 500, 1e-2, tau);
    loc::MainTermEstimate b = loc::main_term_M2(100000, 0.005, 500, 1e-2, tau);
    CHECK(!a.empty_window);
    CHECK(b.empirical_sum > a.empirical_sum);
    CHECK(a.predicted_slope ==
          doctest::Approx(loc::zeta2() * tau / (2.0 * loc::zeta3() * loc::zeta4())));
    // The empirical slope approaches the predicted one from below; at these
    // tiny windows (|x| <= B^{1/6} <= 6) it is still well short of it.
    double slope = (b.empirical_sum - a.empirical_sum) / std::log(100.0);
    CHECK(slope > 0.0);
    CHECK(slope < 1.2 * a.predicted_slope);
}

TEST_CASE("zeta values") {
    CHECK(loc::zeta2() == doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-14));
    CHECK(loc::zeta4() == doctest::Approx(std::pow(M_PI, 4) / 90.0).epsilon(1e-14));
    CHECK(loc::zeta3() == doctest::Approx(1.2020569031595942).epsilon(1e-14));
}

TEST_CASE("peyre constant wiring") {
    geom::TauEstimate t;
    t.value = 216.0;
    loc::PeyreResult r = loc::peyre_constant(t);
    CHECK(r.c == doctest::Approx(216.0 / (4.0 * loc::zeta3() * loc::zeta4())));
    CHECK(r.schindler_ok);
    CHECK(r.schindler_target == doctest::Approx(15.0 / (M_PI * M_PI)).epsilon(1e-12));
}
