#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbl/geometry.hpp"
#include "qbl/verify.hpp"

using namespace qbl;
using arith::Rat;

TEST_CASE("rho_infinity exact values") {
    CHECK(geom::rho_infinity(arith::make_coeff_vector(1, 0, 0, 0)).rational_part == Rat(8));
    CHECK(geom::rho_infinity(arith::make_coeff_vector(1, 1, 0, 0)).rational_part == Rat(8));
    CHECK(geom::rho_infinity(arith::make_coeff_vector(1, 1, 1, 1)).rational_part ==
          Rat(16, 3));
    CHECK(geom::rho_infinity(arith::make_coeff_vector(2, 0, 0, 0)).rational_part == Rat(2));
    CHECK_THROWS(geom::rho_infinity(arith::make_coeff_vector(0, 0, 0, 0)));
}

TEST_CASE("rho float path matches exact path") {
    std::array<std::array<double, 4>, 4> samples{{{1, 2, 3, 4},
                                                  {1, 1, 5, 0},
                                                  {2, 3, 0, 0},
                                                  {1, 4, 4, 1}}};
    for (const auto& s : samples) {
        auto y = arith::make_coeff_vector(static_cast<arith::i64>(s[0]),
                                          static_cast<arith::i64>(s[1]),
                                          static_cast<arith::i64>(s[2]),
                                          static_cast<arith::i64>(s[3]));
        CHECK(geom::rho_infinity(s) ==
              doctest::Approx(geom::rho_infinity(y).to_double()).epsilon(1e-12));
    }
}

TEST_CASE("rho numeric oracle") {
    CHECK(ver::rho_infinity_numeric({1, 1, 1, 1}) == doctest::Approx(16.0 / 3).epsilon(1e-7));
    CHECK(ver::rho_infinity_numeric({1, 2, 0, 0}) ==
          doctest::Approx(geom::rho_infinity(std::array<double, 4>{1, 2, 0, 0}))
              .epsilon(1e-7));
}

TEST_CASE("slice volume carries the radicand exactly") {
    geom::ExactDensity v = geom::slice_volume(arith::make_coeff_vector(1, 0, 0, 0));
    CHECK(v.rational_part == Rat(8));
    CHECK(v.radicand == 1);
    geom::ExactDensity v2 = geom::slice_volume(arith::make_coeff_vector(1, 1, 1, 1));
    CHECK(v2.rational_part * v2.rational_part * v2.radicand == Rat(1024, 9));
    CHECK(v2.to_double() == doctest::Approx(32.0 / 3.0));
}

TEST_CASE("smooth weights") {
    geom::SmoothWeight w0{geom::SmoothWeight::indicator_w0, 0.0};
    CHECK(w0.moment() == doctest::Approx(1.0));
    CHECK(w0.profile(0.5) == 1.0);
    CHECK(w0.profile(1.5) == 0.0);
    geom::SmoothWeight w1{geom::SmoothWeight::inner_w1, 0.05};
    CHECK(w1.profile(0.01) == 0.0);
    CHECK(w1.profile(0.5) == 1.0);
    CHECK(w1.profile(1.2) == 0.0);
    geom::SmoothWeight w2{geom::SmoothWeight::outer_w2, 0.05};
    CHECK(w2.profile(0.5) == 1.0);
    CHECK(w2.profile(1.02) > 0.0);
    CHECK(w2.profile(1.2) == 0.0);
    // w1 <= w0 <= w2 pointwise forces the same ordering of moments.
    CHECK(w1.moment() < 1.0);
    CHECK(w2.moment() > 1.0);
}

TEST_CASE("sigma_infinity routes agree") {
    bool definite = false;
    CHECK(geom::sigma_infinity_fiber(arith::make_coeff_vector(1, 1, 1, 1), 1e-4,
                                     &definite) == 0.0);
    CHECK(definite);
    std::array<std::array<double, 4>, 3> xs{{{1, 1, 1, -1}, {1, 2, 3, -5}, {2, -3, 5, -7}}};
    for (const auto& xd : xs) {
        auto x = arith::make_coeff_vector(static_cast<arith::i64>(xd[0]),
                                          static_cast<arith::i64>(xd[1]),
                                          static_cast<arith::i64>(xd[2]),
                                          static_cast<arith::i64>(xd[3]));
        double fresnel = geom::sigma_infinity_fiber(x, 1e-6);
        double conv = geom::sigma_exact(xd);
        CHECK(fresnel == doctest::Approx(conv).epsilon(5e-5));
        CHECK(conv > 0.0);
    }
    // sigma(x) = sigma(-x).
    CHECK(geom::sigma_exact({1, 2, 3, -5}) ==
          doctest::Approx(geom::sigma_exact({-1, -2, -3, 5})).epsilon(1e-10));
}

TEST_CASE("tau via rho at loose tolerance") {
    geom::TauEstimate t = geom::tau_infinity(geom::TauMethod::via_rho, 1e-2);
    // rho(t,1) lies in [16/3, 8] on the cube, so tau = 32 int rho is in
    // [512/3, 256].
    CHECK(t.value > 512.0 / 3 - 1e-6);
    CHECK(t.value < 256.0 + 1e-6);
    CHECK(t.abs_error_bound <= 1e-2);
    CHECK_THROWS(geom::tau_infinity(geom::TauMethod::via_rho, 0.0));
}
