#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbl/enumerate.hpp"

using namespace qbl;
using arith::i64;

TEST_CASE("thin set membership") {
    CHECK(!enumc::thin_set_membership(arith::make_coeff_vector(1, 1, 1, -1)));
    CHECK(enumc::thin_set_membership(arith::make_coeff_vector(1, -1, 2, -2)));  // 4
    CHECK(enumc::thin_set_membership(arith::make_coeff_vector(1, 1, 1, 1)));    // 1
    CHECK(enumc::thin_set_membership(arith::make_coeff_vector(1, -1, 1, -1)));  // 1
    CHECK(!enumc::thin_set_membership(arith::make_coeff_vector(1, 2, 3, -5)));
    // Negative discriminant is never a square, even when |Delta| is one.
    CHECK(!enumc::thin_set_membership(arith::make_coeff_vector(1, 1, 1, -4)));
}

TEST_CASE("fiber point counts over fixed x") {
    auto x = arith::make_coeff_vector(1, 1, 1, -1);
    CHECK(enumc::fiber_point_count(x, 1) == 12);
    // Counts grow like a quadratic in Y for an isotropic fiber.
    long long c10 = enumc::fiber_point_count(x, 10);
    long long c20 = enumc::fiber_point_count(x, 20);
    CHECK(c20 > 2 * c10);
    CHECK(c20 < 8 * c10);
    CHECK_THROWS(enumc::fiber_point_count(arith::make_coeff_vector(1, 0, 1, -1), 5));
}

TEST_CASE("anisotropic fiber has only the trivial solutions ruled out") {
    // x = (1,1,1,1) is positive definite: no nonzero y.
    CHECK(enumc::fiber_point_count(arith::make_coeff_vector(1, 1, 1, 1), 30) == 0);
}

TEST_CASE("count_points pinned and against naive") {
    CHECK(enumc::count_points(1).canonical_count == 24);
    for (i64 B : {2, 10, 50, 130})
        CHECK(enumc::count_points(B).canonical_count == enumc::count_points_naive(B));
    CHECK_THROWS(enumc::count_points(0));
}

TEST_CASE("split strategies partition the count") {
    for (i64 B : {500, 2000}) {
        auto both = enumc::count_points(B);
        auto ys = enumc::count_points(B, enumc::Split::y_side_only);
        auto xs = enumc::count_points(B, enumc::Split::x_side_only);
        CHECK(ys.canonical_count + xs.canonical_count == both.canonical_count);
        CHECK(ys.thin_excluded + xs.thin_excluded == both.thin_excluded);
    }
}

TEST_CASE("count report metadata") {
    long long before = enumc::invocation_count.load();
    auto rep = enumc::count_points(100, enumc::Split::automatic, 2.0);
    CHECK(enumc::invocation_count.load() == before + 1);
    CHECK(rep.B == 100);
    CHECK(rep.split_boundary == 3);  // floor(100^{1/4})
    CHECK(rep.predicted == doctest::Approx(2.0 * 100 * std::log(100.0)));
    CHECK(rep.ratio == doctest::Approx(rep.canonical_count / rep.predicted));
}

TEST_CASE("weighted count with the sharp cutoff matches a direct scan") {
    auto F = exps::make_form({1, 1, 1, -1});
    geom::SmoothWeight w0{geom::SmoothWeight::indicator_w0, 0.0};
    double P = 25.0;
    // Direct scan of |y| <= P with indicator weight.
    long long direct = 0;
    int R = static_cast<int>(P);
    for (int a = -R; a <= R; ++a)
        for (int b = -R; b <= R; ++b)
            for (int c = -R; c <= R; ++c)
                for (int d = -R; d <= R; ++d)
                    if (a * a + b * b + c * c - d * d == 0 &&
                        (a | b | c | d) != 0)
                        ++direct;
    // weighted_count includes y = 0, which the scan above skips.
    CHECK(enumc::weighted_count(F, w0, P) ==
          doctest::Approx(static_cast<double>(direct) + 1.0));
}
