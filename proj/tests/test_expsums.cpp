#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbl/expsums.hpp"

using namespace qbl;
using arith::i64;

namespace {
bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-8) {
    return std::abs(a - b) <= tol * std::max(1.0, std::abs(a));
}
}  // namespace

TEST_CASE("gauss sums: closed form vs direct") {
    for (i64 q = 3; q <= 45; q += 2)
        for (i64 b : {i64{1}, i64{2}, q - 1})
            for (i64 c = 0; c < std::min<i64>(q, 6); ++c) {
                if (arith::gcd(b, q) != 1) continue;
                auto d = exps::gauss_sum(b, c, q, exps::GaussMethod::direct).value;
                auto e = exps::gauss_sum(b, c, q, exps::GaussMethod::closed).value;
                CHECK(close(d, e));
            }
    // |G(b,0;q)| = sqrt(q) for odd q, gcd(b,q)=1.
    for (i64 q : {3, 5, 7, 9, 11, 25})
        CHECK(std::abs(exps::gauss_sum(1, 0, q, exps::GaussMethod::closed).value) ==
              doctest::Approx(std::sqrt(static_cast<double>(q))));
    CHECK_THROWS(exps::gauss_sum(2, 0, 4, exps::GaussMethod::closed));
    CHECK_THROWS(exps::gauss_sum(3, 0, 9, exps::GaussMethod::closed));
}

TEST_CASE("S_q: direct vs factored, multiplicativity") {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<i64> coeff(-6, 6), cv(-8, 8), qd(1, 80);
    for (int i = 0; i < 25; ++i) {
        std::array<i64, 4> A{};
        for (auto& a : A)
            do a = coeff(rng); while (a == 0);
        exps::DiagonalForm F = exps::make_form(A);
        std::array<i64, 4> c{cv(rng), cv(rng), cv(rng), cv(rng)};
        i64 q = qd(rng);
        auto d = exps::s_q(F, c, q, exps::SqMethod::direct).value;
        auto f = exps::s_q(F, c, q, exps::SqMethod::factored).value;
        CHECK(std::llround(d.real()) == std::llround(f.real()));
        CHECK(std::abs(d.imag()) < 1e-6 * std::max(1.0, std::abs(d)));
        auto d6 = exps::s_q(F, c, 6, exps::SqMethod::direct).value;
        auto d2 = exps::s_q(F, c, 2, exps::SqMethod::direct).value;
        auto d3 = exps::s_q(F, c, 3, exps::SqMethod::direct).value;
        CHECK(close(d6, d2 * d3, 1e-7));
    }
    CHECK(exps::s_q(exps::make_form({1, 1, 1, 1}), {0, 0, 0, 0}, 1,
                    exps::SqMethod::factored)
              .value.real() == doctest::Approx(1.0));
}

TEST_CASE("S_q vanishing at bad primes with zero dual argument") {
    for (i64 p : {3, 5, 7}) {
        exps::DiagonalForm F = exps::make_form({1, 1, 1, p});
        auto f = exps::s_q(F, {0, 0, 0, 0}, p, exps::SqMethod::factored).value;
        CHECK(f == std::complex<double>(0.0, 0.0));
        auto d = exps::s_q(F, {0, 0, 0, 0}, p, exps::SqMethod::direct).value;
        CHECK(std::abs(d) < 1e-6 * p * p * p);
    }
}

TEST_CASE("psi_q") {
    for (i64 q = 2; q <= 6; ++q)
        CHECK(exps::psi_q(q, exps::PsiMethod::closed) ==
              exps::psi_q(q, exps::PsiMethod::brute));
    CHECK(exps::psi_q(1, exps::PsiMethod::closed) == 1);
    CHECK(exps::psi_q(4, exps::PsiMethod::closed) == 7680);
    CHECK(exps::psi_q(9, exps::PsiMethod::closed) == 3149280);
    for (i64 q = 2; q <= 60; ++q)
        if (!arith::is_square(q)) CHECK(exps::psi_q(q, exps::PsiMethod::closed) == 0);
    CHECK_THROWS(exps::psi_q(9, exps::PsiMethod::brute));
}

TEST_CASE("dual form evaluation") {
    exps::DiagonalForm F = exps::make_form({1, 2, 3, -5});
    CHECK(F.disc == -30);
    CHECK(F.norm == 5);
    CHECK(F.disc_bad == 1);
    CHECK(exps::dual_form(F, {0, 0, 0, 0}) == 0);
    // F*(c) = sum_i (Delta/A_i) c_i^2 = -30 + (-15)*4 = -90 for c=(1,2,0,0).
    CHECK(exps::dual_form(F, {1, 2, 0, 0}) == -90);
    CHECK_THROWS(exps::make_form({1, 0, 1, 1}));
}
