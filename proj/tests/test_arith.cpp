#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qbl/arith.hpp"

using namespace qbl::arith;

TEST_CASE("isqrt and squares") {
    CHECK(isqrt(i64{0}) == 0);
    CHECK(isqrt(i64{15}) == 3);
    CHECK(isqrt(i64{16}) == 4);
    CHECK(isqrt(i64{999999999999999999LL}) == 999999999LL);
    for (i64 n = 0; n < 5000; ++n) {
        i64 r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
        CHECK(is_square(n) == (r * r == n));
        CHECK(is_square_fast(n) == is_square(n));
    }
    CHECK_THROWS(isqrt(i64{-1}));
}

TEST_CASE("jacobi symbol") {
    CHECK(jacobi_symbol(2, 15) == 1);
    CHECK(jacobi_symbol(7, 15) == -1);
    CHECK(jacobi_symbol(5, 15) == 0);
    CHECK(jacobi_symbol(-1, 3) == -1);
    CHECK(jacobi_symbol(-1, 5) == 1);
    // Euler criterion against an explicit square list mod small primes.
    for (i64 p : {3, 5, 7, 11, 13, 17}) {
        for (i64 a = 1; a < p; ++a) {
            bool qr = false;
            for (i64 t = 1; t < p; ++t)
                if (t * t % p == a) qr = true;
            CHECK(jacobi_symbol(a, p) == (qr ? 1 : -1));
        }
    }
}

TEST_CASE("mobius, phi, ramanujan") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(ramanujan_sum(1, 7) == 1);
    CHECK(ramanujan_sum(5, 1) == -1);   // c_q(1) = mu(q)
    CHECK(ramanujan_sum(9, 0) == 6);    // c_q(0) = phi(q)
    CHECK(ramanujan_sum(9, 3) == -3);
    // c_q(N) = sum over d | gcd(q,N) of d mu(q/d), with gcd(q,0) = q.
    for (i64 q = 1; q <= 40; ++q)
        for (i64 N = 0; N <= 40; ++N) {
            i64 g = (N == 0) ? q : gcd(q, N);
            i64 expect = 0;
            for (i64 d = 1; d <= g; ++d)
                if (g % d == 0) expect += d * mobius(q / d);
            CHECK(ramanujan_sum(q, N) == expect);
        }
}

TEST_CASE("factorization and primes") {
    auto f = factor(360);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<i64, int>{2, 3});
    CHECK(f[1] == std::pair<i64, int>{3, 2});
    CHECK(f[2] == std::pair<i64, int>{5, 1});
    auto ps = primes_up_to(100);
    CHECK(ps.size() == 25);
    CHECK(ps.front() == 2);
    CHECK(ps.back() == 97);
}

TEST_CASE("modular inverse") {
    for (i64 m : {3, 7, 16, 99}) {
        for (i64 a = 1; a < m; ++a) {
            if (gcd(a, m) != 1) continue;
            CHECK(a * inv_mod(a, m) % m == 1);
        }
    }
    CHECK_THROWS(inv_mod(6, 9));
}

TEST_CASE("coefficient vectors") {
    CoeffVector x = make_coeff_vector(2, -4, 6, 8);
    CHECK(x.gcd == 2);
    CHECK(x.delta == -384);
    CHECK(x.all_nonzero());
    CHECK(!x.primitive());
    CHECK(x.sup_norm() == 8);
    CoeffVector p = make_coeff_vector(1, 1, 1, -1);
    CHECK(p.primitive());
    CHECK(p.delta == -1);
    CoeffVector z = make_coeff_vector(0, 3, 0, 5);
    CHECK(z.gcd == 1);
    CHECK(!z.all_nonzero());
}

TEST_CASE("rationals are exact") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(to_double(Rat(7, 9)) == doctest::Approx(7.0 / 9.0));
}
