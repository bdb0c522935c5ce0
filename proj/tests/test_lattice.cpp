#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qbl/lattice.hpp"

using namespace qbl;
using arith::i64;

TEST_CASE("basis spans the kernel with the right Gram determinant") {
    auto y = arith::make_coeff_vector(1, 2, 0, 1);
    lat::FiberLattice L = lat::fiber_lattice_basis(y);
    CHECK(L.det_squared == 18);  // 1 + 16 + 0 + 1
    for (const auto& b : L.basis) {
        arith::cpp_int s = 0;
        for (int i = 0; i < 4; ++i)
            s += arith::cpp_int(y.entries[i]) * y.entries[i] * b[i];
        CHECK(s == 0);
    }
    CHECK_THROWS(lat::fiber_lattice_basis(arith::make_coeff_vector(0, 0, 0, 0)));
    CHECK_THROWS(lat::fiber_lattice_basis(arith::make_coeff_vector(2, 2, 2, 2)));
}

TEST_CASE("successive minima on a known lattice") {
    auto y = arith::make_coeff_vector(1, 1, 1, 1);
    lat::FiberLattice L = lat::fiber_lattice_basis(y);
    auto mins = lat::successive_minima_sup(L);
    // x1+x2+x3+x4 = 0: shortest sup-norm vectors are permutations of
    // (1,-1,0,0); three independent ones all have sup norm 1.
    CHECK(mins == std::array<i64, 3>{1, 1, 1});
    REQUIRE(L.shortest.has_value());
    arith::cpp_int s = 0;
    for (int i = 0; i < 4; ++i) s += (*L.shortest)[i];
    CHECK(s == 0);
}

TEST_CASE("box counts: pinned values") {
    auto L1 = lat::fiber_lattice_basis(arith::make_coeff_vector(1, 1, 1, 1));
    CHECK(lat::count_fiber_box(L1, 1.0, lat::Filter::none) == 19);
    CHECK(lat::count_fiber_box(L1, 1.0, lat::Filter::nonsquare) == 0);
    CHECK(lat::count_fiber_box(L1, 1.5, lat::Filter::none) == 19);
    auto Le = lat::fiber_lattice_basis(arith::make_coeff_vector(1, 0, 0, 0));
    // x1 = 0: the box |x| <= 2 holds 5^3 lattice points.
    CHECK(lat::count_fiber_box(Le, 2.0, lat::Filter::none) == 125);
}

TEST_CASE("box counts match the serial reference") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<i64> e(-9, 9);
    int done = 0;
    while (done < 25) {
        std::array<i64, 4> yv{e(rng), e(rng), e(rng), e(rng)};
        if (arith::gcd4(yv[0], yv[1], yv[2], yv[3]) != 1) continue;
        auto y = arith::make_coeff_vector(yv);
        auto L = lat::fiber_lattice_basis(y);
        double R = 1.0 + static_cast<double>(rng() % 9);
        for (auto f : {lat::Filter::none, lat::Filter::nonsquare,
                       lat::Filter::nonsquare_primitive, lat::Filter::primitive})
            CHECK(lat::count_fiber_box(L, R, f) == lat::count_fiber_box_naive(y, R, f));
        ++done;
    }
}

TEST_CASE("filters are nested") {
    auto y = arith::make_coeff_vector(1, 2, 3, 5);
    auto L = lat::fiber_lattice_basis(y);
    long long all = lat::count_fiber_box(L, 8.0, lat::Filter::none);
    long long ns = lat::count_fiber_box(L, 8.0, lat::Filter::nonsquare);
    long long pr = lat::count_fiber_box(L, 8.0, lat::Filter::primitive);
    long long nsp = lat::count_fiber_box(L, 8.0, lat::Filter::nonsquare_primitive);
    CHECK(ns <= all);
    CHECK(pr <= all);
    CHECK(nsp <= ns);
    CHECK(nsp <= pr);
}
