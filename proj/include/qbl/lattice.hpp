// Fiber lattice {x : sum y_i^2 x_i = 0}: basis, sup-norm minima, box counts.
#pragma once

#include <array>
#include <optional>

#include "qbl/arith.hpp"

namespace qbl::lat {

using arith::CoeffVector;
using arith::cpp_int;
using arith::i64;

enum class Filter { none, nonsquare, nonsquare_primitive, primitive };

struct FiberLattice {
    std::array<i64, 4> coefficient_form{};            // y_i^2
    std::array<std::array<i64, 4>, 3> basis{};
    cpp_int det_squared;                              // sum y_i^4 = Gram det
    std::optional<std::array<i64, 3>> minima;         // sup-norm lambda_1..3
    std::optional<std::array<i64, 4>> shortest;
};

// Integer kernel basis of (y_1^2,...,y_4^2) via column elimination.
FiberLattice fiber_lattice_basis(const CoeffVector& y);

// Exact sup-norm successive minima; fills L.minima and L.shortest.
std::array<i64, 3> successive_minima_sup(FiberLattice& L);

// Exact count of lattice points with |x|_sup <= floor(R); filters give the
// nonsquare-discriminant (M5) and additionally-primitive (M6) variants.
// Discriminant 0 counts as a square.
long long count_fiber_box(const FiberLattice& L, double R, Filter filter);

// Serial 4-loop reference used for oracle tests.
long long count_fiber_box_naive(const CoeffVector& y, double R, Filter filter);

}  // namespace qbl::lat
