// Exact point counting: N(Omega,B), fiber counts M1(x;Y), weighted N_w(P).
#pragma once

#include <atomic>

#include "qbl/arith.hpp"
#include "qbl/expsums.hpp"
#include "qbl/geometry.hpp"

namespace qbl::enumc {

using arith::CoeffVector;
using arith::i64;

struct BiprojectivePoint {
    CoeffVector x, y;
    arith::cpp_int height;  // |x|^3 |y|^2
};

struct CountReport {
    i64 B = 0;
    long long canonical_count = 0;
    long long thin_excluded = 0;
    i64 split_boundary = 0;
    double predicted = 0.0;  // c B log B when a Peyre constant is supplied
    double ratio = 0.0;
    double elapsed_seconds = 0.0;
    int thread_count = 1;
};

enum class Split { automatic, y_side_only, x_side_only };

// Incremented on every count_points call; lets tests observe cache hits.
extern std::atomic<long long> invocation_count;

// Delta(x) is a perfect square (0 included).
bool thin_set_membership(const CoeffVector& x);

// M1(x;Y): primitive y, |y| <= Y, F(x;y) = 0 (raw signed count).
long long fiber_point_count(const CoeffVector& x, i64 Y);

// Canonical-pair count of {F = 0, Delta(x) not square, |x|^3 |y|^2 <= B}.
// split_boundary 0 means floor(B^{1/4}); other values must still satisfy the
// partition inequality and are used by the reparameterization test.
CountReport count_points(i64 B, Split split = Split::automatic,
                         double c_peyre = 0.0, i64 split_boundary = 0);

// Reference implementation: direct double enumeration, for B <= ~500.
long long count_points_naive(i64 B);

// N_w(P) = sum over integer y with F(y) = 0, |y| <= (1+eta)P, of w(y/P).
double weighted_count(const exps::DiagonalForm& F, const geom::SmoothWeight& w,
                      double P);

}  // namespace qbl::enumc
