// Archimedean densities: rho_infinity, V(y), sigma_infinity, tau_infinity.
#pragma once

#include <array>
#include <string>

#include "qbl/arith.hpp"

namespace qbl::geom {

using arith::CoeffVector;
using arith::Rat;
using arith::cpp_int;

// rational_part * sqrt(radicand), radicand squarefree.
struct ExactDensity {
    Rat rational_part;
    cpp_int radicand = 1;

    double to_double() const;
    bool operator==(const ExactDensity&) const = default;
};

// rho_infinity(y) = 16 * density at 0 of sum a_j U_j, U_j ~ U[-1,1], a_j = y_j^2
// over the nonzero coordinates; single-coordinate case is 8/a_1.
ExactDensity rho_infinity(const CoeffVector& y);
double rho_infinity(const std::array<double, 4>& y);

// V(y) = rho_infinity(y) * sqrt(y_1^4 + ... + y_4^4).
ExactDensity slice_volume(const CoeffVector& y);

struct SmoothWeight {
    enum Kind { indicator_w0, inner_w1, outer_w2 };
    Kind kind = indicator_w0;
    double eta = 0.01;

    double profile(double s) const;                 // radial profile W(|u|_sup)
    double eval(const std::array<double, 4>& u) const;
    double moment() const;                          // 2 * int_0^inf s W(s) ds
};

// Numerical singular integral over theta, Fresnel route. Definite forms give
// exactly 0 and set *definite if provided.
double sigma_infinity_fiber(const CoeffVector& x, double tol, bool* definite = nullptr);

// Exact-convolution route: sigma as the value at 0 of the 4-fold convolution
// of the pushforward densities of x_i u_i^2. Fast enough to serve as the
// tau_infinity(via_sigma) integrand. grading controls panel refinement toward
// singular endpoints.
double sigma_exact(const std::array<double, 4>& x, int grading = 14);

double sigma_infinity_weighted(const SmoothWeight& w, const CoeffVector& x, double tol);

enum class TauMethod { via_rho, via_sigma };

struct TauEstimate {
    double value = 0.0;
    TauMethod method = TauMethod::via_rho;
    double abs_error_bound = 0.0;
    long long sample_budget = 0;
};

TauEstimate tau_infinity(TauMethod method, double tol);

}  // namespace qbl::geom
