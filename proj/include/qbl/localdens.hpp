// p-adic densities, singular series, Euler products, main terms, Peyre constant.
#pragma once

#include <vector>

#include "qbl/arith.hpp"
#include "qbl/geometry.hpp"

namespace qbl::loc {

using arith::CoeffVector;
using arith::cpp_int;
using arith::i64;
using arith::Rat;

double zeta2();
double zeta3();
double zeta4();

// p^{-3r} #{y mod p^r : sum x_i y_i^2 = 0}, exact, by Hensel-style recursion.
Rat local_density_fiber(const CoeffVector& x, i64 p, int r);

// (1 - chi(p) p^{-2}) / (1 - chi(p) p^{-1}), chi(p) = (Delta(x) | p); p good.
Rat euler_factor_good(const CoeffVector& x, i64 p);

struct EulerEntry {
    enum Method { good_closed, lifted, series_partial };
    i64 p = 0;
    double factor = 1.0;
    Method method = good_closed;
    int r_used = 0;
    double prev_partial = 0.0;  // last-but-one lifted partial value
};

struct EulerFactorization {
    std::vector<EulerEntry> prime_factors;  // bad primes only; good ones aggregated
    i64 truncation_prime_bound = 0;
    double tail_estimate = 0.0;  // heuristic partial-sum bound
    double value = 0.0;
};

EulerFactorization singular_series_fiber(const CoeffVector& x, i64 prime_bound,
                                         int r_max = 8);

enum class NMethod { factorized, brute };

// n(p^t) = #{(x,y) in (Z/p^t)^8 : F(x;y) = 0}.
cpp_int n_full(i64 p, int t, NMethod method);

struct MainTermEstimate {
    i64 B = 0;
    double empirical_sum = 0.0;
    Rat exact_sum;          // populated for M1 (exact rational summation)
    double predicted_slope = 0.0;
    double eta = 0.0;       // M2 window parameter
    bool empty_window = false;
    std::vector<std::pair<i64, double>> shells;  // (|y| or |x| shell, contribution)
};

// M1(B) = sum over primitive y, |y| <= B^{1/4}, of rho_inf(y)/|y|^2 (exact).
// tau_value < 0 recomputes tau_infinity(via_rho) for the predicted slope.
MainTermEstimate main_term_M1(i64 B, double tau_value = -1.0);

// M2(B) = sum over primitive x, B^{2 eta} <= |x| <= B^{1/6}, Delta not square,
// of sigma_inf(x) S(x) / |x|^3.
MainTermEstimate main_term_M2(i64 B, double eta, i64 prime_bound, double tol,
                              double tau_value = -1.0);

struct PeyreResult {
    double c = 0.0;
    double schindler_product = 0.0;  // prod_{p <= 1e5} (1 + p^{-2})
    double schindler_target = 0.0;   // zeta(2)/zeta(4) = 15/pi^2
    bool schindler_ok = false;
};

PeyreResult peyre_constant(const geom::TauEstimate& tau);

}  // namespace qbl::loc
