// Complete exponential sums S_q(c), generalized Gauss sums, dual form, psi(q).
#pragma once

#include <array>
#include <complex>

#include "qbl/arith.hpp"

namespace qbl::exps {

using arith::cpp_int;
using arith::i64;

struct DiagonalForm {
    std::array<i64, 4> coeffs{};  // A_1..A_4, all nonzero
    i64 disc = 0;                 // Delta_F = A_1 A_2 A_3 A_4
    i64 norm = 0;                 // max |A_i|
    i64 disc_bad = 1;             // square-full part of |Delta_F|
};

DiagonalForm make_form(const std::array<i64, 4>& A);

struct ComplexExact {
    std::complex<double> value;
};

enum class GaussMethod { direct, closed };
enum class SqMethod { direct, factored };
enum class PsiMethod { closed, brute };

// G(b,c;q) = sum_{x mod q} e_q(b x^2 + c x).
ComplexExact gauss_sum(i64 b, i64 c, i64 q, GaussMethod method);

// F*(c) = sum_i (Delta_F / A_i) c_i^2.
i64 dual_form(const DiagonalForm& F, const std::array<i64, 4>& c);

// S_q(c) = sum*_{a mod q} prod_i G(a A_i, c_i; q); real-valued.
ComplexExact s_q(const DiagonalForm& F, const std::array<i64, 4>& c, i64 q,
                 SqMethod method, i64 direct_cap = 3000);

// psi(q): multiplicative, psi(p^f) = phi(p^f) p^{6f} (1 - p^{-4}) for even f,
// 0 for odd f. brute sums Ramanujan sums over all (a,b) mod q, gcd(a,q) = 1.
cpp_int psi_q(i64 q, PsiMethod method);

}  // namespace qbl::exps
