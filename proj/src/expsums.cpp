#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qbl/expsums.hpp"

namespace qbl::exps {

namespace {

i64 mod_pos(i64 a, i64 q) {
    a %= q;
    return a < 0 ? a + q : a;
}

std::vector<std::complex<double>> root_table(i64 q) {
    std::vector<std::complex<double>> r(q);
    for (i64 k = 0; k < q; ++k) {
        double ph = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q);
        r[k] = {std::cos(ph), std::sin(ph)};
    }
    return r;
}

std::complex<double> gauss_direct(i64 b, i64 c, i64 q,
                                  const std::vector<std::complex<double>>& roots) {
    b = mod_pos(b, q);
    c = mod_pos(c, q);
    std::complex<double> s(0.0, 0.0);
    for (i64 x = 0; x < q; ++x) {
        i64 e = (arith::mul_mod(arith::mul_mod(b, x, q), x, q) + arith::mul_mod(c, x, q)) % q;
        s += roots[e];
    }
    return s;
}

}  // namespace

DiagonalForm make_form(const std::array<i64, 4>& A) {
    DiagonalForm F;
    F.coeffs = A;
    arith::i128 d = 1;
    for (i64 a : A) {
        if (a == 0) throw std::invalid_argument("make_form: zero coefficient");
        d *= a;
        F.norm = std::max(F.norm, std::abs(a));
    }
    F.disc = static_cast<i64>(d);
    arith::CoeffVector cv = arith::make_coeff_vector(A);
    F.disc_bad = static_cast<i64>(cv.delta_bad);
    return F;
}

ComplexExact gauss_sum(i64 b, i64 c, i64 q, GaussMethod method) {
    if (q <= 0) throw std::invalid_argument("gauss_sum: q must be positive");
    if (method == GaussMethod::direct) return {gauss_direct(b, c, q, root_table(q))};

    i64 br = mod_pos(b, q);
    if (q % 2 == 0 || arith::gcd(br, q) != 1)
        throw std::invalid_argument("gauss_sum: closed form inapplicable");
    i64 inv4b = arith::inv_mod(arith::mul_mod(4 % q, br, q), q);
    i64 c2 = arith::mul_mod(mod_pos(c, q), mod_pos(c, q), q);
    i64 e = mod_pos(-arith::mul_mod(inv4b, c2, q), q);
    double ph = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(q);
    std::complex<double> phase(std::cos(ph), std::sin(ph));
    std::complex<double> delta_q = (q % 4 == 1) ? std::complex<double>(1, 0)
                                                : std::complex<double>(0, 1);
    double sq = std::sqrt(static_cast<double>(q));
    double chi = static_cast<double>(arith::jacobi_symbol(br, q));
    return {phase * chi * delta_q * sq};
}

i64 dual_form(const DiagonalForm& F, const std::array<i64, 4>& c) {
    arith::i128 s = 0;
    for (int i = 0; i < 4; ++i) {
        arith::i128 cof = static_cast<arith::i128>(F.disc) / F.coeffs[i];
        s += cof * c[i] * c[i];
    }
    return static_cast<i64>(s);
}

namespace {

std::complex<double> s_q_direct(const DiagonalForm& F, const std::array<i64, 4>& c, i64 q) {
    if (q == 1) return {1.0, 0.0};
    auto roots = root_table(q);
    // per-coordinate tables b -> G(b, c_i; q)
    std::array<std::vector<std::complex<double>>, 4> tab;
    for (int i = 0; i < 4; ++i) {
        tab[i].resize(q);
        for (i64 b = 0; b < q; ++b) tab[i][b] = gauss_direct(b, c[i], q, roots);
    }
    std::complex<double> s(0.0, 0.0);
    for (i64 a = 1; a < q; ++a) {
        if (arith::gcd(a, q) != 1) continue;
        std::complex<double> prod(1.0, 0.0);
        for (int i = 0; i < 4; ++i) prod *= tab[i][arith::mul_mod(a, mod_pos(F.coeffs[i], q), q)];
        s += prod;
    }
    if (q == 1) s = {1.0, 0.0};
    return s;
}

}  // namespace

ComplexExact s_q(const DiagonalForm& F, const std::array<i64, 4>& c, i64 q,
                 SqMethod method, i64 direct_cap) {
    if (q < 1) throw std::invalid_argument("s_q: q must be positive");
    if (q == 1) return {{1.0, 0.0}};
    if (method == SqMethod::direct) {
        if (q > direct_cap) throw std::invalid_argument("s_q: direct cap exceeded");
        return {s_q_direct(F, c, q)};
    }
    bool c_zero = c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
    std::complex<double> result(1.0, 0.0);
    for (auto [p, r] : arith::factor(q)) {
        i64 pr = 1;
        for (int k = 0; k < r; ++k) pr *= p;
        if (p != 2 && F.disc % p != 0) {
            // good prime: (Delta_F | p)^r p^{2r} c_{p^r}(F*(c))
            int chi = arith::jacobi_symbol(mod_pos(F.disc, p), p);
            double chir = (r % 2 == 0) ? 1.0 : static_cast<double>(chi);
            double p2r = std::pow(static_cast<double>(p), 2 * r);
            double cq = static_cast<double>(arith::ramanujan_sum(pr, dual_form(F, c)));
            result *= chir * p2r * cq;
        } else if (c_zero && p != 2 && F.disc % p == 0 && F.disc_bad % p != 0) {
            return {{0.0, 0.0}};
        } else {
            if (pr > direct_cap) throw std::invalid_argument("s_q: bad prime power exceeds direct cap");
            result *= s_q_direct(F, c, pr);
        }
    }
    return {result};
}

cpp_int psi_q(i64 q, PsiMethod method) {
    if (q < 1) throw std::invalid_argument("psi_q: q must be positive");
    if (method == PsiMethod::closed) {
        cpp_int result = 1;
        for (auto [p, f] : arith::factor(q)) {
            if (f % 2 != 0) return 0;
            cpp_int p4 = cpp_int(p) * p * p * p;
            cpp_int pf6 = 1;  // p^{6f - 4}
            for (int k = 0; k < 6 * f - 4; ++k) pf6 *= p;
            result *= arith::euler_phi_pp(p, f) * pf6 * (p4 - 1);
        }
        return result;
    }
    if (q > 8) throw std::invalid_argument("psi_q: brute budget exceeded");
    std::vector<i64> cq(q), bsq(q);
    for (i64 n = 0; n < q; ++n) cq[n] = arith::ramanujan_sum(q, n);
    for (i64 b = 0; b < q; ++b) bsq[b] = b * b % q;
    long long total = 0;
    for (i64 a0 = 0; a0 < q; ++a0)
        for (i64 a1 = 0; a1 < q; ++a1)
            for (i64 a2 = 0; a2 < q; ++a2)
                for (i64 a3 = 0; a3 < q; ++a3) {
                    if (arith::gcd(arith::gcd4(a0, a1, a2, a3), q) != 1) continue;
                    for (i64 b0 = 0; b0 < q; ++b0)
                        for (i64 b1 = 0; b1 < q; ++b1)
                            for (i64 b2 = 0; b2 < q; ++b2) {
                                i64 base = (a0 * bsq[b0] + a1 * bsq[b1] + a2 * bsq[b2]) % q;
                                for (i64 b3 = 0; b3 < q; ++b3)
                                    total += cq[(base + a3 * bsq[b3]) % q];
                            }
                }
    return total;
}

}  // namespace qbl::exps
