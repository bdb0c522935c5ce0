#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "qbl/lattice.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbl::lat {

namespace {

i64 sup4(const std::array<i64, 4>& v) {
    i64 m = 0;
    for (i64 e : v) m = std::max(m, std::abs(e));
    return m;
}

cpp_int dot4(const std::array<i64, 4>& a, const std::array<i64, 4>& b) {
    cpp_int s = 0;
    for (int i = 0; i < 4; ++i) s += cpp_int(a[i]) * b[i];
    return s;
}

cpp_int gram_det(const std::array<std::array<i64, 4>, 3>& B) {
    cpp_int g[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i][j] = dot4(B[i], B[j]);
    return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
           g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
           g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

}  // namespace

FiberLattice fiber_lattice_basis(const CoeffVector& y) {
    if (y.gcd == 0) throw std::invalid_argument("fiber_lattice_basis: zero vector");
    if (!y.primitive()) throw std::invalid_argument("fiber_lattice_basis: y not primitive");

    FiberLattice L;
    cpp_int d2 = 0;
    std::array<i64, 4> a{};
    for (int i = 0; i < 4; ++i) {
        a[i] = y.entries[i] * y.entries[i];
        d2 += cpp_int(a[i]) * a[i];
    }
    L.coefficient_form = a;
    L.det_squared = d2;

    // Column elimination on I
    std::array<std::array<i64, 4>, 4> col{};  // col[j] is a candidate vector
    std::array<i64, 4> val = a;               // val[j] = a . col[j]
    for (int j = 0; j < 4; ++j) col[j][j] = 1;
    for (;;) {
        int piv = -1;
        for (int j = 0; j < 4; ++j)
            if (val[j] != 0 && (piv < 0 || std::abs(val[j]) < std::abs(val[piv]))) piv = j;
        bool done = true;
        for (int j = 0; j < 4; ++j) {
            if (j == piv || val[j] == 0) continue;
            i64 t = val[j] / val[piv];
            for (int k = 0; k < 4; ++k) col[j][k] -= t * col[piv][k];
            val[j] -= t * val[piv];
            if (val[j] != 0) done = false;
        }
        if (done) break;
    }
    int n = 0;
    for (int j = 0; j < 4; ++j)
        if (val[j] == 0) {
            if (n < 3) L.basis[n] = col[j];
            ++n;
        }
    if (n != 3) throw std::logic_error("fiber_lattice_basis: kernel rank != 3");
    if (gram_det(L.basis) != d2) throw std::logic_error("fiber_lattice_basis: Gram check failed");
    return L;
}

std::array<i64, 3> successive_minima_sup(FiberLattice& L) {
    std::array<std::array<i64, 4>, 3> B = L.basis;

    // Lagrange-style size reduction on the Gram matrix (L2), exact arithmetic.
    for (int pass = 0; pass < 64; ++pass) {
        bool changed = false;
        std::sort(B.begin(), B.end(), [](const auto& u, const auto& v) {
            return dot4(u, u) < dot4(v, v);
        });
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                cpp_int num = dot4(B[i], B[j]), den = dot4(B[j], B[j]);
                // nearest integer to num/den
                cpp_int t = (2 * num + (num < 0 ? -den : den)) / (2 * den);
                if (t == 0) continue;
                i64 ti = static_cast<i64>(t);
                std::array<i64, 4> cand = B[i];
                for (int k = 0; k < 4; ++k) cand[k] -= ti * B[j][k];
                if (dot4(cand, cand) < dot4(B[i], B[i])) {
                    B[i] = cand;
                    changed = true;
                }
            }
        if (!changed) break;
    }

    // Certification radius: the reduced basis already achieves sup-norms
    // >= the successive minima, so enumerating |v|_sup <= R is complete.
    i64 R = 0;
    for (const auto& b : B) R = std::max(R, sup4(b));

    // Coefficient bounds from Cramer on the Gram system G c = B v^T.
    cpp_int g[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i][j] = dot4(B[i], B[j]);
    cpp_int det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                  g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                  g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    cpp_int adj[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            adj[j][i] = g[r0][c0] * g[r1][c1] - g[r0][c1] * g[r1][c0];
        }
    i64 cb[3];
    for (int i = 0; i < 3; ++i) {
        cpp_int num = 0;
        for (int j = 0; j < 3; ++j) {
            cpp_int l1 = 0;
            for (int k = 0; k < 4; ++k) l1 += std::abs(B[j][k]);
            num += abs(adj[i][j]) * l1;
        }
        cpp_int bound = (num * R) / abs(det) + 1;
        cb[i] = static_cast<i64>(bound);
    }

    std::vector<std::array<i64, 4>> found;
    for (i64 c0 = -cb[0]; c0 <= cb[0]; ++c0)
        for (i64 c1 = -cb[1]; c1 <= cb[1]; ++c1)
            for (i64 c2 = -cb[2]; c2 <= cb[2]; ++c2) {
                if (c0 == 0 && c1 == 0 && c2 == 0) continue;
                std::array<i64, 4> v{};
                for (int k = 0; k < 4; ++k)
                    v[k] = c0 * B[0][k] + c1 * B[1][k] + c2 * B[2][k];
                if (sup4(v) <= R) found.push_back(v);
            }
    std::sort(found.begin(), found.end(), [](const auto& u, const auto& v) {
        return sup4(u) < sup4(v);
    });

    std::array<std::array<i64, 4>, 3> sel{};
    std::array<i64, 3> minima{};
    int picked = 0;
    for (const auto& v : found) {
        if (picked == 3) break;
        sel[picked] = v;
        // independence via Gram determinant of the selected prefix
        bool indep = true;
        if (picked == 1) {
            cpp_int d = dot4(sel[0], sel[0]) * dot4(sel[1], sel[1]) -
                        dot4(sel[0], sel[1]) * dot4(sel[0], sel[1]);
            indep = d != 0;
        } else if (picked == 2) {
            indep = gram_det(sel) != 0;
        }
        if (!indep) continue;
        minima[picked] = sup4(v);
        if (picked == 0) L.shortest = v;
        ++picked;
    }
    if (picked != 3) throw std::logic_error("successive_minima_sup: enumeration incomplete");
    L.minima = minima;
    return minima;
}

namespace {

bool passes_filter(i64 x0, i64 x1, i64 x2, i64 x3, Filter f) {
    if (f == Filter::none) return true;
    if (f == Filter::primitive) return arith::gcd4(x0, x1, x2, x3) == 1;
    arith::i128 prod = static_cast<arith::i128>(x0) * x1 * x2 * x3;
    if (prod >= 0) {
        // our box sizes keep |prod| < 2^63
        if (arith::is_square(static_cast<i64>(prod))) return false;
    }
    if (f == Filter::nonsquare_primitive)
        return arith::gcd4(x0, x1, x2, x3) == 1;
    return true;
}

}  // namespace

long long count_fiber_box(const FiberLattice& L, double R, Filter filter) {
    if (R < 0) return 0;
    const i64 Rf = static_cast<i64>(std::floor(R));
    const std::array<i64, 4>& a = L.coefficient_form;
    int piv = 0;
    for (int i = 1; i < 4; ++i)
        if (a[i] > a[piv]) piv = i;
    int o0 = (piv + 1) % 4, o1 = (piv + 2) % 4, o2 = (piv + 3) % 4;

    long long total = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : total) schedule(static)
#endif
    for (i64 u = -Rf; u <= Rf; ++u) {
        long long local = 0;
        for (i64 v = -Rf; v <= Rf; ++v) {
            arith::i128 s2 = static_cast<arith::i128>(a[o0]) * u +
                             static_cast<arith::i128>(a[o1]) * v;
            for (i64 w = -Rf; w <= Rf; ++w) {
                arith::i128 s = s2 + static_cast<arith::i128>(a[o2]) * w;
                if (s % a[piv] != 0) continue;
                arith::i128 xp = -s / a[piv];
                if (xp > Rf || xp < -Rf) continue;
                i64 x[4];
                x[o0] = u;
                x[o1] = v;
                x[o2] = w;
                x[piv] = static_cast<i64>(xp);
                if (passes_filter(x[0], x[1], x[2], x[3], filter)) ++local;
            }
        }
        total += local;
    }
    return total;
}

long long count_fiber_box_naive(const CoeffVector& y, double R, Filter filter) {
    if (R < 0) return 0;
    const i64 Rf = static_cast<i64>(std::floor(R));
    i64 a[4];
    for (int i = 0; i < 4; ++i) a[i] = y.entries[i] * y.entries[i];
    long long total = 0;
    for (i64 x0 = -Rf; x0 <= Rf; ++x0)
        for (i64 x1 = -Rf; x1 <= Rf; ++x1)
            for (i64 x2 = -Rf; x2 <= Rf; ++x2)
                for (i64 x3 = -Rf; x3 <= Rf; ++x3)
                    if (a[0] * x0 + a[1] * x1 + a[2] * x2 + a[3] * x3 == 0 &&
                        passes_filter(x0, x1, x2, x3, filter))
                        ++total;
    return total;
}

}  // namespace qbl::lat
