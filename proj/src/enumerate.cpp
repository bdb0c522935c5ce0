#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qbl/enumerate.hpp"
#include "qbl/lattice.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbl::enumc {

std::atomic<long long> invocation_count{0};

using arith::i128;

bool thin_set_membership(const CoeffVector& x) {
    if (x.delta < 0) return false;
    return arith::is_square(x.delta);
}

namespace {

int threads_in_use() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Raw count of primitive y with Y0 < |y| <= Y1 and F(x;y) = 0. F depends on
// y only through y_i^2, so nonnegative tuples are enumerated and weighted by
// 2^{#nonzero coordinates}.
long long fiber_annulus(const std::array<i64, 4>& x, i64 Y0, i64 Y1) {
    if (Y1 < 0 || Y1 <= Y0) return 0;
    int piv = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(x[i]) > std::abs(x[piv])) piv = i;
    const int o0 = (piv + 1) % 4, o1 = (piv + 2) % 4, o2 = (piv + 3) % 4;
    const i64 xp = x[piv];

    std::vector<long long> partial(Y1 + 1, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (i64 a = 0; a <= Y1; ++a) {
        long long local = 0;
        const i64 s0 = x[o0] * a * a;
        for (i64 b = 0; b <= Y1; ++b) {
            const i64 s1 = s0 + x[o1] * b * b;
            for (i64 c = 0; c <= Y1; ++c) {
                const i64 s = s1 + x[o2] * c * c;
                if (s % xp != 0) continue;
                const i64 t = -(s / xp);
                if (t < 0 || !arith::is_square_fast(t)) continue;
                const i64 yp = arith::isqrt(t);
                if (yp > Y1) continue;
                i64 sup = std::max(std::max(a, b), std::max(c, yp));
                if (sup <= Y0 || sup > Y1) continue;
                i64 v[4];
                v[o0] = a;
                v[o1] = b;
                v[o2] = c;
                v[piv] = yp;
                if (arith::gcd4(v[0], v[1], v[2], v[3]) != 1) continue;
                int nz = (v[0] != 0) + (v[1] != 0) + (v[2] != 0) + (v[3] != 0);
                local += 1LL << nz;
            }
        }
        partial[a] = local;
    }
    long long total = 0;
    for (long long v : partial) total += v;
    return total;
}

bool canonical_sign(const std::array<i64, 4>& v) {
    for (i64 e : v) {
        if (e > 0) return true;
        if (e < 0) return false;
    }
    return false;  // zero vector
}

i64 floor_root(i64 B, i64 denom_sq, int k) {
    // largest R >= 0 with R^k * denom_sq <= B
    double guess = std::pow(static_cast<double>(B) / denom_sq, 1.0 / k);
    i64 R = static_cast<i64>(guess);
    auto ok = [&](i64 r) {
        i128 v = denom_sq;
        for (int i = 0; i < k; ++i) v *= r;
        return v <= B;
    };
    while (R > 0 && !ok(R)) --R;
    while (ok(R + 1)) ++R;
    return R;
}

}  // namespace

long long fiber_point_count(const CoeffVector& x, i64 Y) {
    if (!x.all_nonzero()) throw std::invalid_argument("fiber_point_count: zero coefficient");
    if (Y < 0) return 0;
    return fiber_annulus(x.entries, -1, Y);
}

CountReport count_points(i64 B, Split split, double c_peyre, i64 split_boundary) {
    if (B < 1) throw std::invalid_argument("count_points: B < 1");
    ++invocation_count;
    auto t0 = std::chrono::steady_clock::now();

    CountReport rep;
    rep.B = B;
    rep.thread_count = threads_in_use();
    i64 Ys = split_boundary > 0 ? split_boundary : floor_root(B, 1, 4);
    rep.split_boundary = Ys;

    long long main2 = 0, thin2 = 0;  // twice the canonical counts

    if (split != Split::x_side_only) {
        std::array<i64, 4> y{};
        for (y[0] = -Ys; y[0] <= Ys; ++y[0])
            for (y[1] = -Ys; y[1] <= Ys; ++y[1])
                for (y[2] = -Ys; y[2] <= Ys; ++y[2])
                    for (y[3] = -Ys; y[3] <= Ys; ++y[3]) {
                        if (!canonical_sign(y)) continue;
                        if (arith::gcd4(y[0], y[1], y[2], y[3]) != 1) continue;
                        i64 s = 0;
                        for (i64 e : y) s = std::max(s, std::abs(e));
                        i64 R = floor_root(B, s * s, 3);
                        if (R < 1) continue;
                        CoeffVector cy = arith::make_coeff_vector(y);
                        lat::FiberLattice L = lat::fiber_lattice_basis(cy);
                        long long ns =
                            lat::count_fiber_box(L, static_cast<double>(R),
                                                 lat::Filter::nonsquare_primitive);
                        long long pr = lat::count_fiber_box(L, static_cast<double>(R),
                                                            lat::Filter::primitive);
                        main2 += ns;
                        thin2 += pr - ns;
                    }
    }

    if (split != Split::y_side_only) {
        for (i64 s = 1;; ++s) {
            i128 cube = static_cast<i128>(s) * s * s;
            if (cube * (Ys + 1) * (Ys + 1) > B) break;
            i64 Y1 = static_cast<i64>(std::sqrt(static_cast<double>(B) / (s * s * s)));
            while (Y1 > 0 && cube * Y1 * Y1 > B) --Y1;
            while (cube * (Y1 + 1) * (Y1 + 1) <= B) ++Y1;
            if (Y1 <= Ys) continue;
            std::array<i64, 4> x{};
            for (x[0] = -s; x[0] <= s; ++x[0])
                for (x[1] = -s; x[1] <= s; ++x[1])
                    for (x[2] = -s; x[2] <= s; ++x[2])
                        for (x[3] = -s; x[3] <= s; ++x[3]) {
                            i64 sup = 0;
                            for (i64 e : x) sup = std::max(sup, std::abs(e));
                            if (sup != s) continue;
                            if (!canonical_sign(x)) continue;
                            if (arith::gcd4(x[0], x[1], x[2], x[3]) != 1) continue;
                            long long cnt = fiber_annulus(x, Ys, Y1);
                            if (cnt == 0) continue;
                            CoeffVector cx = arith::make_coeff_vector(x);
                            if (thin_set_membership(cx))
                                thin2 += cnt;
                            else
                                main2 += cnt;
                        }
        }
    }

    rep.canonical_count = main2 / 2;
    rep.thin_excluded = thin2 / 2;
    if (c_peyre > 0.0) {
        rep.predicted = c_peyre * static_cast<double>(B) * std::log(static_cast<double>(B));
        if (rep.predicted > 0.0) rep.ratio = rep.canonical_count / rep.predicted;
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

long long count_points_naive(i64 B) {
    i64 Ymax = floor_root(B, 1, 2);
    long long raw = 0;
    std::array<i64, 4> y{};
    for (y[0] = -Ymax; y[0] <= Ymax; ++y[0])
        for (y[1] = -Ymax; y[1] <= Ymax; ++y[1])
            for (y[2] = -Ymax; y[2] <= Ymax; ++y[2])
                for (y[3] = -Ymax; y[3] <= Ymax; ++y[3]) {
                    if (arith::gcd4(y[0], y[1], y[2], y[3]) != 1) continue;
                    i64 sy = 0;
                    for (i64 e : y) sy = std::max(sy, std::abs(e));
                    i64 Rx = floor_root(B, sy * sy, 3);
                    if (Rx < 1) continue;
                    i64 a[4];
                    for (int i = 0; i < 4; ++i) a[i] = y[i] * y[i];
                    std::array<i64, 4> x{};
                    for (x[0] = -Rx; x[0] <= Rx; ++x[0])
                        for (x[1] = -Rx; x[1] <= Rx; ++x[1])
                            for (x[2] = -Rx; x[2] <= Rx; ++x[2])
                                for (x[3] = -Rx; x[3] <= Rx; ++x[3]) {
                                    if (a[0] * x[0] + a[1] * x[1] + a[2] * x[2] +
                                            a[3] * x[3] !=
                                        0)
                                        continue;
                                    if (arith::gcd4(x[0], x[1], x[2], x[3]) != 1) continue;
                                    i128 d = static_cast<i128>(x[0]) * x[1] * x[2] * x[3];
                                    if (d >= 0 && arith::is_square(static_cast<i64>(d)))
                                        continue;
                                    ++raw;
                                }
                }
    return raw / 4;
}

double weighted_count(const exps::DiagonalForm& F, const geom::SmoothWeight& w, double P) {
    if (P <= 0.0) throw std::invalid_argument("weighted_count: P <= 0");
    double reach = (w.kind == geom::SmoothWeight::outer_w2) ? (1.0 + w.eta) : 1.0;
    i64 Y1 = static_cast<i64>(std::floor(reach * P));
    const std::array<i64, 4>& A = F.coeffs;
    int piv = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(A[i]) > std::abs(A[piv])) piv = i;
    const int o0 = (piv + 1) % 4, o1 = (piv + 2) % 4, o2 = (piv + 3) % 4;
    const i64 xp = A[piv];

    std::vector<double> partial(Y1 + 1, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (i64 a = 0; a <= Y1; ++a) {
        double local = 0.0;
        const i64 s0 = A[o0] * a * a;
        for (i64 b = 0; b <= Y1; ++b) {
            const i64 s1 = s0 + A[o1] * b * b;
            for (i64 c = 0; c <= Y1; ++c) {
                const i64 s = s1 + A[o2] * c * c;
                if (s % xp != 0) continue;
                const i64 t = -(s / xp);
                if (t < 0 || !arith::is_square_fast(t)) continue;
                const i64 yp = arith::isqrt(t);
                if (yp > Y1) continue;
                i64 sup = std::max(std::max(a, b), std::max(c, yp));
                int nz = (a != 0) + (b != 0) + (c != 0) + (yp != 0);
                double wv = w.profile(static_cast<double>(sup) / P);
                if (wv != 0.0) local += static_cast<double>(1LL << nz) * wv;
            }
        }
        partial[a] = local;
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total;
}

}  // namespace qbl::enumc
