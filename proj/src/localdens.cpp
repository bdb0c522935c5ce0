#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qbl/localdens.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbl::loc {

double zeta2() { return std::numbers::pi * std::numbers::pi / 6.0; }
double zeta3() { return 1.202056903159594285399738161511449990765; }
double zeta4() {
    double p2 = std::numbers::pi * std::numbers::pi;
    return p2 * p2 / 90.0;
}

namespace {

using arith::i128;

struct Quad {  // Q(w) = sum c_i w_i^2 + sum l_i w_i + n
    std::array<i64, 4> c{}, l{};
    i64 n = 0;
};

i64 ipow(i64 p, int e) {
    i64 r = 1;
    while (e-- > 0) r *= p;
    return r;
}

cpp_int cpow(i64 p, int e) {
    cpp_int r = 1;
    while (e-- > 0) r *= p;
    return r;
}

// p^e, or 0 if it would overflow i64.
i64 safe_pow(i64 p, int e) {
    i64 r = 1;
    while (e-- > 0) {
        if (r > (std::int64_t{1} << 62) / p) return 0;
        r *= p;
    }
    return r;
}

// #{w mod p^m : Q(w) = 0 mod p^m}. Nonsingular zeros mod p lift with
// multiplicity p^{3(m-1)}; singular zeros recurse two levels down.
cpp_int count_quad(const Quad& Q, i64 p, int m) {
    if (m <= 0) return 1;
    const i128 p2 = static_cast<i128>(p) * p;
    cpp_int total = 0;
    const cpp_int lift = (m >= 2) ? cpow(p, 3 * (m - 1)) : 1;
    const i64 modr = safe_pow(p, std::max(m - 2, 1));  // 0 = keep exact
    auto reduce = [&](i128 v) {
        if (modr == 0) return static_cast<i64>(v);
        i64 r = static_cast<i64>(v % modr);
        return r < 0 ? r + modr : r;
    };
    std::array<i64, 4> z{};
    for (z[0] = 0; z[0] < p; ++z[0])
        for (z[1] = 0; z[1] < p; ++z[1])
            for (z[2] = 0; z[2] < p; ++z[2])
                for (z[3] = 0; z[3] < p; ++z[3]) {
                    i128 q = Q.n;
                    for (int i = 0; i < 4; ++i)
                        q += static_cast<i128>(Q.c[i]) * z[i] * z[i] +
                             static_cast<i128>(Q.l[i]) * z[i];
                    if (q % p != 0) continue;
                    if (m == 1) {
                        ++total;
                        continue;
                    }
                    bool singular = true;
                    i128 grad[4];
                    for (int i = 0; i < 4; ++i) {
                        grad[i] = 2 * static_cast<i128>(Q.c[i]) * z[i] + Q.l[i];
                        if (grad[i] % p != 0) singular = false;
                    }
                    if (!singular) {
                        total += lift;
                        continue;
                    }
                    if (q % p2 != 0) continue;
                    Quad R;
                    for (int i = 0; i < 4; ++i) {
                        R.c[i] = reduce(Q.c[i]);
                        R.l[i] = reduce(grad[i] / p);
                    }
                    R.n = reduce(q / p2);
                    total += cpow(p, 4) * count_quad(R, p, m - 2);
                }
    return total;
}

}  // namespace

Rat local_density_fiber(const CoeffVector& x, i64 p, int r) {
    if (!x.all_nonzero()) throw std::invalid_argument("local_density_fiber: zero coefficient");
    if (p < 2 || r < 1) throw std::invalid_argument("local_density_fiber: bad p or r");
    Quad Q;
    i64 mod = safe_pow(p, r);
    for (int i = 0; i < 4; ++i)
        Q.c[i] = mod ? ((x.entries[i] % mod) + mod) % mod : x.entries[i];
    cpp_int N = count_quad(Q, p, r);
    return Rat(N, cpow(p, 3 * r));
}

Rat euler_factor_good(const CoeffVector& x, i64 p) {
    if (!x.all_nonzero()) throw std::invalid_argument("euler_factor_good: zero coefficient");
    cpp_int twodelta = 2 * x.delta;
    if (twodelta % p == 0) throw std::invalid_argument("euler_factor_good: not a good prime");
    i64 dmod = static_cast<i64>(((x.delta % p) + p) % p);
    int chi = arith::jacobi_symbol(dmod, p);
    // (1 - chi p^{-2}) / (1 - chi p^{-1}) = (p^2 - chi) / (p(p - chi))
    return Rat(cpp_int(p) * p - chi, cpp_int(p) * (p - chi));
}

EulerFactorization singular_series_fiber(const CoeffVector& x, i64 prime_bound, int r_max) {
    if (!x.all_nonzero()) throw std::invalid_argument("singular_series_fiber: zero coefficient");
    if (x.delta > 0 && arith::is_square(x.delta))
        throw std::invalid_argument("square discriminant: series not absolutely convergent");

    EulerFactorization out;
    out.truncation_prime_bound = prime_bound;
    std::vector<i64> primes = arith::primes_up_to(prime_bound);
    cpp_int twodelta = 2 * x.delta;

    double good_log = 0.0;
    double block = 0.0;  // last dyadic block of chi(p)/p, heuristic tail driver
    for (i64 p : primes) {
        if (twodelta % p == 0) {
            int vp = 0;
            cpp_int d = abs(twodelta);
            while (d % p == 0) {
                d /= p;
                ++vp;
            }
            int r_stop = std::min(2 * vp + 3, r_max);
            Rat prev(0), cur(0);
            int used = 0;
            for (int r = 1; r <= r_stop; ++r) {
                prev = cur;
                cur = local_density_fiber(x, p, r);
                used = r;
                if (r >= 2 && cur == prev) break;
            }
            EulerEntry e;
            e.p = p;
            e.factor = arith::to_double(cur);
            e.method = EulerEntry::lifted;
            e.r_used = used;
            e.prev_partial = arith::to_double(prev);
            out.prime_factors.push_back(e);
        } else {
            i64 dmod = static_cast<i64>(((x.delta % p) + p) % p);
            int chi = arith::jacobi_symbol(dmod, p);
            double f = (1.0 - chi / (static_cast<double>(p) * p)) /
                       (1.0 - chi / static_cast<double>(p));
            good_log += std::log(f);
            if (2 * p > prime_bound) block += static_cast<double>(chi) / p;
        }
    }
    double v = std::exp(good_log);
    for (const EulerEntry& e : out.prime_factors) v *= e.factor;
    out.value = v;
    out.tail_estimate =
        std::abs(v) * (3.0 * std::abs(block) + 4.0 / static_cast<double>(prime_bound));
    return out;
}

cpp_int n_full(i64 p, int t, NMethod method) {
    if (p < 2 || t < 1) throw std::invalid_argument("n_full: bad p or t");
    i64 q = ipow(p, t);
    if (method == NMethod::factorized) {
        // n(q) = q^3 sum_{c mod q} N(c)^4, N(c) = #{y mod q : c y^2 = 0}
        //      = p^{t - ceil((t - v)/2)} when v = v_p(c).
        cpp_int s = 0;
        for (int v = 0; v < t; ++v) {
            int N_exp = t - (t - v + 1) / 2;
            cpp_int N4 = cpow(p, 4 * N_exp);
            s += arith::euler_phi_pp(p, t - v) * N4;
        }
        s += cpow(p, 4 * t);  // c = 0
        return cpow(p, 3 * t) * s;
    }
    if (q > 9) throw std::invalid_argument("n_full: brute budget exceeded");
    std::vector<i64> sq(q);
    for (i64 y = 0; y < q; ++y) sq[y] = y * y % q;
    long long total = 0;
    for (i64 y0 = 0; y0 < q; ++y0)
        for (i64 y1 = 0; y1 < q; ++y1)
            for (i64 y2 = 0; y2 < q; ++y2)
                for (i64 y3 = 0; y3 < q; ++y3)
                    for (i64 x0 = 0; x0 < q; ++x0)
                        for (i64 x1 = 0; x1 < q; ++x1)
                            for (i64 x2 = 0; x2 < q; ++x2) {
                                i64 base = (x0 * sq[y0] + x1 * sq[y1] + x2 * sq[y2]) % q;
                                // x3 sq[y3] = -base has gcd(sq[y3], q) solutions
                                // when that gcd divides base; count directly.
                                for (i64 x3 = 0; x3 < q; ++x3)
                                    if ((base + x3 * sq[y3]) % q == 0) ++total;
                            }
    return total;
}

MainTermEstimate main_term_M1(i64 B, double tau_value) {
    if (B < 1) throw std::invalid_argument("main_term_M1: B < 1");
    i64 Y = static_cast<i64>(std::floor(std::pow(static_cast<double>(B), 0.25)));
    while ((Y + 1) * (Y + 1) * (Y + 1) * (Y + 1) <= B) ++Y;
    while (Y > 0 && Y * Y * Y * Y > B) --Y;

    MainTermEstimate est;
    est.B = B;
    std::vector<Rat> shell(Y + 1, Rat(0));
    // sorted-multiset enumeration: v1 <= v2 <= v3 <= v4, weight by signs/perms
    std::array<i64, 4> v{};
    for (v[0] = 0; v[0] <= Y; ++v[0])
        for (v[1] = v[0]; v[1] <= Y; ++v[1])
            for (v[2] = v[1]; v[2] <= Y; ++v[2])
                for (v[3] = std::max<i64>(v[2], 1); v[3] <= Y; ++v[3]) {
                    if (arith::gcd4(v[0], v[1], v[2], v[3]) != 1) continue;
                    int nonzero = 0;
                    for (i64 e : v)
                        if (e) ++nonzero;
                    // 4! / prod of multiplicity factorials
                    int perms = 24;
                    int i = 0;
                    while (i < 4) {
                        int j = i;
                        while (j < 4 && v[j] == v[i]) ++j;
                        static const int fact[] = {1, 1, 2, 6, 24};
                        perms /= fact[j - i];
                        i = j;
                    }
                    i64 weight = static_cast<i64>(perms) << nonzero;
                    CoeffVector y = arith::make_coeff_vector(v);
                    Rat rho = geom::rho_infinity(y).rational_part;
                    shell[v[3]] += Rat(weight) * rho / Rat(v[3] * v[3]);
                }
    Rat total(0);
    for (i64 k = 1; k <= Y; ++k) {
        total += shell[k];
        est.shells.push_back({k, arith::to_double(shell[k])});
    }
    est.exact_sum = total;
    est.empirical_sum = arith::to_double(total);
    if (tau_value < 0) tau_value = geom::tau_infinity(geom::TauMethod::via_rho, 1e-3).value;
    est.predicted_slope = tau_value / (2.0 * zeta4());
    return est;
}

MainTermEstimate main_term_M2(i64 B, double eta, i64 prime_bound, double tol,
                              double tau_value) {
    if (B < 1 || eta <= 0.0) throw std::invalid_argument("main_term_M2: bad arguments");
    (void)tol;
    MainTermEstimate est;
    est.B = B;
    est.eta = eta;
    double lo = std::pow(static_cast<double>(B), 2.0 * eta);
    i64 X = static_cast<i64>(std::floor(std::pow(static_cast<double>(B), 1.0 / 6.0)));
    while (ipow(X + 1, 6) <= B) ++X;
    while (X > 0 && ipow(X, 6) > B) --X;
    i64 lo_i = static_cast<i64>(std::ceil(lo));
    if (lo_i < 1) lo_i = 1;
    if (tau_value < 0) tau_value = geom::tau_infinity(geom::TauMethod::via_rho, 1e-3).value;
    est.predicted_slope = zeta2() * tau_value / (2.0 * zeta3() * zeta4());
    if (lo_i > X) {
        est.empty_window = true;
        return est;
    }

    for (i64 shell = lo_i; shell <= X; ++shell) {
        double acc = 0.0;
        std::array<i64, 4> x{};
        for (x[0] = -shell; x[0] <= shell; ++x[0])
            for (x[1] = -shell; x[1] <= shell; ++x[1])
                for (x[2] = -shell; x[2] <= shell; ++x[2])
                    for (x[3] = -shell; x[3] <= shell; ++x[3]) {
                        i64 sup = 0;
                        for (i64 e : x) sup = std::max(sup, std::abs(e));
                        if (sup != shell) continue;
                        if (x[0] == 0 || x[1] == 0 || x[2] == 0 || x[3] == 0) continue;
                        if (arith::gcd4(x[0], x[1], x[2], x[3]) != 1) continue;
                        bool pos = false, neg = false;
                        for (i64 e : x) (e > 0 ? pos : neg) = true;
                        if (!(pos && neg)) continue;  // sigma = 0
                        i128 d = static_cast<i128>(x[0]) * x[1] * x[2] * x[3];
                        if (d > 0 && arith::is_square(static_cast<i64>(d))) continue;
                        CoeffVector cv = arith::make_coeff_vector(x);
                        double sig = geom::sigma_exact(
                            {static_cast<double>(x[0]), static_cast<double>(x[1]),
                             static_cast<double>(x[2]), static_cast<double>(x[3])});
                        double ss = singular_series_fiber(cv, prime_bound).value;
                        acc += sig * ss;
                    }
        double contrib = acc / (static_cast<double>(shell) * shell * shell);
        est.shells.push_back({shell, contrib});
        est.empirical_sum += contrib;
    }
    return est;
}

PeyreResult peyre_constant(const geom::TauEstimate& tau) {
    PeyreResult r;
    r.c = tau.value / (4.0 * zeta3() * zeta4());
    double prod = 1.0;
    for (i64 p : arith::primes_up_to(100000))
        prod *= 1.0 + 1.0 / (static_cast<double>(p) * p);
    r.schindler_product = prod;
    r.schindler_target = 15.0 / (std::numbers::pi * std::numbers::pi);
    r.schindler_ok = std::abs(prod - r.schindler_target) < 1e-4;
    return r;
}

}  // namespace qbl::loc
