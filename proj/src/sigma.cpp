#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qbl/geometry.hpp"
#include "qbl/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbl::geom {

namespace {

using cplx = std::complex<double>;
using lcplx = std::complex<long double>;

// Fresnel E(x) = C(x) + i S(x) = int_0^x exp(i pi t^2 / 2) dt, x >= 0.
// Power series below 3.8, asymptotic auxiliary series above; ~1e-9 absolute.
cplx fresnel_e(double x) {
    if (x < 3.8) {
        const lcplx ipi2(0.0L, 1.5707963267948966192313216916397514L);
        lcplx term(static_cast<long double>(x), 0.0L);
        lcplx sum = term;  // k = 0 contribution: x / 1
        long double x2 = static_cast<long double>(x) * x;
        for (int k = 1; k < 120; ++k) {
            term *= ipi2 * x2 / static_cast<long double>(k);
            lcplx contrib = term / static_cast<long double>(2 * k + 1);
            sum += contrib;
            if (std::abs(contrib) < 1e-22L * (std::abs(sum) + 1e-30L)) break;
        }
        return cplx(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    }
    // f,g auxiliary series (A&S 7.3.27/28), truncated at the smallest term.
    long double u = 3.14159265358979323846264338327950288L * x * x;  // pi x^2
    long double t = 1.0L / u;
    long double f = 0.0L, g = 0.0L, term = 1.0L, prev = 1e30L;
    for (int m = 0; m < 40; ++m) {
        // term = (4m-1)!! t^{2m} entering f; next factor gives g's (4m+1)!! t^{2m+1}
        if (std::abs(term) > prev) break;
        prev = std::abs(term);
        f += (m & 1) ? -term : term;
        long double gterm = term * (4 * m + 1) * t;
        g += (m & 1) ? -gterm : gterm;
        term = gterm * (4 * m + 3) * t;
    }
    long double inv_pix = 1.0L / (3.14159265358979323846264338327950288L * x);
    f *= inv_pix;
    g *= inv_pix;
    long double ph = 1.5707963267948966192313216916397514L * x * x;  // pi x^2 / 2
    long double sp = std::sin(ph), cp = std::cos(ph);
    long double C = 0.5L + f * sp - g * cp;
    long double S = 0.5L - f * cp - g * sp;
    return cplx(static_cast<double>(C), static_cast<double>(S));
}

// I(c) = int_{-1}^{1} e(c y^2) dy = E(2 sqrt(c)) / sqrt(c); conjugate for c < 0.
cplx box_integral(double c) {
    if (c == 0.0) return cplx(2.0, 0.0);
    double a = std::abs(c), r = std::sqrt(a);
    cplx v = fresnel_e(2.0 * r) / r;
    return c > 0 ? v : std::conj(v);
}

}  // namespace

double sigma_infinity_fiber(const CoeffVector& x, double tol, bool* definite) {
    if (definite) *definite = false;
    if (tol <= 0.0) throw std::invalid_argument("sigma_infinity_fiber: tol <= 0");
    if (!x.all_nonzero()) throw std::invalid_argument("sigma_infinity_fiber: zero coefficient");

    bool pos = false, neg = false;
    for (arith::i64 e : x.entries) (e > 0 ? pos : neg) = true;
    if (!(pos && neg)) {
        if (definite) *definite = true;
        return 0.0;
    }

    double ax[4], xmin = 1e300, sum_ax = 0.0, sqrt_delta = 1.0;
    for (int i = 0; i < 4; ++i) {
        ax[i] = std::abs(static_cast<double>(x.entries[i]));
        xmin = std::min(xmin, ax[i]);
        sum_ax += ax[i];
        sqrt_delta *= std::sqrt(ax[i]);
    }
    // Tail remainder after subtracting the leading asymptotic term:
    // |Pi I - Pi (sigma_i / sqrt(theta ax_i))| <= S_K / theta^{5/2} for theta
    // past the Fresnel crossover, giving int_T^inf error <= (2/3) S_K T^{-3/2}.
    double S_K = 0.0;
    for (int j = 0; j < 4; ++j) {
        double t = 0.5 / ax[j];
        for (int k = 0; k < 4; ++k)
            if (k != j) t *= 0.8 / std::sqrt(ax[k]);
        S_K += t;
    }
    double T = std::max(16.0 / xmin, std::pow(8.0 * S_K / (3.0 * tol), 2.0 / 3.0));
    double h = 1.0 / (4.0 * sum_ax);  // bounded phase increment per panel
    long long n_panels = static_cast<long long>(std::ceil(T / h));
    if (n_panels > 4000000) n_panels = 4000000;
    h = T / n_panels;

    quad::GLRule rule = quad::gl_rule(8);
    std::vector<cplx> panel(n_panels);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long p = 0; p < n_panels; ++p) {
        double mid = (p + 0.5) * h;
        cplx acc(0.0, 0.0);
        for (int i = 0; i < rule.n; ++i) {
            double theta = mid + 0.5 * h * rule.x[i];
            cplx prod(1.0, 0.0);
            for (int j = 0; j < 4; ++j)
                prod *= box_integral(-theta * static_cast<double>(x.entries[j]));
            acc += rule.w[i] * prod;
        }
        panel[p] = acc * (0.5 * h);
    }
    cplx J(0.0, 0.0);
    for (long long p = 0; p < n_panels; ++p) J += panel[p];

    cplx tail_coef(1.0, 0.0);
    for (arith::i64 e : x.entries)
        tail_coef *= (e > 0) ? cplx(0.5, -0.5) : cplx(0.5, 0.5);
    cplx tail = tail_coef / (sqrt_delta * T);
    return 2.0 * (J + tail).real();
}

namespace {

// Densities of x u^2, u ~ [-1,1] with Lebesgue (mass-2) normalization:
// nu_p(v) = 1/sqrt(p v) on (0, p], mirrored for negative coefficients.

// (nu_p * nu_q)(s), both positive coefficients; support (0, p+q).
double conv_pp(double p, double q, double s) {
    if (s <= 0.0 || s >= p + q) return 0.0;
    double u1 = std::max(0.0, s - q), u2 = std::min(p, s);
    if (u2 <= u1) return 0.0;
    double a2 = std::sqrt(std::min(1.0, u2 / s));
    double a1 = std::sqrt(std::min(1.0, u1 / s));
    return 2.0 / std::sqrt(p * q) * (std::asin(a2) - std::asin(a1));
}

// (nu_p * nu_{-q})(s): positive coefficient p, negative of magnitude q;
// support (-q, p), logarithmic singularity at s = 0.
double conv_pm(double p, double q, double s) {
    if (s <= -q || s >= p) return 0.0;
    double u1 = std::max(0.0, s), u2 = std::min(p, s + q);
    if (u2 <= u1) return 0.0;
    double b2 = std::sqrt(u2) + std::sqrt(std::max(0.0, u2 - s));
    double b1 = std::sqrt(u1) + std::sqrt(std::max(0.0, u1 - s));
    if (b1 <= 0.0) return 1e300;  // only reachable at the s = 0 breakpoint itself
    return 2.0 / std::sqrt(p * q) * std::log(b2 / b1);
}

struct PairDensity {
    int type;  // 0: ++ (p,q), 1: -- (p,q magnitudes), 2: +- (p positive, q magnitude)
    double p, q;

    double operator()(double s) const {
        switch (type) {
            case 0: return conv_pp(p, q, s);
            case 1: return conv_pp(p, q, -s);
            default: return conv_pm(p, q, s);
        }
    }
    double lo() const { return type == 0 ? 0.0 : (type == 1 ? -(p + q) : -q); }
    double hi() const { return type == 0 ? p + q : (type == 1 ? 0.0 : p); }
    void breakpoints(std::vector<double>& bp) const {
        if (type == 0) { bp.push_back(p); bp.push_back(q); }
        else if (type == 1) { bp.push_back(-p); bp.push_back(-q); }
        else { bp.push_back(0.0); bp.push_back(p - q); }
    }
};

}  // namespace

double sigma_exact(const std::array<double, 4>& x, int grading) {
    std::vector<double> P, N;
    for (double e : x) {
        if (e == 0.0) throw std::invalid_argument("sigma_exact: zero coefficient");
        (e > 0 ? P : N).push_back(std::abs(e));
    }
    if (P.empty() || N.empty()) return 0.0;
    if (P.size() < N.size()) std::swap(P, N);  // sigma(x) = sigma(-x)

    PairDensity A{0, P[0], P[1], };
    PairDensity B = (P.size() == 3) ? PairDensity{2, P[2], N[0]}
                                    : PairDensity{1, N[0], N[1]};

    // sigma = int f_A(s) f_B(-s) ds over the overlap of the supports.
    double lo = std::max(A.lo(), -B.hi());
    double hi = std::min(A.hi(), -B.lo());
    if (hi <= lo) return 0.0;

    std::vector<double> bp{lo, hi};
    A.breakpoints(bp);
    std::vector<double> bb;
    B.breakpoints(bb);
    for (double t : bb) bp.push_back(-t);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [&](double a, double b) { return std::abs(a - b) < 1e-14 * (hi - lo); }),
             bp.end());

    quad::GLRule rule = quad::gl_rule(8);
    auto f = [&](double s) { return A(s) * B(-s); };
    // Each half-subinterval is covered by dyadic panels graded toward its
    // endpoint, absorbing the sqrt/log endpoint singularities.
    auto graded_half = [&](double from, double to) {  // singular end at `from`
        double L = to - from;
        double total = 0.0;
        double prev = 0.0;  // offset from `from`
        for (int k = grading; k >= 0; --k) {
            double next = L * std::ldexp(1.0, -k);
            double a = from + prev, b = from + next;
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            double acc = 0.0;
            for (int i = 0; i < rule.n; ++i) acc += rule.w[i] * f(mid + half * rule.x[i]);
            total += acc * half;
            prev = next;
        }
        return total;
    };

    double total = 0.0;
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        double a = bp[i], b = bp[i + 1];
        if (b <= lo || a >= hi) continue;
        double mid = 0.5 * (a + b);
        total += graded_half(a, mid);
        // mirror: grade toward b
        double L = b - mid;
        double prev = 0.0;
        for (int k = grading; k >= 0; --k) {
            double next = L * std::ldexp(1.0, -k);
            double pa = b - next, pb = b - prev;
            double m2 = 0.5 * (pa + pb), h2 = 0.5 * (pb - pa);
            double acc = 0.0;
            for (int j = 0; j < rule.n; ++j) acc += rule.w[j] * f(m2 + h2 * rule.x[j]);
            total += acc * h2;
            prev = next;
        }
    }
    return total;
}

double sigma_infinity_weighted(const SmoothWeight& w, const CoeffVector& x, double tol) {
    double fiber = sigma_infinity_fiber(x, tol);
    if (w.kind == SmoothWeight::indicator_w0) return fiber;
    return fiber * w.moment();
}

}  // namespace qbl::geom
