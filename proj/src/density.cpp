#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qbl/geometry.hpp"
#include "qbl/quadrature.hpp"

namespace qbl::geom {

double ExactDensity::to_double() const {
    double v = arith::to_double(rational_part);
    if (radicand != 1) v *= std::sqrt(static_cast<double>(radicand));
    return v;
}

ExactDensity rho_infinity(const CoeffVector& y) {
    std::vector<cpp_int> a;
    for (arith::i64 e : y.entries)
        if (e != 0) a.push_back(cpp_int(e) * e);
    const int m = static_cast<int>(a.size());
    if (m == 0) throw std::invalid_argument("rho_infinity: zero vector");
    if (m == 1) return ExactDensity{Rat(8, a[0]), 1};

    cpp_int A = 0, denom_prod = 1, fact = 1;
    for (const cpp_int& aj : a) {
        A += aj;
        denom_prod *= 2 * aj;
    }
    for (int k = 2; k < m; ++k) fact *= k;

    cpp_int num = 0;
    for (int S = 0; S < (1 << m); ++S) {
        cpp_int t = A;
        int bits = 0;
        for (int j = 0; j < m; ++j)
            if (S >> j & 1) {
                t -= 2 * a[j];
                ++bits;
            }
        if (t <= 0) continue;
        cpp_int pw = 1;
        for (int k = 0; k < m - 1; ++k) pw *= t;
        num += (bits & 1) ? -pw : pw;
    }
    return ExactDensity{Rat(16 * num, fact * denom_prod), 1};
}

double rho_infinity(const std::array<double, 4>& y) {
    double a[4];
    int m = 0;
    for (double e : y)
        if (e != 0.0) a[m++] = e * e;
    if (m == 0) throw std::invalid_argument("rho_infinity: zero vector");
    if (m == 1) return 8.0 / a[0];

    double A = 0.0, denom = 1.0;
    for (int j = 0; j < m; ++j) {
        A += a[j];
        denom *= 2.0 * a[j];
    }
    double fact = 1.0;
    for (int k = 2; k < m; ++k) fact *= k;

    // Alternating sum with heavy cancellation: sort descending, compensated add.
    double terms[16];
    int nt = 0;
    for (int S = 0; S < (1 << m); ++S) {
        double t = A;
        int bits = 0;
        for (int j = 0; j < m; ++j)
            if (S >> j & 1) {
                t -= 2.0 * a[j];
                ++bits;
            }
        if (t <= 0.0) continue;
        double pw = 1.0;
        for (int k = 0; k < m - 1; ++k) pw *= t;
        terms[nt++] = (bits & 1) ? -pw : pw;
    }
    std::sort(terms, terms + nt,
              [](double u, double v) { return std::abs(u) > std::abs(v); });
    double sum = 0.0, comp = 0.0;
    for (int i = 0; i < nt; ++i) {
        double yk = terms[i] - comp;
        double t = sum + yk;
        comp = (t - sum) - yk;
        sum = t;
    }
    return 16.0 * sum / (fact * denom);
}

namespace {

// Split n = k^2 * r with r squarefree (best effort for huge leftovers: trial
// division up to 10^6 covers every input the toolkit produces).
void squarefree_split(cpp_int n, cpp_int& k, cpp_int& r) {
    k = 1;
    r = 1;
    for (arith::i64 p = 2; p <= 1000000 && n > 1; p == 2 ? p = 3 : p += 2) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) k *= p;
        if (e & 1) r *= p;
    }
    if (n > 1) {
        cpp_int s = arith::isqrt(n);
        if (s * s == n)
            k *= s;
        else
            r *= n;
    }
}

}  // namespace

ExactDensity slice_volume(const CoeffVector& y) {
    ExactDensity rho = rho_infinity(y);
    cpp_int s = 0;
    for (arith::i64 e : y.entries) {
        cpp_int q = cpp_int(e) * e;
        s += q * q;
    }
    cpp_int k, r;
    squarefree_split(s, k, r);
    return ExactDensity{rho.rational_part * k, r};
}

namespace {

// exp(-1/t) smoothstep: 0 at t<=0, 1 at t>=1, C^inf.
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double f = std::exp(-1.0 / t);
    double g = std::exp(-1.0 / (1.0 - t));
    return f / (f + g);
}

}  // namespace

double SmoothWeight::profile(double s) const {
    s = std::abs(s);
    switch (kind) {
        case indicator_w0:
            return s <= 1.0 ? 1.0 : 0.0;
        case inner_w1:
            if (s <= eta || s >= 1.0) return 0.0;
            if (s < 2.0 * eta) return smoothstep((s - eta) / eta);
            if (s <= 1.0 - eta) return 1.0;
            return smoothstep((1.0 - s) / eta);
        case outer_w2:
            if (s <= eta || s >= 1.0 + eta) return 0.0;
            if (s < 2.0 * eta) return smoothstep((s - eta) / eta);
            if (s <= 1.0) return 1.0;
            return smoothstep((1.0 + eta - s) / eta);
    }
    return 0.0;
}

double SmoothWeight::eval(const std::array<double, 4>& u) const {
    double s = 0.0;
    for (double v : u) s = std::max(s, std::abs(v));
    return profile(s);
}

double SmoothWeight::moment() const {
    if (kind == indicator_w0) return 1.0;
    auto f = [this](double s) { return 2.0 * s * profile(s); };
    double knots[] = {0.0, eta, 2.0 * eta, 1.0 - eta, 1.0, 1.0 + eta};
    int nk = (kind == inner_w1) ? 5 : 6;
    std::sort(knots, knots + nk);
    double total = 0.0;
    for (int i = 0; i + 1 < nk; ++i)
        total += quad::integrate_gl(f, knots[i], knots[i + 1], 16, 8);
    return total;
}

}  // namespace qbl::geom
