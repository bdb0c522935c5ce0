#include "qbl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbl::arith {

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 gcd4(i64 a, i64 b, i64 c, i64 d) {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::gcd(std::abs(c), std::abs(d)));
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

cpp_int isqrt(const cpp_int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return boost::multiprecision::sqrt(n);
}

bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

bool is_square(const cpp_int& n) {
    if (n < 0) return false;
    cpp_int r = boost::multiprecision::sqrt(n);
    return r * r == n;
}

namespace {
std::array<bool, 64> make_sq64() {
    std::array<bool, 64> t{};
    for (int i = 0; i < 64; ++i) t[(i * i) & 63] = true;
    return t;
}
std::array<bool, 63> make_sq63() {
    std::array<bool, 63> t{};
    for (int i = 0; i < 63; ++i) t[(i * i) % 63] = true;
    return t;
}
}  // namespace

const std::array<bool, 64> square_mod64 = make_sq64();
const std::array<bool, 63> square_mod63 = make_sq63();

Factorization factor(i64 n) {
    if (n == 0) throw std::domain_error("factor: zero argument");
    if (n < 0) n = -n;
    Factorization f;
    for (i64 p : {i64{2}, i64{3}, i64{5}}) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) f.emplace_back(p, e);
    }
    // 2-3-5 wheel
    static const int wheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    i64 p = 7;
    int w = 0;
    while (p * p <= n) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            f.emplace_back(p, e);
        }
        p += wheel[w];
        w = (w + 1) & 7;
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

i64 mobius(i64 n) {
    if (n <= 0) throw std::domain_error("mobius: nonpositive argument");
    auto f = factor(n);
    for (auto& [p, e] : f)
        if (e > 1) return 0;
    return (f.size() % 2 == 0) ? 1 : -1;
}

i64 euler_phi(i64 n) {
    if (n <= 0) throw std::domain_error("euler_phi: nonpositive argument");
    i64 r = n;
    for (auto& [p, e] : factor(n)) r = r / p * (p - 1);
    return n == 1 ? 1 : r;
}

cpp_int euler_phi_pp(i64 p, int f) {
    if (f == 0) return 1;
    cpp_int r = 1;
    for (int i = 0; i < f - 1; ++i) r *= p;
    return r * (p - 1);
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<i64> ps;
    if (n < 2) return ps;
    std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
    for (i64 i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (i64 j = i * i; j <= n; j += i) comp[j] = true;
        }
    }
    return ps;
}

int jacobi_symbol(i64 a, i64 n) {
    if (n <= 0 || n % 2 == 0) throw std::domain_error("jacobi_symbol: n must be positive odd");
    a %= n;
    if (a < 0) a += n;
    int s = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            i64 r = n % 8;
            if (r == 3 || r == 5) s = -s;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) s = -s;
        a %= n;
    }
    return n == 1 ? s : 0;
}

int kronecker_symbol(i64 a, i64 n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int s = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) s = -s;
    }
    int e = 0;
    while (n % 2 == 0) { n /= 2; ++e; }
    if (e) {
        if (a % 2 == 0) return 0;
        i64 r = ((a % 8) + 8) % 8;
        if ((e & 1) && (r == 3 || r == 5)) s = -s;
    }
    return s * jacobi_symbol(a, n);
}

i64 ramanujan_sum(i64 q, i64 N) {
    if (q < 1) throw std::domain_error("ramanujan_sum: q must be positive");
    i64 g = std::gcd(q, std::abs(N) % q);
    if (N == 0) g = q;
    i64 m = q / g;
    i64 mu = mobius(m);
    if (mu == 0) return 0;
    return mu * (euler_phi(q) / euler_phi(m));
}

i64 inv_mod(i64 a, i64 m) {
    a %= m;
    if (a < 0) a += m;
    i64 t = 0, nt = 1, r = m, nr = a;
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error("inv_mod: arguments not coprime");
    return t < 0 ? t + m : t;
}

i64 mul_mod(i64 a, i64 b, i64 m) {
    return static_cast<i64>(static_cast<i128>(a) * b % m);
}

i64 pow_mod(i64 b, i64 e, i64 m) {
    b %= m;
    if (b < 0) b += m;
    i64 r = 1 % m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

Rat varpi(i64 m) {
    if (m <= 0) throw std::domain_error("varpi: nonpositive argument");
    Rat r(1);
    for (auto& [p, e] : factor(m)) r *= Rat(cpp_int(p + 1), cpp_int(p));
    return m == 1 ? Rat(1) : r;
}

i64 CoeffVector::sup_norm() const {
    i64 m = 0;
    for (i64 v : entries) m = std::max(m, std::abs(v));
    return m;
}

CoeffVector make_coeff_vector(const std::array<i64, 4>& e) {
    CoeffVector x;
    x.entries = e;
    x.gcd = gcd4(e[0], e[1], e[2], e[3]);
    x.delta = cpp_int(e[0]) * e[1] * e[2] * e[3];
    if (x.delta == 0) {
        x.delta_bad = 1;
    } else {
        // Merge the factorizations of the entries; no big-integer factoring needed.
        Factorization merged;
        for (i64 v : e) {
            for (auto& [p, k] : factor(v)) {
                auto it = std::find_if(merged.begin(), merged.end(),
                                       [&](auto& pe) { return pe.first == p; });
                if (it == merged.end()) merged.emplace_back(p, k);
                else it->second += k;
            }
        }
        cpp_int bad = 1;
        for (auto& [p, k] : merged)
            if (k >= 2)
                for (int i = 0; i < k; ++i) bad *= p;
        x.delta_bad = bad;
    }
    return x;
}

CoeffVector make_coeff_vector(i64 a, i64 b, i64 c, i64 d) {
    return make_coeff_vector(std::array<i64, 4>{a, b, c, d});
}

cpp_int delta_bad(const CoeffVector& x) {
    if (!x.all_nonzero()) throw std::domain_error("degenerate coefficient vector");
    return x.delta_bad;
}

}  // namespace qbl::arith
