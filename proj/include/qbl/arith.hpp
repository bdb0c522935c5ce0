// Exact integer and multiplicative-function utilities shared by all modules.
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace qbl::arith {

using boost::multiprecision::cpp_int;
using Rat = boost::rational<cpp_int>;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

i64 gcd(i64 a, i64 b);
i64 gcd4(i64 a, i64 b, i64 c, i64 d);

// Floor square root for n >= 0.
i64 isqrt(i64 n);
cpp_int isqrt(const cpp_int& n);

// True iff n = k^2 for some k >= 0. Negative inputs are not squares; 0 is.
bool is_square(i64 n);
bool is_square(const cpp_int& n);

// Residue prefilter tables (mod 64 / mod 63) for the hot enumeration path.
extern const std::array<bool, 64> square_mod64;
extern const std::array<bool, 63> square_mod63;

inline bool is_square_fast(i64 n) {
    if (n < 0) return false;
    if (!square_mod64[static_cast<u64>(n) & 63]) return false;
    if (!square_mod63[static_cast<u64>(n) % 63]) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

// (prime, exponent) pairs, ascending primes. Trial division with a 2-3-5 wheel.
using Factorization = std::vector<std::pair<i64, int>>;
Factorization factor(i64 n);

i64 mobius(i64 n);
i64 euler_phi(i64 n);
cpp_int euler_phi_pp(i64 p, int f);  // phi(p^f)

// Primes up to n inclusive.
std::vector<i64> primes_up_to(i64 n);

// Jacobi symbol (a|n) for odd n >= 1. Throws on even or nonpositive n.
int jacobi_symbol(i64 a, i64 n);

// Kronecker symbol (a|n), extending Jacobi to all n != 0.
int kronecker_symbol(i64 a, i64 n);

// Ramanujan sum c_q(N) via mu(q/g) phi(q) / phi(q/g), g = gcd(q, N).
i64 ramanujan_sum(i64 q, i64 N);

// Modular inverse of a mod m, gcd(a,m) = 1.
i64 inv_mod(i64 a, i64 m);
i64 mul_mod(i64 a, i64 b, i64 m);
i64 pow_mod(i64 b, i64 e, i64 m);

// varpi(m) = prod_{p|m} (1 + 1/p).
Rat varpi(i64 m);

// A 4-vector of integer coefficients with primitivity / discriminant metadata.
struct CoeffVector {
    std::array<i64, 4> entries{};
    i64 gcd = 0;              // gcd of the entries (0 only for the zero vector)
    cpp_int delta;            // x1 x2 x3 x4
    cpp_int delta_bad;        // square-full part of |delta|; 1 when delta = 0

    bool primitive() const { return gcd == 1; }
    bool all_nonzero() const {
        return entries[0] != 0 && entries[1] != 0 && entries[2] != 0 && entries[3] != 0;
    }
    i64 sup_norm() const;
};

CoeffVector make_coeff_vector(i64 a, i64 b, i64 c, i64 d);
CoeffVector make_coeff_vector(const std::array<i64, 4>& e);

// Square-full part of |x1 x2 x3 x4|. Throws on a zero entry.
cpp_int delta_bad(const CoeffVector& x);

}  // namespace qbl::arith
