// Benchmarks the OpenMP kernels against their serial reference
// implementations and reports throughput plus agreement.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qbl/enumerate.hpp"
#include "qbl/lattice.hpp"

namespace {

double secs_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    using namespace qbl;
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("qbl benchmark (threads: %d)\n", threads);

    {
        arith::CoeffVector y = arith::make_coeff_vector(3, -5, 7, 11);
        lat::FiberLattice L = lat::fiber_lattice_basis(y);
        double R = 60.0;
        auto t0 = std::chrono::steady_clock::now();
        long long fast = lat::count_fiber_box(L, R, lat::Filter::nonsquare_primitive);
        double tf = secs_since(t0);
        t0 = std::chrono::steady_clock::now();
        long long slow = lat::count_fiber_box_naive(y, R, lat::Filter::nonsquare_primitive);
        double ts = secs_since(t0);
        std::printf("fiber box R=%.0f: lattice %.3fs, naive %.3fs, speedup %.1fx, %s\n",
                    R, tf, ts, ts / tf, fast == slow ? "agree" : "MISMATCH");
    }

    {
        arith::CoeffVector x = arith::make_coeff_vector(1, 2, 3, -5);
        auto t0 = std::chrono::steady_clock::now();
        long long n = enumc::fiber_point_count(x, 1200);
        double tf = secs_since(t0);
        std::printf("fiber-x Y=1200: %lld points in %.3fs (OpenMP annulus kernel)\n", n,
                    tf);
    }

    {
        arith::i64 B = 50000;
        auto t0 = std::chrono::steady_clock::now();
        auto rep = enumc::count_points(B);
        double tf = secs_since(t0);
        std::printf("count B=%lld: %lld canonical points in %.3fs\n",
                    static_cast<long long>(B), rep.canonical_count, tf);
        arith::i64 Bn = 300;
        t0 = std::chrono::steady_clock::now();
        long long fast = enumc::count_points(Bn).canonical_count;
        double ta = secs_since(t0);
        t0 = std::chrono::steady_clock::now();
        long long naive = enumc::count_points_naive(Bn);
        double tn = secs_since(t0);
        std::printf("count B=%lld: split %.3fs vs naive %.3fs, speedup %.1fx, %s\n",
                    static_cast<long long>(Bn), ta, tn, tn / ta,
                    fast == naive ? "agree" : "MISMATCH");
    }
    return 0;
}
