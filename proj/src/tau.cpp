#include <cmath>
#include <stdexcept>
#include <vector>

#include "qbl/geometry.hpp"
#include "qbl/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbl::geom {

namespace {

// tau via sigma: (8/3) int_{[-1,1]^3} sigma(t,1) dt, split into sign octants
// (the all-positive one is definite, sigma = 0) and, within each octant,
// dyadic sup-norm shells toward the corner where sigma blows up like a
// negative half power. Boxes are integrated by tensor GL with a xi^2
// substitution on every coordinate that starts at 0.
struct ShellBox {
    double lo[3], hi[3];
};

double box_integral_gl(const std::array<int, 3>& sgn, const ShellBox& b, int order,
                       long long& evals) {
    quad::GLRule r = quad::gl_rule(order);
    double acc = 0.0;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            for (int k = 0; k < r.n; ++k) {
                double xi[3] = {0.5 * (r.x[i] + 1.0), 0.5 * (r.x[j] + 1.0),
                                0.5 * (r.x[k] + 1.0)};
                double w = r.w[i] * r.w[j] * r.w[k] * 0.125;
                double u[3];
                for (int d = 0; d < 3; ++d) {
                    double L = b.hi[d] - b.lo[d];
                    if (b.lo[d] == 0.0) {
                        u[d] = L * xi[d] * xi[d];
                        w *= L * 2.0 * xi[d];
                    } else {
                        u[d] = b.lo[d] + L * xi[d];
                        w *= L;
                    }
                }
                acc += w * sigma_exact({sgn[0] * u[0], sgn[1] * u[1], sgn[2] * u[2], 1.0});
                ++evals;
            }
    return acc;
}

TauEstimate tau_via_sigma(double tol) {
    std::array<std::array<int, 3>, 7> octants;
    {
        int n = 0;
        for (int m = 0; m < 8; ++m) {
            std::array<int, 3> s = {m & 1 ? -1 : 1, m & 2 ? -1 : 1, m & 4 ? -1 : 1};
            if (s[0] == 1 && s[1] == 1 && s[2] == 1) continue;  // definite octant
            octants[n++] = s;
        }
    }

    TauEstimate est;
    est.method = TauMethod::via_sigma;
    std::vector<std::array<int, 3>> schedule;  // {shells K, lo order, hi order}
    if (tol >= 2e-2)
        schedule = {{6, 4, 8}};
    else
        schedule = {{9, 8, 12}, {11, 12, 16}, {13, 16, 20}};
    for (auto [K, lo_ord, hi_ord] : schedule) {
        struct Task {
            std::array<int, 3> sgn;
            ShellBox box;
        };
        std::vector<Task> tasks;
        std::vector<double> shell_sum(K, 0.0);
        std::vector<int> shell_of;
        for (const auto& s : octants)
            for (int k = 0; k < K; ++k) {
                double h = std::ldexp(1.0, -k), m = 0.5 * h;
                tasks.push_back({s, {{m, 0, 0}, {h, h, h}}});
                tasks.push_back({s, {{0, m, 0}, {m, h, h}}});
                tasks.push_back({s, {{0, 0, m}, {m, m, h}}});
                shell_of.push_back(k);
                shell_of.push_back(k);
                shell_of.push_back(k);
            }
        std::vector<double> v_lo(tasks.size()), v_hi(tasks.size());
        std::vector<long long> ev(tasks.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(tasks.size()); ++i) {
            v_lo[i] = box_integral_gl(tasks[i].sgn, tasks[i].box, lo_ord, ev[i]);
            v_hi[i] = box_integral_gl(tasks[i].sgn, tasks[i].box, hi_ord, ev[i]);
        }
        double total = 0.0, err = 0.0;
        long long budget = 0;
        for (size_t i = 0; i < tasks.size(); ++i) {
            total += v_hi[i];
            err += std::abs(v_hi[i] - v_lo[i]);
            budget += ev[i];
            shell_sum[shell_of[i]] += v_hi[i];
        }
        // Geometric tail estimate for the unresolved corner cube.
        double tail = 0.0;
        double a = std::abs(shell_sum[K - 2]), b = std::abs(shell_sum[K - 1]);
        if (a > 0.0 && b < a) tail = b * (b / a) / (1.0 - b / a);
        else tail = b;
        total += tail;
        err += tail;

        est.value = (8.0 / 3.0) * total;
        est.abs_error_bound = (8.0 / 3.0) * err;
        est.sample_budget += budget;
        if (est.abs_error_bound <= tol) break;
    }
    return est;
}

}  // namespace

TauEstimate tau_infinity(TauMethod method, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("tau_infinity: tol <= 0");
    if (method == TauMethod::via_sigma) return tau_via_sigma(tol);

    // via_rho: 4 int_{[-1,1]^3} rho(t,1) dt = 32 int_{[0,1]^3} (even integrand).
    auto f = [](double a, double b, double c) {
        return rho_infinity(std::array<double, 4>{a, b, c, 1.0});
    };
    for (int max_cells : {20000, 80000}) {
        quad::Adaptive3Result res = quad::integrate_adaptive3(
            f, quad::Box3{{0, 0, 0}, {1, 1, 1}}, tol / 40.0, max_cells, 4, 8);
        if (res.converged || max_cells == 80000) {
            TauEstimate est;
            est.method = TauMethod::via_rho;
            est.value = 32.0 * res.value;
            est.abs_error_bound = std::max(32.0 * res.error_estimate, 1e-12);
            est.sample_budget = res.evaluations;
            return est;
        }
    }
    return {};
}

}  // namespace qbl::geom
