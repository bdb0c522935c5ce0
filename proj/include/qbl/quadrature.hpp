// Gauss-Legendre rules and a deterministic adaptive tensor integrator.
#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace qbl::quad {

// Nodes/weights on [-1,1].
struct GLRule {
    const double* x;
    const double* w;
    int n;
};

GLRule gl_rule(int n);  // n in {4, 8, 12, 16, 20}

// Composite GL over [a,b] with `panels` equal panels.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order, int panels);

struct Box3 {
    std::array<double, 3> lo, hi;
};

struct Adaptive3Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    int cells = 0;
    bool converged = false;
};

// Adaptive tensor-product integration over a 3-box. Cells are refined by
// bisecting their longest axis, worst estimated error first, until the summed
// estimate drops below tol_abs or the cell budget runs out. Per-cell estimates
// compare tensor GL rules of order `lo_order` and `hi_order`. Cell results are
// accumulated in a fixed order so the value is reproducible at a fixed budget
// independent of thread count.
Adaptive3Result integrate_adaptive3(const std::function<double(double, double, double)>& f,
                                    const Box3& box, double tol_abs, int max_cells,
                                    int lo_order = 4, int hi_order = 8);

}  // namespace qbl::quad
