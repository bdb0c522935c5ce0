#include "qbl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbl::quad {

namespace {

struct NodeSet {
    std::vector<double> x, w;
};

// Newton iteration on P_n; plenty accurate for the orders used here.
NodeSet compute_gl(int n) {
    NodeSet s;
    s.x.resize(n);
    s.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        s.x[i] = t;
        s.w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return s;
}

const NodeSet& nodes(int n) {
    static const NodeSet n4 = compute_gl(4);
    static const NodeSet n8 = compute_gl(8);
    static const NodeSet n12 = compute_gl(12);
    static const NodeSet n16 = compute_gl(16);
    static const NodeSet n20 = compute_gl(20);
    switch (n) {
        case 4: return n4;
        case 8: return n8;
        case 12: return n12;
        case 16: return n16;
        case 20: return n20;
        default: throw std::invalid_argument("gl_rule: unsupported order");
    }
}

}  // namespace

GLRule gl_rule(int n) {
    const NodeSet& s = nodes(n);
    return GLRule{s.x.data(), s.w.data(), n};
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order, int panels) {
    GLRule r = gl_rule(order);
    double total = 0.0, comp = 0.0;
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + 0.5 * h;
        double acc = 0.0;
        for (int i = 0; i < r.n; ++i) acc += r.w[i] * f(mid + 0.5 * h * r.x[i]);
        acc *= 0.5 * h;
        double y = acc - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

namespace {

struct Cell {
    Box3 box;
    double value;
    double err;
};

void eval_cell(const std::function<double(double, double, double)>& f, Cell& c,
               int lo_order, int hi_order) {
    GLRule rl = gl_rule(lo_order), rh = gl_rule(hi_order);
    std::array<double, 3> mid, half;
    for (int d = 0; d < 3; ++d) {
        mid[d] = 0.5 * (c.box.lo[d] + c.box.hi[d]);
        half[d] = 0.5 * (c.box.hi[d] - c.box.lo[d]);
    }
    double vol = 8.0 * half[0] * half[1] * half[2];
    auto tensor = [&](const GLRule& r) {
        double acc = 0.0;
        for (int i = 0; i < r.n; ++i) {
            double xi = mid[0] + half[0] * r.x[i];
            for (int j = 0; j < r.n; ++j) {
                double xj = mid[1] + half[1] * r.x[j];
                double wij = r.w[i] * r.w[j];
                double row = 0.0;
                for (int k = 0; k < r.n; ++k)
                    row += r.w[k] * f(xi, xj, mid[2] + half[2] * r.x[k]);
                acc += wij * row;
            }
        }
        return acc * vol / 8.0;
    };
    double vlo = tensor(rl);
    double vhi = tensor(rh);
    c.value = vhi;
    c.err = std::abs(vhi - vlo);
}

}  // namespace

Adaptive3Result integrate_adaptive3(const std::function<double(double, double, double)>& f,
                                    const Box3& box, double tol_abs, int max_cells,
                                    int lo_order, int hi_order) {
    Adaptive3Result res;
    std::vector<Cell> cells;
    cells.push_back(Cell{box, 0.0, 0.0});
    eval_cell(f, cells[0], lo_order, hi_order);
    std::int64_t evals = static_cast<std::int64_t>(lo_order) * lo_order * lo_order +
                         static_cast<std::int64_t>(hi_order) * hi_order * hi_order;
    res.evaluations = evals;

    while (static_cast<int>(cells.size()) < max_cells) {
        double total_err = 0.0, max_err = 0.0;
        for (const Cell& c : cells) {
            total_err += c.err;
            max_err = std::max(max_err, c.err);
        }
        if (total_err <= tol_abs) {
            res.converged = true;
            break;
        }
        // Refine a wave of the worst cells.
        double cut = std::max(0.25 * max_err, tol_abs / (4.0 * cells.size()));
        std::vector<int> wave;
        for (int i = 0; i < static_cast<int>(cells.size()); ++i)
            if (cells[i].err >= cut) wave.push_back(i);
        if (wave.empty()) break;
        int budget_left = max_cells - static_cast<int>(cells.size());
        if (static_cast<int>(wave.size()) > budget_left) wave.resize(budget_left);

        std::vector<Cell> children(2 * wave.size());
        for (size_t k = 0; k < wave.size(); ++k) {
            const Cell& parent = cells[wave[k]];
            int axis = 0;
            double len = 0.0;
            for (int d = 0; d < 3; ++d) {
                double L = parent.box.hi[d] - parent.box.lo[d];
                if (L > len) { len = L; axis = d; }
            }
            double m = 0.5 * (parent.box.lo[axis] + parent.box.hi[axis]);
            Cell a{parent.box, 0, 0}, b{parent.box, 0, 0};
            a.box.hi[axis] = m;
            b.box.lo[axis] = m;
            children[2 * k] = a;
            children[2 * k + 1] = b;
        }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(children.size()); ++k)
            eval_cell(f, children[k], lo_order, hi_order);
        res.evaluations += static_cast<std::int64_t>(children.size()) *
                           (static_cast<std::int64_t>(lo_order) * lo_order * lo_order +
                            static_cast<std::int64_t>(hi_order) * hi_order * hi_order);

        // Replace refined cells in place, append the second children; order is
        // a fixed function of the refinement history.
        for (size_t k = 0; k < wave.size(); ++k) cells[wave[k]] = children[2 * k];
        for (size_t k = 0; k < wave.size(); ++k) cells.push_back(children[2 * k + 1]);
    }

    double total = 0.0, comp = 0.0, err = 0.0;
    for (const Cell& c : cells) {
        double y = c.value - comp;
        double t = total + y;
        comp = (t - total) - y;
        total = t;
        err += c.err;
    }
    res.value = total;
    res.error_estimate = err;
    res.cells = static_cast<int>(cells.size());
    if (err <= tol_abs) res.converged = true;
    return res;
}

}  // namespace qbl::quad
