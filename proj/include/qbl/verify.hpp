// Acceptance criteria as named machine-checkable verifications.
#pragma once

#include <array>
#include <atomic>
#include <string>
#include <vector>

namespace qbl::ver {

struct CheckResult {
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

// Test hook: when set, the psi check evaluates a corrupted closed form and
// must fail; exercises failure propagation through verify.
extern std::atomic<bool> corrupt_psi_for_test;

// Oracle: rho_infinity by quadrature of the defining theta-integral,
// (16/pi) int_0^T prod_j sinc(a_j t) dt plus an analytic oscillatory tail.
double rho_infinity_numeric(const std::array<double, 4>& y);

CheckResult check_rho(bool full);
CheckResult check_gauss(bool full);
CheckResult check_sq(bool full);
CheckResult check_psi(bool full);
CheckResult check_nfull(bool full);
CheckResult check_schindler(bool full);
CheckResult check_tau(bool full);
CheckResult check_lattice(bool full);
CheckResult check_localdens(bool full);
CheckResult check_m1_slope(bool full);
CheckResult check_counts(bool full);
CheckResult check_theorem_desk(bool full);

// suite: "quick" (reduced parameters) or "full" (acceptance-scale).
std::vector<CheckResult> run_suite(const std::string& suite);

}  // namespace qbl::ver
