// Acceptance gate: runs every verification at full scale and prints one
// pass/fail line per criterion as it completes. Exit status is the number
// of failures.
#include <cstdio>
#include <functional>
#include <vector>

#include "qbl/verify.hpp"

int main() {
    using qbl::ver::CheckResult;
    std::vector<std::function<CheckResult(bool)>> checks{
        qbl::ver::check_rho,       qbl::ver::check_gauss,
        qbl::ver::check_sq,        qbl::ver::check_psi,
        qbl::ver::check_nfull,     qbl::ver::check_schindler,
        qbl::ver::check_tau,       qbl::ver::check_lattice,
        qbl::ver::check_localdens, qbl::ver::check_m1_slope,
        qbl::ver::check_counts,    qbl::ver::check_theorem_desk};
    int failures = 0, idx = 0;
    for (const auto& check : checks) {
        CheckResult r = check(true);
        ++idx;
        if (!r.passed) ++failures;
        std::printf("criterion %02d %-20s [%s] (%.1fs)%s%s\n", idx, r.name.c_str(),
                    r.passed ? "pass" : "FAIL", r.seconds,
                    r.detail.empty() ? "" : " -- ", r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", idx - failures, idx);
    return failures;
}
