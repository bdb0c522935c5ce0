// Command-line dispatch, report serialization, JSONL result cache.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "qbl/arith.hpp"

namespace qbl::cli {

using arith::i64;

struct RunConfig {
    std::string command;  // count, fiber-y, fiber-x, constants, series, verify
    i64 bound = 0;
    double radius = -1.0;
    i64 ybound = -1;
    std::array<i64, 4> xvec{}, yvec{};
    bool has_x = false, has_y = false;
    std::string split = "auto";
    std::string filter = "none";
    std::string method = "both";
    std::string suite = "quick";
    double tol = 1e-3;
    i64 prime_bound = 10000;
    int rmax = 8;
    double eta = 0.01;
    int threads = 0;  // 0 = library default
    std::string cache_dir;  // empty: QBL_CACHE_DIR, then ./cache
    std::string out;        // empty: stdout
    std::string format = "json";
};

std::string code_version();

// Runs the mapped library operation, writes the report, appends to the cache.
// Returns the process exit code: 0 ok, 1 verify failure, 2 usage, 3 numerical.
int dispatch(const RunConfig& cfg);

// argv-style front end (CLI11 parsing + dispatch); used by the binary and by
// in-process CLI tests.
int run_cli(const std::vector<std::string>& args);

}  // namespace qbl::cli
