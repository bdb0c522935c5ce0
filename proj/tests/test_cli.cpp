#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qbl/cli.hpp"
#include "qbl/enumerate.hpp"
#include "qbl/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using qbl::cli::run_cli;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qbl_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str(const char* leaf) const { return (path / leaf).string(); }
    static inline int counter = 0;
};

json load(const std::string& file) {
    std::ifstream in(file);
    REQUIRE(in.good());
    return json::parse(in);
}

}  // namespace

TEST_CASE("count command writes a schema-conformant report") {
    TempDir tmp;
    int rc = run_cli({"count", "--bound", "100", "--split", "y-side", "--cache",
                      tmp.str("cache"), "--out", tmp.str("r.json")});
    CHECK(rc == 0);
    json r = load(tmp.str("r.json"));
    CHECK(r["schema_version"] == 1);
    CHECK(r["command"] == "count");
    CHECK(r["params"]["bound"] == 100);
    CHECK(r["result"]["count"].is_number_integer());
    CHECK(r["provenance"]["code_version"] == qbl::cli::code_version());
    CHECK(r["provenance"].contains("created_at"));
}

TEST_CASE("cache hits skip recomputation and reproduce the payload") {
    TempDir tmp;
    REQUIRE(run_cli({"count", "--bound", "200", "--split", "y-side", "--cache",
                     tmp.str("cache"), "--out", tmp.str("a.json")}) == 0);
    long long after_first = qbl::enumc::invocation_count.load();
    REQUIRE(run_cli({"count", "--bound", "200", "--split", "y-side", "--cache",
                     tmp.str("cache"), "--out", tmp.str("b.json")}) == 0);
    CHECK(qbl::enumc::invocation_count.load() == after_first);  // no recompute
    json a = load(tmp.str("a.json")), b = load(tmp.str("b.json"));
    a["provenance"].erase("created_at");
    b["provenance"].erase("created_at");
    CHECK(a == b);
    // A different parameter is a cache miss.
    REQUIRE(run_cli({"count", "--bound", "300", "--split", "y-side", "--cache",
                     tmp.str("cache"), "--out", tmp.str("c.json")}) == 0);
    CHECK(qbl::enumc::invocation_count.load() == after_first + 1);
}

TEST_CASE("QBL_CACHE_DIR is honored") {
    TempDir tmp;
    ::setenv("QBL_CACHE_DIR", tmp.str("envcache").c_str(), 1);
    REQUIRE(run_cli({"fiber-x", "--x", "1,1,1,-1", "--ybound", "1", "--out",
                     tmp.str("r.json")}) == 0);
    ::unsetenv("QBL_CACHE_DIR");
    CHECK(fs::exists(tmp.str("envcache") + std::string("/records.jsonl")));
    json r = load(tmp.str("r.json"));
    CHECK(r["result"]["count"] == 12);
    CHECK(r["result"]["thin"] == false);
}

TEST_CASE("fiber-y command") {
    TempDir tmp;
    REQUIRE(run_cli({"fiber-y", "--y", "1,1,1,1", "--radius", "1", "--cache",
                     tmp.str("cache"), "--out", tmp.str("r.json")}) == 0);
    json r = load(tmp.str("r.json"));
    CHECK(r["result"]["count"] == 19);
    CHECK(r["result"]["det_squared"] == 4);
    CHECK(r["result"]["successive_minima"] == json::array({1, 1, 1}));
}

TEST_CASE("series command and csv output") {
    TempDir tmp;
    REQUIRE(run_cli({"series", "--x", "1,1,1,-1", "--prime-bound", "500", "--cache",
                     tmp.str("cache"), "--out", tmp.str("r.csv"), "--format",
                     "csv"}) == 0);
    std::ifstream in(tmp.str("r.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "key,value");
    bool has_value = false;
    for (std::string line; std::getline(in, line);)
        if (line.rfind("result.value,", 0) == 0) has_value = true;
    CHECK(has_value);
}

TEST_CASE("exit codes") {
    TempDir tmp;
    // Usage errors: unknown subcommand, bad flag, malformed vector.
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"count", "--no-such-flag", "3"}) == 2);
    CHECK(run_cli({"fiber-x", "--x", "1,2,3", "--ybound", "5"}) == 2);
    // Numerically inadmissible input: square discriminant series diverges.
    CHECK(run_cli({"series", "--x", "1,1,1,1", "--prime-bound", "100", "--cache",
                   tmp.str("cache"), "--out", tmp.str("r.json")}) == 3);
    // Degenerate fiber: zero coefficient.
    CHECK(run_cli({"fiber-x", "--x", "1,0,1,-1", "--ybound", "5", "--cache",
                   tmp.str("cache"), "--out", tmp.str("r2.json")}) == 3);
}

TEST_CASE("verify failure propagates as exit code 1") {
    // Library-level: the corrupted closed form must flip the psi check.
    qbl::ver::corrupt_psi_for_test = true;
    qbl::ver::CheckResult bad = qbl::ver::check_psi(false);
    qbl::ver::corrupt_psi_for_test = false;
    CHECK(!bad.passed);
    qbl::ver::CheckResult good = qbl::ver::check_psi(false);
    CHECK(good.passed);
}
