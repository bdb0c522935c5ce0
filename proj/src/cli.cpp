#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qbl/cli.hpp"
#include "qbl/enumerate.hpp"
#include "qbl/expsums.hpp"
#include "qbl/geometry.hpp"
#include "qbl/lattice.hpp"
#include "qbl/localdens.hpp"
#include "qbl/verify.hpp"

namespace qbl::cli {

using json = nlohmann::ordered_json;
using arith::CoeffVector;

std::string code_version() { return "0.3.1"; }

namespace {

std::string now_iso8601() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string fingerprint(const std::string& command, const json& params) {
    std::string s = command + "|" + params.dump() + "|" + code_version();
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string resolve_cache_dir(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    if (const char* env = std::getenv("QBL_CACHE_DIR"); env && *env) return env;
    return "cache";
}

bool cache_lookup(const std::string& dir, const std::string& fp, json& out) {
    std::ifstream in(dir + "/records.jsonl");
    if (!in) return false;
    std::string line;
    bool found = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded()) continue;
        if (rec.value("fingerprint", "") == fp) {
            out = rec;  // last matching record wins
            found = true;
        }
    }
    return found;
}

void cache_append(const std::string& dir, const json& rec) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream out(dir + "/records.jsonl", std::ios::app);
    if (out) out << rec.dump() << "\n";
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json vec_json(const std::array<arith::i64, 4>& v) {
    return json::array({v[0], v[1], v[2], v[3]});
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (auto& [k, v] : j.items())
            flatten(v, prefix.empty() ? k : prefix + "." + k, rows);
    } else if (j.is_array()) {
        for (size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        rows.push_back({prefix, j.is_string() ? j.get<std::string>() : j.dump()});
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(const RunConfig& cfg, const json& report) {
    std::ostringstream os;
    if (cfg.format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        os << "key,value\n";
        for (auto& [k, v] : rows) os << csv_escape(k) << "," << csv_escape(v) << "\n";
    } else {
        os << report.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.out);
        if (!f) throw std::runtime_error("cannot open output file " + cfg.out);
        f << os.str();
    }
}

json tau_json(const geom::TauEstimate& t) {
    return json{{"value", t.value},
                {"method", t.method == geom::TauMethod::via_rho ? "rho" : "sigma"},
                {"abs_error_bound", t.abs_error_bound},
                {"sample_budget", t.sample_budget}};
}

// Result payload for each command; pure computation, no I/O.
json compute(const RunConfig& cfg, const json& params) {
    if (cfg.command == "count") {
        enumc::Split split = enumc::Split::automatic;
        if (cfg.split == "y-side") split = enumc::Split::y_side_only;
        else if (cfg.split == "x-side") split = enumc::Split::x_side_only;
        double cpey = 0.0;
        if (split == enumc::Split::automatic) {
            geom::TauEstimate tau = geom::tau_infinity(geom::TauMethod::via_rho, 5e-3);
            cpey = loc::peyre_constant(tau).c;
        }
        enumc::CountReport r = enumc::count_points(cfg.bound, split, cpey);
        return json{{"count", r.canonical_count},
                    {"thin_excluded", r.thin_excluded},
                    {"split_boundary", r.split_boundary},
                    {"peyre_constant", cpey},
                    {"predicted", r.predicted},
                    {"ratio", r.ratio},
                    {"elapsed_seconds", r.elapsed_seconds},
                    {"threads_used", r.thread_count}};
    }
    if (cfg.command == "fiber-y") {
        CoeffVector y = arith::make_coeff_vector(cfg.yvec);
        lat::FiberLattice L = lat::fiber_lattice_basis(y);
        auto minima = lat::successive_minima_sup(L);
        lat::Filter f = lat::Filter::none;
        if (cfg.filter == "nonsquare") f = lat::Filter::nonsquare;
        else if (cfg.filter == "nonsquare-primitive") f = lat::Filter::nonsquare_primitive;
        else if (cfg.filter == "primitive") f = lat::Filter::primitive;
        long long count = lat::count_fiber_box(L, cfg.radius, f);
        json basis = json::array();
        for (const auto& b : L.basis) basis.push_back(vec_json(b));
        return json{{"count", count},
                    {"filter", cfg.filter},
                    {"det_squared", static_cast<long long>(L.det_squared)},
                    {"basis", basis},
                    {"successive_minima", {minima[0], minima[1], minima[2]}},
                    {"shortest", vec_json(*L.shortest)}};
    }
    if (cfg.command == "fiber-x") {
        CoeffVector x = arith::make_coeff_vector(cfg.xvec);
        long long count = enumc::fiber_point_count(x, cfg.ybound);
        return json{{"count", count},
                    {"thin", enumc::thin_set_membership(x)},
                    {"discriminant", static_cast<long long>(x.delta)}};
    }
    if (cfg.command == "constants") {
        json out;
        geom::TauEstimate best{};
        if (cfg.method == "rho" || cfg.method == "both") {
            geom::TauEstimate t = geom::tau_infinity(geom::TauMethod::via_rho, cfg.tol);
            out["tau_via_rho"] = tau_json(t);
            best = t;
        }
        if (cfg.method == "sigma" || cfg.method == "both") {
            geom::TauEstimate t = geom::tau_infinity(geom::TauMethod::via_sigma, cfg.tol);
            out["tau_via_sigma"] = tau_json(t);
            if (best.value == 0.0 || t.abs_error_bound < best.abs_error_bound) best = t;
        }
        loc::PeyreResult p = loc::peyre_constant(best);
        out["peyre_constant"] = p.c;
        out["schindler_product"] = p.schindler_product;
        out["schindler_target"] = p.schindler_target;
        out["schindler_ok"] = p.schindler_ok;
        return out;
    }
    if (cfg.command == "series") {
        CoeffVector x = arith::make_coeff_vector(cfg.xvec);
        loc::EulerFactorization s =
            loc::singular_series_fiber(x, cfg.prime_bound, cfg.rmax);
        json factors = json::array();
        for (const auto& e : s.prime_factors) {
            const char* m = e.method == loc::EulerEntry::good_closed ? "good_closed"
                            : e.method == loc::EulerEntry::lifted    ? "lifted"
                                                                     : "series_partial";
            factors.push_back(json{{"p", e.p},
                                   {"factor", e.factor},
                                   {"method", m},
                                   {"r_used", e.r_used},
                                   {"prev_partial", e.prev_partial}});
        }
        return json{{"value", s.value},
                    {"tail_estimate", s.tail_estimate},
                    {"truncation_prime_bound", s.truncation_prime_bound},
                    {"bad_prime_factors", factors},
                    {"discriminant", static_cast<long long>(x.delta)}};
    }
    if (cfg.command == "verify") {
        auto results = ver::run_suite(cfg.suite);
        bool all = true;
        json checks = json::array();
        for (const auto& r : results) {
            all = all && r.passed;
            checks.push_back(json{{"name", r.name},
                                  {"passed", r.passed},
                                  {"seconds", r.seconds},
                                  {"detail", r.detail}});
        }
        return json{{"suite", cfg.suite}, {"all_passed", all}, {"checks", checks}};
    }
    throw UsageError("unknown command " + cfg.command);
    (void)params;
}

json build_params(const RunConfig& cfg) {
    json p;
    if (cfg.command == "count") {
        p["bound"] = cfg.bound;
        p["split"] = cfg.split;
    } else if (cfg.command == "fiber-y") {
        p["y"] = vec_json(cfg.yvec);
        p["radius"] = cfg.radius;
        p["filter"] = cfg.filter;
    } else if (cfg.command == "fiber-x") {
        p["x"] = vec_json(cfg.xvec);
        p["ybound"] = cfg.ybound;
    } else if (cfg.command == "constants") {
        p["method"] = cfg.method;
        p["tol"] = cfg.tol;
    } else if (cfg.command == "series") {
        p["x"] = vec_json(cfg.xvec);
        p["prime_bound"] = cfg.prime_bound;
        p["rmax"] = cfg.rmax;
    } else if (cfg.command == "verify") {
        p["suite"] = cfg.suite;
    }
    return p;
}

}  // namespace

int dispatch(const RunConfig& cfg) {
#ifdef _OPENMP
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
    json params = build_params(cfg);
    const bool cacheable = cfg.command != "verify";
    const std::string dir = resolve_cache_dir(cfg);
    const std::string fp = fingerprint(cfg.command, params);

    try {
        json result;
        double elapsed = 0.0;
        bool hit = false;
        json cached;
        if (cacheable && cache_lookup(dir, fp, cached)) {
            result = cached["result"];
            elapsed = cached["provenance"].value("elapsed_seconds", 0.0);
            hit = true;
        } else {
            auto t0 = std::chrono::steady_clock::now();
            result = compute(cfg, params);
            elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
        }
        int threads = 1;
#ifdef _OPENMP
        threads = omp_get_max_threads();
#endif
        json report{{"schema_version", 1},
                    {"command", cfg.command},
                    {"params", params},
                    {"result", result},
                    {"provenance",
                     {{"code_version", code_version()},
                      {"elapsed_seconds", elapsed},
                      {"threads", threads},
                      {"created_at", now_iso8601()}}}};
        emit(cfg, report);
        if (cfg.command == "verify") {
            for (const auto& ch : result["checks"])
                std::cerr << (ch["passed"].get<bool>() ? "PASS " : "FAIL ")
                          << ch["name"].get<std::string>() << "\n";
            if (!result["all_passed"].get<bool>()) return 1;
        }
        if (cacheable && !hit) {
            json rec = report;
            rec["fingerprint"] = fp;
            cache_append(dir, rec);
        }
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}

namespace {

bool parse_vec4(const std::string& s, std::array<arith::i64, 4>& out) {
    std::stringstream ss(s);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= 4) return false;
        try {
            out[i++] = std::stoll(tok);
        } catch (...) {
            return false;
        }
    }
    return i == 4;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"qbl: point counts and densities for x1 y1^2 + ... + x4 y4^2 = 0"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string xs, ys;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", cfg.threads, "OpenMP thread count (0 = default)");
        sub->add_option("--cache", cfg.cache_dir, "cache directory");
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* count = app.add_subcommand("count", "canonical point count N(Omega,B)");
    count->add_option("--bound", cfg.bound, "height bound B")->required();
    count->add_option("--split", cfg.split, "auto, y-side, or x-side")
        ->check(CLI::IsMember({"auto", "y-side", "x-side"}));
    add_common(count);

    CLI::App* fy = app.add_subcommand("fiber-y", "x-count in a fiber lattice box");
    fy->add_option("--y", ys, "coefficient vector a,b,c,d")->required();
    fy->add_option("--radius", cfg.radius, "sup-norm box radius")->required();
    fy->add_option("--filter", cfg.filter,
                   "none, nonsquare, nonsquare-primitive, primitive")
        ->check(CLI::IsMember({"none", "nonsquare", "nonsquare-primitive", "primitive"}));
    add_common(fy);

    CLI::App* fx = app.add_subcommand("fiber-x", "y-count over a fixed x");
    fx->add_option("--x", xs, "coefficient vector a,b,c,d")->required();
    fx->add_option("--ybound", cfg.ybound, "sup-norm bound on y")->required();
    add_common(fx);

    CLI::App* cons = app.add_subcommand("constants", "tau_infinity and Peyre constant");
    cons->add_option("--method", cfg.method, "rho, sigma, or both")
        ->check(CLI::IsMember({"rho", "sigma", "both"}));
    cons->add_option("--tol", cfg.tol, "absolute tolerance");
    add_common(cons);

    CLI::App* ser = app.add_subcommand("series", "singular series of a fiber");
    ser->add_option("--x", xs, "coefficient vector a,b,c,d")->required();
    ser->add_option("--prime-bound", cfg.prime_bound, "Euler product truncation");
    ser->add_option("--rmax", cfg.rmax, "max lifting exponent at bad primes");
    add_common(ser);

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--suite", cfg.suite, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    add_common(verify);

    std::vector<const char*> argv{"qbl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (!xs.empty()) {
        if (!parse_vec4(xs, cfg.xvec)) {
            std::cerr << "error: --x expects four comma-separated integers\n";
            return 2;
        }
        cfg.has_x = true;
    }
    if (!ys.empty()) {
        if (!parse_vec4(ys, cfg.yvec)) {
            std::cerr << "error: --y expects four comma-separated integers\n";
            return 2;
        }
        cfg.has_y = true;
    }
    return dispatch(cfg);
}

}  // namespace qbl::cli
