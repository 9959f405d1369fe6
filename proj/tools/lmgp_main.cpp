// Command-line front end over the lmgp C API: generate path ensembles, build
// Gram matrices with PSD certificates, run verification suites, search
// covariance-inequality witnesses, and scan parameter lattices.

#include "lmgp/lmgp.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliError {
    int code;
    std::string message;
};

void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

int map_status(lmgp_status st) {
    switch (st) {
        case LMGP_OK: return kExitOk;
        case LMGP_ERR_ARGUMENT:
        case LMGP_ERR_DOMAIN: return kExitConfig;
        case LMGP_ERR_TOLERANCE:
        case LMGP_ERR_NUMERICAL:
        case LMGP_ERR_INTERNAL: return kExitNumerical;
    }
    return kExitNumerical;
}

void check(lmgp_status st) {
    if (st != LMGP_OK) fail(map_status(st), lmgp_last_error());
}

std::string format17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// temp file + rename
void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) fail(kExitNumerical, "cannot open " + tmp + " for writing");
        os << content;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(kExitNumerical, "rename failed: " + ec.message());
}

struct Options {
    std::string family = "wfbm";
    double a = 0.0, b = 0.0, h = 3.0, hurst = 0.5;
    std::vector<double> grid;
    double start = 0.5, stop = 2.5;
    std::size_t count = 0;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    int substeps = 128;
    std::string method = "direct";
    std::string suite = "full";
    double tol = 0.0;
    std::string out;
    // scan lattice
    double amin = -1.0, amax = 3.0, bmin = -1.0, bmax = 1.5;
    int asteps = 41, bsteps = 41;
};

lmgp_family family_id(const std::string& name) {
    if (name == "wfbm") return LMGP_FAMILY_WFBM;
    if (name == "sfbm") return LMGP_FAMILY_SFBM;
    if (name == "nsfbm") return LMGP_FAMILY_NSFBM;
    if (name == "odd_bfbm") return LMGP_FAMILY_ODD_BFBM;
    if (name == "eta") return LMGP_FAMILY_ETA;
    if (name == "fbm") return LMGP_FAMILY_FBM;
    fail(kExitConfig, "unknown family: " + name);
    return LMGP_FAMILY_WFBM;
}

void family_params(const Options& o, lmgp_family fam, double* p1, double* p2) {
    *p1 = 0.0;
    *p2 = 0.0;
    switch (fam) {
        case LMGP_FAMILY_WFBM: *p1 = o.a; *p2 = o.b; break;
        case LMGP_FAMILY_SFBM:
        case LMGP_FAMILY_NSFBM:
        case LMGP_FAMILY_ODD_BFBM: *p1 = o.h; break;
        case LMGP_FAMILY_ETA: break;
        case LMGP_FAMILY_FBM: *p1 = o.hurst; break;
    }
}

using SpecPtr = std::unique_ptr<lmgp_spec, decltype(&lmgp_spec_destroy)>;

SpecPtr make_spec(const Options& o) {
    const lmgp_family fam = family_id(o.family);
    double p1, p2;
    family_params(o, fam, &p1, &p2);
    lmgp_verdict v;
    check(lmgp_classify(fam, p1, p2, &v));
    lmgp_spec* raw = nullptr;
    const lmgp_status st = lmgp_spec_create(fam, p1, p2, &raw);
    if (st != LMGP_OK)
        fail(kExitConfig, std::string("invalid parameters: ") + lmgp_last_error());
    return SpecPtr(raw, &lmgp_spec_destroy);
}

std::vector<double> resolve_grid(const Options& o) {
    if (!o.grid.empty()) {
        for (std::size_t i = 1; i < o.grid.size(); ++i)
            if (!(o.grid[i] > o.grid[i - 1]))
                fail(kExitConfig, "--grid must be strictly increasing");
        return o.grid;
    }
    const std::size_t count = o.count > 0 ? o.count : 5;
    if (!(o.stop > o.start)) fail(kExitConfig, "--stop must exceed --start");
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i)
        pts[i] = count == 1 ? o.start
                            : o.start + (o.stop - o.start) * static_cast<double>(i) /
                                            static_cast<double>(count - 1);
    return pts;
}

ordered_json spec_json(const Options& o) {
    ordered_json j;
    j["family"] = o.family;
    if (o.family == "wfbm") {
        j["a"] = o.a;
        j["b"] = o.b;
    } else if (o.family == "fbm") {
        j["hurst"] = o.hurst;
    } else if (o.family != "eta") {
        j["h"] = o.h;
    }
    return j;
}

lmgp_method method_id(const std::string& m) {
    if (m == "direct") return LMGP_METHOD_DIRECT_CHOLESKY;
    if (m == "even") return LMGP_METHOD_EVEN_PART;
    if (m == "odd") return LMGP_METHOD_ODD_PART_INTEGRATED;
    if (m == "b1") return LMGP_METHOD_TIME_CHANGED_BM;
    fail(kExitConfig, "unknown method: " + m + " (direct|even|odd|b1)");
    return LMGP_METHOD_DIRECT_CHOLESKY;
}

const char* regime_str(int regime) {
    switch (regime) {
        case LMGP_REGIME_B_NONPOS: return "B_NONPOS";
        case LMGP_REGIME_B_POS: return "B_POS";
        case LMGP_REGIME_SUM_NEG: return "SUM_NEG";
        case LMGP_REGIME_B_GT_APLUS1: return "B_GT_APLUS1";
        case LMGP_REGIME_B_GT1: return "B_GT1";
        case LMGP_REGIME_H_RANGE: return "H_RANGE";
        case LMGP_REGIME_PARAM_RANGE: return "PARAM_RANGE";
    }
    return "?";
}

std::string method_str(lmgp_method m) {
    switch (m) {
        case LMGP_METHOD_DIRECT_CHOLESKY: return "direct";
        case LMGP_METHOD_EVEN_PART: return "even";
        case LMGP_METHOD_ODD_PART_INTEGRATED: return "odd";
        case LMGP_METHOD_TIME_CHANGED_BM: return "b1";
    }
    return "direct";
}

int cmd_gen(const Options& o) {
    const SpecPtr spec = make_spec(o);
    const std::vector<double> grid = resolve_grid(o);
    const std::size_t m = grid.size();
    if (m == 0) fail(kExitConfig, "empty grid");
    std::vector<double> paths(o.n * m);
    check(lmgp_sample(spec.get(), grid.data(), m, o.n, o.seed, method_id(o.method),
                      o.substeps, 0, paths.data()));

    std::string csv;
    for (std::size_t i = 0; i < m; ++i) {
        if (i) csv += ',';
        csv += format17(grid[i]);
    }
    csv += '\n';
    for (std::size_t p = 0; p < o.n; ++p) {
        for (std::size_t i = 0; i < m; ++i) {
            if (i) csv += ',';
            csv += format17(paths[p * m + i]);
        }
        csv += '\n';
    }
    const std::string out = o.out.empty() ? "ensemble.csv" : o.out;
    write_atomic(out, csv);

    ordered_json meta;
    meta["schema"] = "lmgp/1";
    meta["spec"] = spec_json(o);
    meta["grid"] = grid;
    meta["n"] = o.n;
    meta["seed"] = o.seed;
    meta["method"] = method_str(method_id(o.method));
    meta["substeps"] = o.substeps;
    meta["csv"] = out;
    write_atomic(out + ".meta.json", meta.dump(2) + "\n");
    std::printf("wrote %s (%zu paths x %zu points) and %s\n", out.c_str(), o.n, m,
                (out + ".meta.json").c_str());
    return kExitOk;
}

int cmd_gen_from_meta(const std::string& meta_path) {
    std::ifstream is(meta_path);
    if (!is) fail(kExitConfig, "cannot read " + meta_path);
    ordered_json meta = ordered_json::parse(is, nullptr, true);
    Options o;
    const auto& sj = meta.at("spec");
    o.family = sj.at("family").get<std::string>();
    if (sj.contains("a")) o.a = sj["a"].get<double>();
    if (sj.contains("b")) o.b = sj["b"].get<double>();
    if (sj.contains("h")) o.h = sj["h"].get<double>();
    if (sj.contains("hurst")) o.hurst = sj["hurst"].get<double>();
    o.grid = meta.at("grid").get<std::vector<double>>();
    o.n = meta.at("n").get<std::size_t>();
    o.seed = meta.at("seed").get<std::uint64_t>();
    o.method = meta.at("method").get<std::string>();
    o.substeps = meta.at("substeps").get<int>();
    o.out = meta.at("csv").get<std::string>();
    return cmd_gen(o);
}

int cmd_gram(const Options& o) {
    const SpecPtr spec = make_spec(o);
    const std::vector<double> grid = resolve_grid(o);
    const std::size_t m = grid.size();
    if (m == 0) fail(kExitConfig, "empty grid");
    std::vector<double> gm(m * m);
    check(lmgp_gram(spec.get(), grid.data(), m, gm.data()));
    double min_eig = 0.0;
    int pass = 0;
    const double tol = o.tol > 0.0 ? o.tol : 1e-8;
    check(lmgp_psd_certificate(gm.data(), m, tol, &min_eig, &pass));

    std::string csv;
    for (std::size_t i = 0; i < m; ++i) {
        if (i) csv += ',';
        csv += format17(grid[i]);
    }
    csv += '\n';
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j) csv += ',';
            csv += format17(gm[i * m + j]);
        }
        csv += '\n';
    }
    const std::string out = o.out.empty() ? "gram.csv" : o.out;
    write_atomic(out, csv);

    double trace = 0.0;
    for (std::size_t i = 0; i < m; ++i) trace += gm[i * m + i];
    ordered_json cert;
    cert["schema"] = "lmgp/1";
    cert["spec"] = spec_json(o);
    cert["grid"] = grid;
    cert["min_eigenvalue"] = min_eig;
    cert["trace"] = trace;
    cert["tol"] = tol;
    cert["pass"] = pass != 0;
    write_atomic(out + ".cert.json", cert.dump(2) + "\n");
    std::printf("wrote %s and %s (min eigenvalue %.6g, %s)\n", out.c_str(),
                (out + ".cert.json").c_str(), min_eig, pass ? "PSD" : "NOT PSD");
    return kExitOk;
}

int cmd_verify(const Options& o) {
    const SpecPtr spec = make_spec(o);
    char* json = nullptr;
    int all_pass = 0;
    check(lmgp_verify(spec.get(), o.suite.c_str(), o.seed, o.n, o.substeps, 0, o.tol,
                      &json, &all_pass));
    std::unique_ptr<char, decltype(&lmgp_string_free)> guard(json, &lmgp_string_free);
    const ordered_json reports = ordered_json::parse(json);
    for (const auto& r : reports)
        std::printf("%-40s %s  defect=%.3g threshold=%.3g\n",
                    r.at("check").get<std::string>().c_str(),
                    r.at("pass").get<bool>() ? "PASS" : "FAIL",
                    r.at("defect").get<double>(), r.at("threshold").get<double>());
    if (!o.out.empty()) write_atomic(o.out, std::string(json) + "\n");
    return all_pass ? kExitOk : kExitCheckFailed;
}

int cmd_witness(const Options& o) {
    if (o.family != "wfbm") fail(kExitConfig, "witness requires --family wfbm");
    lmgp_verdict v;
    check(lmgp_classify(LMGP_FAMILY_WFBM, o.a, o.b, &v));
    if (v.valid)
        fail(kExitConfig, "parameters are positive-definite; no witness exists");
    double t = 0.0, defect = 0.0;
    int analytic = 0;
    check(lmgp_wfbm_witness(o.a, o.b, &t, &defect, &analytic));
    ordered_json j;
    j["schema"] = "lmgp/1";
    j["a"] = o.a;
    j["b"] = o.b;
    j["regime"] = regime_str(v.regime);
    j["t"] = t;
    j["defect"] = defect;
    j["certified_by"] = analytic ? "convexity_bound" : "direct_evaluation";
    const std::string text = j.dump(2) + "\n";
    if (!o.out.empty())
        write_atomic(o.out, text);
    else
        std::fputs(text.c_str(), stdout);
    return kExitOk;
}

int cmd_scan(const Options& o) {
    std::string csv = "a,b,valid,regime,min_eigenvalue,witness_t,witness_defect\n";
    std::vector<double> grid(20);
    for (int i = 0; i < 20; ++i) grid[i] = 0.25 + 4.75 * i / 19.0;
    for (int i = 1; i <= o.asteps; ++i) {
        const double a = o.amin + (o.amax - o.amin) * i / o.asteps;
        for (int j = 1; j <= o.bsteps; ++j) {
            const double b = o.bmin + (o.bmax - o.bmin) * j / o.bsteps;
            lmgp_verdict v;
            check(lmgp_classify(LMGP_FAMILY_WFBM, a, b, &v));
            double min_eig = 0.0, wt = 0.0, wd = 0.0;
            if (v.valid) {
                lmgp_spec* raw = nullptr;
                check(lmgp_spec_create(LMGP_FAMILY_WFBM, a, b, &raw));
                SpecPtr spec(raw, &lmgp_spec_destroy);
                std::vector<double> gm(grid.size() * grid.size());
                check(lmgp_gram(spec.get(), grid.data(), grid.size(), gm.data()));
                int pass = 0;
                check(lmgp_psd_certificate(gm.data(), grid.size(),
                                           o.tol > 0.0 ? o.tol : 1e-8, &min_eig, &pass));
            } else if (a > -1.0 && b > -1.0) {
                // witnesses can be unresolvable within one ulp of the boundary
                if (lmgp_wfbm_witness(a, b, &wt, &wd, nullptr) != LMGP_OK) {
                    wt = 0.0;
                    wd = 0.0;
                }
            }
            csv += format17(a) + ',' + format17(b) + ',' +
                   std::to_string(v.valid) + ',' + regime_str(v.regime) + ',' +
                   format17(min_eig) + ',' + format17(wt) + ',' + format17(wd) + '\n';
        }
    }
    const std::string out = o.out.empty() ? "scan.csv" : o.out;
    write_atomic(out, csv);
    std::printf("wrote %s (%d x %d lattice)\n", out.c_str(), o.asteps, o.bsteps);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"longmem-gp: long-memory Gaussian process toolkit"};
    app.fallthrough();
    app.set_help_flag("--help", "print usage"); // keep -h free for the h parameter
    Options o;
    std::string from_meta;

    app.set_config("--config")->description("flat key=value config file");
    app.add_option("--family", o.family, "wfbm|sfbm|nsfbm|odd_bfbm|eta|fbm");
    app.add_option("-a,--a", o.a, "wfbm weight exponent a");
    app.add_option("-b,--b", o.b, "wfbm increment exponent b");
    app.add_option("--h", o.h, "sfbm/nsfbm/odd_bfbm parameter h");
    app.add_option("--hurst", o.hurst, "fbm Hurst parameter");
    app.add_option("--grid", o.grid, "explicit time grid")->delimiter(',');
    app.add_option("--start", o.start, "grid start");
    app.add_option("--stop", o.stop, "grid stop");
    app.add_option("--count", o.count, "grid point count");
    app.add_option("-n,--n", o.n, "number of paths / Monte Carlo size");
    app.add_option("--seed", o.seed, "RNG seed");
    app.add_option("--substeps", o.substeps, "integration substeps per grid interval");
    app.add_option("--method", o.method, "sampler: direct|even|odd|b1");
    app.add_option("--suite", o.suite, "kernels|pd|sampling|properties|full");
    app.add_option("--tol", o.tol, "tolerance override (PSD certificate)");
    app.add_option("--out", o.out, "output file path");
    app.add_option("--amin", o.amin);
    app.add_option("--amax", o.amax);
    app.add_option("--bmin", o.bmin);
    app.add_option("--bmax", o.bmax);
    app.add_option("--asteps", o.asteps);
    app.add_option("--bsteps", o.bsteps);

    CLI::App* gen = app.add_subcommand("gen", "sample a path ensemble to CSV");
    gen->add_option("--from-meta", from_meta, "regenerate from gen metadata JSON");
    CLI::App* gram = app.add_subcommand("gram", "covariance matrix + PSD certificate");
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    CLI::App* witness = app.add_subcommand("witness", "covariance-inequality witness");
    CLI::App* scan = app.add_subcommand("scan", "classify a wfbm parameter lattice");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed())
            return from_meta.empty() ? cmd_gen(o) : cmd_gen_from_meta(from_meta);
        if (gram->parsed()) return cmd_gram(o);
        if (verify->parsed()) return cmd_verify(o);
        if (witness->parsed()) return cmd_witness(o);
        if (scan->parsed()) return cmd_scan(o);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitConfig;
}
