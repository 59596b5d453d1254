// Command-line front end: continued fractions, linearization runs, radius
// estimates, theorem bounds, full verification, and frequency sweeps.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "linlab/harness.hpp"

namespace {

using namespace linlab;

// Shared experiment flags; --config is read first, explicit flags override.
struct CommonOpts {
    std::string config_path;
    std::string poly;
    std::vector<std::string> freqs;
    unsigned long n_max = 0;
    unsigned precision = 0;
    std::vector<unsigned long> window;
    std::string out_dir;
    bool no_cache = false;
    std::size_t cf_depth = 0;

    void attach(CLI::App* app) {
        app->add_option("--config", config_path, "JSON experiment file");
        app->add_option("--poly", poly, "polynomial spec, e.g. 1:0+1i,3:2@0.5");
        app->add_option("--freq", freqs,
                        "frequency spec (repeatable), e.g. surd:-1,+1,5,2");
        app->add_option("--nmax", n_max, "series truncation order");
        app->add_option("--precision", precision, "working precision in bits");
        app->add_option("--window", window, "radius window lo hi")
            ->expected(2);
        app->add_option("--out", out_dir, "artifact output directory");
        app->add_flag("--no-cache", no_cache, "disable the series cache");
        app->add_option("--cf-depth", cf_depth,
                        "continued-fraction depth for the bound machinery");
    }

    ExperimentConfig resolve() const {
        ExperimentConfig c = config_path.empty()
                                 ? ExperimentConfig{}
                                 : ExperimentConfig::from_json_file(config_path);
        if (!poly.empty()) c.polynomial = poly;
        if (!freqs.empty()) c.frequencies = freqs;
        if (n_max) c.n_max = n_max;
        if (precision) c.precision = precision;
        if (window.size() == 2) {
            c.window_lo = window[0];
            c.window_hi = window[1];
        }
        if (!out_dir.empty()) c.out_dir = out_dir;
        if (no_cache) c.use_cache = false;
        if (cf_depth) c.cf_depth = cf_depth;
        return c;
    }
};

void print_audits(const RunOutcome& outcome) {
    for (const auto& [name, ok] : outcome.audits)
        std::cout << "  " << name << ": " << (ok ? "pass" : "FAIL") << '\n';
}

int run_cf(const CommonOpts& opts) {
    ExperimentConfig c = opts.resolve();
    if (c.frequencies.empty())
        throw DomainError("cf: need --freq or a config frequency");
    Frequency freq = Frequency::parse(c.frequencies[0]);
    ContinuedFraction cf = expand(freq, c.cf_depth ? c.cf_depth : 48);
    std::filesystem::create_directories(c.out_dir);
    write_cf_csv(cf, (std::filesystem::path(c.out_dir) / "cf.csv").string());
    BrjunoSum b = brjuno_sum(cf, cf.depth() - 1);
    std::cout << "depth " << cf.depth() << ", q_last " << cf.q.back() << '\n'
              << "brjuno partial " << format_real(b.partial);
    if (b.tail_certified)
        std::cout << " (+ tail <= " << format_real(b.tail_bound) << ")";
    std::cout << '\n';
    return 0;
}

int run_experiment(const CommonOpts& opts, bool audits_on) {
    ExperimentConfig c = opts.resolve();
    if (!audits_on)
        c.audits = {false, false, false, false, false};
    RunOutcome outcome = run(c);
    std::cout << (outcome.cache_hit ? "cache hit" : "computed") << ", rho "
              << format_real(outcome.rho) << " (mean "
              << format_real(outcome.rho_mean) << ")\n";
    print_audits(outcome);
    return outcome.pass ? 0 : 1;
}

int run_bounds(const CommonOpts& opts) {
    ExperimentConfig c = opts.resolve();
    c.audits = {false, false, false, false, true};
    RunOutcome outcome = run(c);
    std::ifstream in(std::filesystem::path(c.out_dir) / "bounds.json");
    std::cout << in.rdbuf();
    return outcome.pass ? 0 : 1;
}

int run_sweep(const CommonOpts& opts) {
    ExperimentConfig c = opts.resolve();
    if (c.frequencies.empty()) c.frequencies = builtin_surd_family();
    SweepOutcome outcome = sweep(c);
    std::size_t ok = 0;
    for (const auto& row : outcome.rows)
        if (row.ok) ++ok;
    std::cout << ok << "/" << outcome.rows.size()
              << " frequencies ok, error spread "
              << format_real(outcome.spread) << '\n';
    return ok == outcome.rows.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linearization laboratory"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto* cf = app.add_subcommand("cf", "continued fraction + Brjuno sum");
    auto* lin = app.add_subcommand("linearize", "compute the series");
    auto* rad = app.add_subcommand("radius", "series + radius estimate");
    auto* bnd = app.add_subcommand("bounds", "theorem bound machinery");
    auto* ver = app.add_subcommand("verify", "full audit suite");
    auto* swp = app.add_subcommand("sweep", "error statistic over frequencies");
    for (auto* sc : {cf, lin, rad, bnd, ver, swp}) opts.attach(sc);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cf->parsed()) return run_cf(opts);
        if (lin->parsed() || rad->parsed())
            return run_experiment(opts, false);
        if (ver->parsed()) return run_experiment(opts, true);
        if (bnd->parsed()) return run_bounds(opts);
        if (swp->parsed()) return run_sweep(opts);
    } catch (const linlab::PrecisionError& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return 3;
    } catch (const linlab::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
