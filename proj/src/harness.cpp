#include "linlab/harness.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace linlab {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// ---- config ----

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw DomainError(std::string("config: bad JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        if (j.contains("polynomial")) c.polynomial = j["polynomial"];
        if (j.contains("frequency"))
            c.frequencies.push_back(j["frequency"].get<std::string>());
        if (j.contains("frequencies"))
            for (const auto& f : j["frequencies"])
                c.frequencies.push_back(f.get<std::string>());
        if (j.contains("n_max")) c.n_max = j["n_max"];
        if (j.contains("precision")) c.precision = j["precision"];
        if (j.contains("window")) {
            c.window_lo = j["window"][0];
            c.window_hi = j["window"][1];
        }
        if (j.contains("audits")) {
            const auto& a = j["audits"];
            if (a.contains("residual")) c.audits.residual = a["residual"];
            if (a.contains("sparsity")) c.audits.sparsity = a["sparsity"];
            if (a.contains("argument")) c.audits.argument = a["argument"];
            if (a.contains("lemmas")) c.audits.lemmas = a["lemmas"];
            if (a.contains("theorem")) c.audits.theorem = a["theorem"];
        }
        if (j.contains("out")) c.out_dir = j["out"];
        if (j.contains("cache")) c.use_cache = j["cache"];
        if (j.contains("cf_depth")) c.cf_depth = j["cf_depth"];
    } catch (const std::exception& e) {
        throw DomainError(std::string("config: bad field: ") + e.what());
    }
    return c;
}

void ExperimentConfig::validate(const TrigPolynomial& poly) const {
    if (precision < 53) throw DomainError("config: precision must be >= 53");
    if (n_max < poly.kappa0())
        throw DomainError("config: n_max below the smallest mode");
    if (window_lo || window_hi) {
        if (window_lo < poly.kappa0() || window_hi > n_max ||
            window_lo > window_hi)
            throw DomainError("config: window outside [kappa0, n_max]");
    }
}

// ---- formatting ----

std::string format_real(const Real& x) {
    return x.str(24, std::ios_base::scientific);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_key(const TrigPolynomial& poly, const Frequency& freq,
                      unsigned long n_max, unsigned bits) {
    std::ostringstream os;
    os << poly.spec_string() << '|' << freq.spec_string() << '|' << n_max
       << '|' << bits;
    return os.str();
}

constexpr const char* kCacheMagic = "LINLABCACHE 1";

}  // namespace

// ---- mpfr round-trip encoding ----

std::string serialize_real(const Real& x) {
    if (x.is_zero()) return "0";
    mpfr_exp_t exp = 0;
    char* digits =
        mpfr_get_str(nullptr, &exp, 16, 0, x.backend().data(), MPFR_RNDN);
    std::string mant(digits);
    mpfr_free_str(digits);
    long prec = static_cast<long>(mpfr_get_prec(x.backend().data()));
    // Value is 0.mant * 16^exp in base 16.
    return mant + "@" + std::to_string(static_cast<long long>(exp)) + "#" +
           std::to_string(prec);
}

Real deserialize_real(const std::string& text) {
    if (text == "0") return Real(0);
    auto at = text.find('@');
    auto hash = text.find('#');
    if (at == std::string::npos || hash == std::string::npos || hash < at)
        throw DomainError("cache: bad numeric encoding");
    std::string mant = text.substr(0, at);
    long long exp = std::stoll(text.substr(at + 1, hash - at - 1));
    long prec = std::stol(text.substr(hash + 1));
    std::size_t ndigits = mant.size() - (mant[0] == '-' ? 1 : 0);
    Real out;
    mpfr_set_prec(out.backend().data(), prec);
    std::string repr =
        mant + "@" + std::to_string(exp - static_cast<long long>(ndigits));
    if (mpfr_set_str(out.backend().data(), repr.c_str(), 16, MPFR_RNDN) != 0)
        throw DomainError("cache: unreadable numeric encoding");
    return out;
}

// ---- series cache ----

std::string cache_path(const ExperimentConfig& config,
                       const TrigPolynomial& poly, const Frequency& freq) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(
                      cache_key(poly, freq, config.n_max, config.precision))));
    return (fs::path(config.out_dir) / (std::string("cache_") + buf + ".bin"))
        .string();
}

void save_series_cache(const LinearizationSeries& series,
                       const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cache: cannot write " + path);
    out << kCacheMagic << '\n'
        << cache_key(series.poly, series.freq, series.n_max, series.bits)
        << '\n';
    for (unsigned long l = 0; l <= series.n_max; ++l) {
        if (series.phi[l].is_zero()) continue;
        out << "phi " << l << ' ' << serialize_real(series.phi[l].re) << ' '
            << serialize_real(series.phi[l].im) << '\n';
    }
    for (std::size_t i = 0; i < series.psi.size(); ++i)
        for (unsigned long l = 0; l <= series.n_max; ++l) {
            if (series.psi[i][l].is_zero()) continue;
            out << "psi " << i << ' ' << l << ' '
                << serialize_real(series.psi[i][l].re) << ' '
                << serialize_real(series.psi[i][l].im) << '\n';
        }
    out << "END\n";
}

std::optional<LinearizationSeries> load_series_cache(
    const std::string& path, const TrigPolynomial& poly, const Frequency& freq,
    unsigned long n_max, unsigned bits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string line;
    if (!std::getline(in, line)) throw DomainError("cache: empty file");
    if (line != kCacheMagic)
        throw DomainError("cache: version mismatch in " + path);
    if (!std::getline(in, line) || line != cache_key(poly, freq, n_max, bits))
        return std::nullopt;  // stale key: treat as a miss

    LinearizationSeries s{poly, freq};
    s.n_max = n_max;
    s.bits = bits;
    s.phi.assign(n_max + 1, Complex());
    s.psi.assign(poly.modes().size(), std::vector<Complex>(n_max + 1));
    bool terminated = false;
    while (std::getline(in, line)) {
        if (line == "END") {
            terminated = true;
            break;
        }
        std::istringstream ls(line);
        std::string tag, re, im;
        ls >> tag;
        if (tag == "phi") {
            unsigned long l;
            ls >> l >> re >> im;
            if (!ls || l > n_max) throw DomainError("cache: corrupt record");
            s.phi[l] = Complex(deserialize_real(re), deserialize_real(im));
        } else if (tag == "psi") {
            std::size_t i;
            unsigned long l;
            ls >> i >> l >> re >> im;
            if (!ls || i >= s.psi.size() || l > n_max)
                throw DomainError("cache: corrupt record");
            s.psi[i][l] = Complex(deserialize_real(re), deserialize_real(im));
        } else {
            throw DomainError("cache: corrupt record");
        }
    }
    if (!terminated) throw DomainError("cache: truncated file");
    // Derived structures are deterministic; rebuild them.
    std::uint64_t kmax = poly.kappa_top();
    s.semigroup = std::make_shared<NumericalSemigroup>(
        poly.mode_indices(),
        std::max<std::uint64_t>(n_max + kmax, 4 * kmax * kmax));
    s.divisors = std::make_shared<SmallDivisorTable>(freq, n_max, bits);
    return s;
}

LinearizationSeries cache_roundtrip(const LinearizationSeries& series,
                                    const std::string& dir) {
    ExperimentConfig c;
    c.out_dir = dir;
    c.n_max = series.n_max;
    c.precision = series.bits;
    std::string path = cache_path(c, series.poly, series.freq);
    save_series_cache(series, path);
    auto loaded = load_series_cache(path, series.poly, series.freq,
                                    series.n_max, series.bits);
    if (!loaded) throw DomainError("cache: roundtrip miss");
    return std::move(*loaded);
}

// ---- artifact emission ----

void write_coeffs_csv(const LinearizationSeries& series,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << "l,re_phi,im_phi,ln_abs_phi,abs_D_l,in_semigroup\n";
    ScopedPrecision guard(series.bits);
    for (unsigned long l = 1; l <= series.n_max; ++l) {
        bool member = series.semigroup->contains(l);
        out << l << ',';
        if (series.phi[l].is_zero())
            out << "0,0,-inf";
        else
            out << format_real(series.phi[l].re) << ','
                << format_real(series.phi[l].im) << ','
                << format_real(log(series.phi[l].abs()));
        out << ',' << format_real(-series.divisors->divisor(l)) << ','
            << (member ? 1 : 0) << '\n';
    }
}

void write_cf_csv(const ContinuedFraction& cf, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << "k,a_k,p_k,q_k\n";
    for (std::size_t k = 0; k < cf.depth(); ++k)
        out << k << ',' << cf.a[k].str() << ',' << cf.p[k].str() << ','
            << cf.q[k].str() << '\n';
}

// ---- run ----

namespace {

void default_window(const ExperimentConfig& config, const TrigPolynomial& poly,
                    unsigned long& lo, unsigned long& hi) {
    lo = config.window_lo;
    hi = config.window_hi;
    if (!lo && !hi) {
        lo = std::max<unsigned long>(poly.kappa0(), config.n_max / 2);
        hi = config.n_max;
    }
}

LinearizationSeries obtain_series(const ExperimentConfig& config,
                                  const TrigPolynomial& poly,
                                  const Frequency& freq, bool* cache_hit) {
    *cache_hit = false;
    std::string path;
    if (config.use_cache) {
        path = cache_path(config, poly, freq);
        auto cached =
            load_series_cache(path, poly, freq, config.n_max, config.precision);
        if (cached) {
            *cache_hit = true;
            return std::move(*cached);
        }
    }
    LinearizationSeries series =
        linearize(poly, freq, config.n_max, config.precision);
    if (config.use_cache) save_series_cache(series, path);
    return series;
}

}  // namespace

RunOutcome run(const ExperimentConfig& config) {
    TrigPolynomial poly =
        TrigPolynomial::parse(config.polynomial, config.precision);
    config.validate(poly);
    if (config.frequencies.empty())
        throw DomainError("config: no frequency given");
    Frequency freq = Frequency::parse(config.frequencies[0]);
    if (freq.is_rational())
        throw DomainError("config: rational frequency rejected");
    fs::create_directories(config.out_dir);

    RunOutcome outcome;
    LinearizationSeries series =
        obtain_series(config, poly, freq, &outcome.cache_hit);

    unsigned long lo, hi;
    default_window(config, poly, lo, hi);
    RadiusEstimate est = radius_estimate(series, lo, hi);
    outcome.rho = est.rho;
    outcome.rho_mean = est.rho_mean;

    ScopedPrecision guard(config.precision);
    Real loose_tol = ldexp(Real(1), -static_cast<long>(config.precision) / 4);
    ordered_json audit_json;
    audit_json["records"] = ordered_json::array();
    auto note = [&](const std::string& name, bool pass) {
        outcome.audits.emplace_back(name, pass);
        if (!pass) outcome.pass = false;
    };

    if (config.audits.residual) {
        ResidualReport res = residual_check(series);
        note("residual", res.max_relative <= loose_tol &&
                             res.max_relative_conjugacy <= loose_tol);
        audit_json["residual"] = {
            {"max_relative", format_real(res.max_relative)},
            {"max_relative_conjugacy",
             format_real(res.max_relative_conjugacy)},
            {"checked_to", res.checked_to}};
    }

    if (config.audits.sparsity) {
        bool ok = true;
        for (unsigned long l = 1; l <= series.n_max && ok; ++l) {
            if (!series.phi[l].is_zero() && !series.semigroup->contains(l))
                ok = false;
            Complex total;
            for (const auto& row : series.psi) total += row[l];
            Complex back = series.phi[l] * series.divisors->divisor(l);
            Real mag = back.abs();
            if (mag < 1) mag = 1;
            if ((total - back).abs() / mag > loose_tol) ok = false;
        }
        note("sparsity", ok);
    }

    std::optional<Real> theta = hypothesis_theta(poly, config.precision);
    outcome.hypothesis_holds = theta.has_value();
    if (config.audits.argument && theta) {
        ArgumentAudit arg = argument_audit(series, *theta, series.n_max);
        note("argument", arg.max_deviation <= loose_tol);
        audit_json["argument"] = {
            {"theta", format_real(*theta)},
            {"max_deviation", format_real(arg.max_deviation)},
            {"checked", arg.checked}};
    }

    // Brjuno-side machinery on the continued fraction of d*alpha.
    ordered_json bounds_json;
    if (config.audits.lemmas || config.audits.theorem) {
        std::uint64_t d = series.semigroup->gcd();
        std::string skipped;
        try {
            Frequency dalpha = freq.scaled(d);
            ContinuedFraction cf = expand(dalpha, config.cf_depth);

            MajorantSeries maj =
                majorant_series(poly.mode_indices(), config.n_max,
                                config.precision);
            ConstantsBundle cb = constants_bundle(
                poly, *series.semigroup, maj.radius_estimate, config.precision);
            bounds_json["constants"] = {
                {"C0", format_real(cb.C0)},
                {"C1", format_real(cb.C1)},
                {"C2", format_real(cb.C2)},
                {"C2_prime", format_real(cb.C2p)},
                {"C4", format_real(cb.C4)},
                {"C_prop", format_real(cb.C_prop)},
                {"C_M", format_real(cb.C_M)},
                {"C_lower_proof", format_real(cb.C_lower_proof)},
                {"C_lower_stmt", format_real(cb.C_lower_stmt)},
                {"R", format_real(cb.R)}};

            if (config.audits.theorem) {
                BrjunoSum b = brjuno_sum(cf, cf.depth() - 1);
                TheoremBounds tb =
                    theorem_bounds(b, cb, d, outcome.hypothesis_holds);
                bounds_json["B_partial"] = format_real(tb.b_partial);
                bounds_json["B_tail"] = format_real(tb.b_tail);
                bounds_json["lower"] = format_real(tb.ln_lower);
                if (tb.has_upper)
                    bounds_json["upper"] = format_real(tb.ln_upper);
                else
                    bounds_json["upper"] = "not-applicable";
                if (tb.has_upper)
                    note("bound-ordering", tb.ln_lower <= tb.ln_upper);
            }

            if (config.audits.lemmas) {
                // Upper ledger: |phi_j| <= sigma_j e^{g(j)}.
                auto g_tables =
                    davie_g_tables(*series.divisors, cf, d, config.n_max);
                UpperBoundAudit up =
                    upper_bound_audit(series, maj, cf, g_tables, cb);
                note("upper-ledger", up.pass);
                audit_json["upper_ledger"] = {
                    {"checked", up.checked},
                    {"min_margin", format_real(up.min_margin)},
                    {"min_margin_index", up.min_margin_index}};

                try {
                    FastSubsequence sub = fast_subsequence(
                        cf, series.semigroup->threshold(), poly.kappa_max(), d);
                    DivisorSumBracket br = divisor_sum_bracket(
                        freq, cf, sub, cb, config.precision);
                    note("divisor-sum-bracket", br.pass);
                    if (theta) {
                        LowerBoundF f =
                            lower_bound_F(sub, cf, freq, config.precision);
                        AuditReport rep = coefficient_bound_audit(
                            series, sub, cf, f, cb);
                        note("lower-ledger", rep.pass);
                        for (const auto& rec : rep.records) {
                            if (rec.pass &&
                                audit_json["records"].size() > 5000)
                                continue;  // keep artifacts bounded
                            audit_json["records"].push_back(
                                {{"lemma", rec.lemma},
                                 {"index", rec.index.str()},
                                 {"lhs", format_real(rec.lhs)},
                                 {"rhs", format_real(rec.rhs)},
                                 {"margin", format_real(rec.lhs - rec.rhs)},
                                 {"pass", rec.pass}});
                        }
                        audit_json["lower_ledger_checked"] = rep.checked;
                        audit_json["lower_ledger_failed"] = rep.failed;
                    }
                } catch (const DomainError& e) {
                    // Bounded-type frequency: no fast subsequence within
                    // depth. The ledger degrades to "no data".
                    audit_json["subsequence"] = e.what();
                }
            }
        } catch (const DomainError& e) {
            skipped = e.what();
            bounds_json["skipped"] = skipped;
        }
    }

    write_coeffs_csv(series,
                     (fs::path(config.out_dir) / "coeffs.csv").string());
    audit_json["pass"] = outcome.pass;
    audit_json["rho"] = format_real(outcome.rho);
    audit_json["rho_mean"] = format_real(outcome.rho_mean);
    audit_json["min_abs_divisor"] =
        format_real(series.divisors->min_abs_divisor());
    {
        std::ofstream out(fs::path(config.out_dir) / "audit.json",
                          std::ios::binary);
        out << audit_json.dump(2) << '\n';
    }
    {
        std::ofstream out(fs::path(config.out_dir) / "bounds.json",
                          std::ios::binary);
        out << bounds_json.dump(2) << '\n';
    }
    return outcome;
}

// ---- sweep ----

std::vector<std::string> builtin_surd_family() {
    return {
        "surd:-1,+1,5,2",   // (sqrt5 - 1)/2
        "surd:-1,+1,2,1",   // sqrt2 - 1
        "surd:-1,+1,3,1",   // sqrt3 - 1
        "surd:-2,+1,5,1",   // sqrt5 - 2
        "surd:-2,+1,6,1",   // sqrt6 - 2
        "surd:-2,+1,7,1",   // sqrt7 - 2
        "surd:-2,+1,8,1",   // sqrt8 - 2
        "surd:-3,+1,10,1",  // sqrt10 - 3
        "surd:-3,+1,11,1",  // sqrt11 - 3
        "surd:-3,+1,13,1",  // sqrt13 - 3
    };
}

SweepOutcome sweep(const ExperimentConfig& config) {
    TrigPolynomial poly =
        TrigPolynomial::parse(config.polynomial, config.precision);
    config.validate(poly);
    if (config.frequencies.size() < 2)
        throw DomainError("sweep: need at least 2 frequencies");
    fs::create_directories(config.out_dir);

    SweepOutcome out;
    ScopedPrecision guard(config.precision);
    for (const auto& spec : config.frequencies) {
        SweepRow row;
        row.freq = spec;
        try {
            Frequency freq = Frequency::parse(spec);
            if (freq.is_rational())
                throw DomainError("rational frequency rejected");
            bool hit = false;
            LinearizationSeries series =
                obtain_series(config, poly, freq, &hit);
            unsigned long lo, hi;
            default_window(config, poly, lo, hi);
            RadiusEstimate est = radius_estimate(series, lo, hi);
            row.rho = est.rho;

            std::uint64_t d = series.semigroup->gcd();
            Frequency dalpha = freq.scaled(d);
            ContinuedFraction cf = expand(dalpha, config.cf_depth);
            BrjunoSum b = brjuno_sum(cf, cf.depth() - 1);
            row.b_partial = b.partial;
            row.error_value = log(est.rho) + 2 / Real(d) * b.partial;

            MajorantSeries maj = majorant_series(
                poly.mode_indices(), config.n_max, config.precision);
            ConstantsBundle cb = constants_bundle(
                poly, *series.semigroup, maj.radius_estimate,
                config.precision);
            bool hyp = hypothesis_theta(poly, config.precision).has_value();
            TheoremBounds tb = theorem_bounds(b, cb, d, hyp);
            row.ln_lower = tb.ln_lower;
            row.has_upper = tb.has_upper;
            if (tb.has_upper) row.ln_upper = tb.ln_upper;

            if (config.audits.residual) {
                ResidualReport res = residual_check(series);
                Real tol =
                    ldexp(Real(1), -static_cast<long>(config.precision) / 4);
                bool ok = res.max_relative <= tol &&
                          res.max_relative_conjugacy <= tol;
                ok ? ++row.audits_passed : ++row.audits_failed;
            }
            if (tb.has_upper)
                (tb.ln_lower <= tb.ln_upper) ? ++row.audits_passed
                                             : ++row.audits_failed;
            row.ok = row.audits_failed == 0;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }

    bool have = false;
    Real mn(0), mx(0);
    for (const auto& row : out.rows) {
        if (!row.ok || !row.error.empty()) continue;
        if (!have || row.error_value < mn) mn = row.error_value;
        if (!have || row.error_value > mx) mx = row.error_value;
        have = true;
    }
    out.spread = have ? Real(mx - mn) : Real(0);

    std::ofstream csv(fs::path(config.out_dir) / "sweep.csv",
                      std::ios::binary);
    csv << "freq,ok,b_partial,rho,ln_lower,ln_upper,error_value,"
           "audits_passed,audits_failed,error\n";
    for (const auto& row : out.rows) {
        csv << row.freq << ',' << (row.ok ? 1 : 0) << ',';
        if (row.error.empty()) {
            csv << format_real(row.b_partial) << ',' << format_real(row.rho)
                << ',' << format_real(row.ln_lower) << ','
                << (row.has_upper ? format_real(row.ln_upper) : "n/a") << ','
                << format_real(row.error_value);
        } else {
            csv << ",,,,";
        }
        csv << ',' << row.audits_passed << ',' << row.audits_failed << ','
            << row.error << '\n';
    }
    return out;
}

}  // namespace linlab
