#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linlab/bounds.hpp"
#include "linlab/series.hpp"

namespace linlab {

// One experiment: a polynomial, one or more frequencies, and toggles for
// the audits to run. Parsed from JSON for the CLI.
struct ExperimentConfig {
    std::string polynomial = "1:0+1i";
    std::vector<std::string> frequencies;
    unsigned long n_max = 200;
    unsigned precision = 256;
    unsigned long window_lo = 0, window_hi = 0;  // 0,0 = tail half default
    struct Audits {
        bool residual = true;
        bool sparsity = true;
        bool argument = true;
        bool lemmas = true;
        bool theorem = true;
    } audits;
    std::string out_dir = ".";
    bool use_cache = true;
    std::size_t cf_depth = 48;

    static ExperimentConfig from_json_file(const std::string& path);
    static ExperimentConfig from_json_text(const std::string& text);
    void validate(const TrigPolynomial& poly) const;
};

struct RunOutcome {
    bool pass = true;
    bool cache_hit = false;
    bool hypothesis_holds = false;
    Real rho, rho_mean;
    std::vector<std::pair<std::string, bool>> audits;  // name -> pass
};

// linearize -> radius -> enabled audits on frequencies[0]; writes
// coeffs.csv, audit.json and bounds.json into out_dir.
RunOutcome run(const ExperimentConfig& config);

struct SweepRow {
    std::string freq;
    bool ok = false;
    std::string error;
    Real b_partial, rho, error_value;  // error_value = ln rho + (2/d) B
    Real ln_lower, ln_upper;
    bool has_upper = false;
    std::size_t audits_passed = 0, audits_failed = 0;
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    Real spread;  // max - min of error_value over the ok rows
};

// Per-frequency rows plus the spread statistic; writes sweep.csv.
SweepOutcome sweep(const ExperimentConfig& config);

// Ten quadratic surds in (0,1) used as the default sweep family.
std::vector<std::string> builtin_surd_family();

// ---- persistence ----

// Round-trippable text encoding of an mpfr value (sign, base-16 mantissa,
// exponent); reproduces the value bit-exactly at the same precision.
std::string serialize_real(const Real& x);
Real deserialize_real(const std::string& text);

// Series cache, keyed by (polynomial, frequency, n_max, precision) and a
// format version. Throws DomainError on a corrupt or mismatched file.
std::string cache_path(const ExperimentConfig& config,
                       const TrigPolynomial& poly, const Frequency& freq);
void save_series_cache(const LinearizationSeries& series,
                       const std::string& path);
std::optional<LinearizationSeries> load_series_cache(
    const std::string& path, const TrigPolynomial& poly, const Frequency& freq,
    unsigned long n_max, unsigned bits);

// Serialize + deserialize through a file in `dir`; the result must equal the
// input bit for bit.
LinearizationSeries cache_roundtrip(const LinearizationSeries& series,
                                    const std::string& dir);

// ---- artifact emission ----

void write_coeffs_csv(const LinearizationSeries& series,
                      const std::string& path);
void write_cf_csv(const ContinuedFraction& cf, const std::string& path);

// Fixed-width decimal rendering used by every artifact writer, so reruns
// are byte-identical.
std::string format_real(const Real& x);

}  // namespace linlab
