#pragma once

// Experiment drivers built on the sieve, series and L-function modules, and
// the CSV/JSON emitters the command-line tool uses.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qfdensity/arith.hpp"
#include "qfdensity/lfunctions.hpp"
#include "qfdensity/qf_sieve.hpp"

namespace qfd::harness {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

struct ExperimentConfig {
    std::string kind;
    std::vector<std::uint64_t> bounds;
    double cutoff = 0;
    SubsetSpec subset;
    double eps = 1e-8;
    OutputFormat format = OutputFormat::csv;
    std::string cache_dir;
    unsigned shards = 1;

    /// X >= 10, Z <= X, shards >= 1.
    void validate() const;
};

// --- sum_{n <= X} r(n, z1) r(n, z2) against the explicit main term ---------

struct Prop13Report {
    std::uint64_t z1 = 0;
    std::uint64_t z2 = 0;
    std::uint64_t bound = 0;
    std::uint64_t lhs = 0;
    double main_term = 0;
    double abs_err = 0;
    double rel_err = 0;
};

struct Prop13Ladder {
    std::vector<Prop13Report> rows;
    /// Least-squares slope of log abs_err against log X (NaN for < 2 rows).
    double fitted_exponent = 0;
    /// Main term evaluated at X = 1; the value is linear in X.
    MainTermReport unit_main_term;
};

/// Exact left-hand sums from one streaming pass up to the largest X.
std::uint64_t product_sum(const DiagonalForm& first, const DiagonalForm& second,
                          std::uint64_t bound, const SieveOptions& options = {});

Prop13Ladder verify_prop13(const DiagonalForm& first, const DiagonalForm& second,
                           const std::vector<std::uint64_t>& ladder, double eps = 1e-10,
                           const SieveOptions& options = {});

/// Slope of the least-squares line through (log x_i, log y_i).
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// --- single-form densities --------------------------------------------------

struct BernaysRow {
    std::uint64_t bound = 0;
    std::uint64_t count = 0;
    /// N sqrt(log X) / X
    double kappa_hat = 0;
};

std::vector<BernaysRow> bernays_scan(const DiagonalForm& form, const std::vector<std::uint64_t>& ladder,
                                     const SieveOptions& options = {});

// --- union density over primes p = 1 (mod 4) ---------------------------------

enum class CutoffPolicy { paper, explicit_value };

struct CutoffChoice {
    CutoffPolicy policy = CutoffPolicy::paper;
    double value = 0;  ///< used for explicit_value

    static CutoffChoice paper() { return {}; }
    static CutoffChoice fixed(double z) { return {CutoffPolicy::explicit_value, z}; }
};

/// Z = log X * log log X
double paper_cutoff(std::uint64_t bound);

struct DensityReport {
    std::uint64_t bound = 0;
    double cutoff = 0;
    std::vector<std::uint64_t> primes;
    std::uint64_t count = 0;  ///< N_Q(X, Z)
    double ratio = 0;         ///< N / X
    double cs_bound = 0;      ///< (sum R)^2 / sum R^2
    double first_moment = 0;
    double diagonal = 0;
    double off_diagonal = 0;
    bool cauchy_schwarz_holds = true;
    bool cutoff_in_regime = true;
};

DensityReport density_run(std::uint64_t bound, CutoffChoice cutoff, SubsetSpec subset = {},
                          const SieveOptions& options = {});

// --- character sums over primes p = 1 (mod 4) -------------------------------

struct DiagnosticRow {
    std::uint64_t n = 0;
    std::int64_t t = 0;             ///< sum_p chi_p(n)
    std::int64_t t_by_classes = 0;  ///< sum_d chi_d(4n) pi(Z; 4n, d)
    std::int64_t orth_sum = 0;      ///< sum_{d mod 4n, d = 1 (4)} chi_d(4n)
};

struct DiagnosticsReport {
    std::uint64_t cutoff = 0;
    std::uint64_t n_range = 0;
    std::vector<std::uint64_t> primes;
    /// Odd squarefree n in (1, n_range].
    std::vector<DiagnosticRow> rows;
    /// sum over rows of |T(n)|^2
    std::uint64_t mean_square = 0;
    /// sum_{p1 != p2} |sum_{n} (n / p1 p2)|^2 over odd squarefree n <= n_range
    std::uint64_t pair_mean_square = 0;
    std::uint64_t orthogonality_failures = 0;
    std::uint64_t two_way_mismatches = 0;
    std::uint64_t reciprocity_checks = 0;
    std::uint64_t reciprocity_failures = 0;

    /// mean_square / Z^exponent
    double heath_brown_ratio(double exponent = 2.1) const;
    /// pair_mean_square / ((Z^2 + N^2 log N) N)
    double elliott_ratio() const;
};

/// sum_{d mod 4n, d = 1 (mod 4)} chi_d(4n)
std::int64_t orthogonality_sum(std::uint64_t n);

DiagnosticsReport char_sum_diagnostics(std::uint64_t cutoff, std::uint64_t n_range);

// --- emitters ------------------------------------------------------------------

void write_prop13(std::ostream& out, const Prop13Ladder& ladder, OutputFormat format);
void write_bernays(std::ostream& out, std::uint64_t z, const std::vector<BernaysRow>& rows,
                   OutputFormat format);
void write_density(std::ostream& out, const DensityReport& report, OutputFormat format);
void write_moments(std::ostream& out, const MomentReport& report, OutputFormat format);
void write_diagnostics(std::ostream& out, const DiagnosticsReport& report, OutputFormat format);
void write_lvalue(std::ostream& out, const ProductCharacter& chi, int s, const LValue& value,
                  OutputFormat format);

}  // namespace qfd::harness
