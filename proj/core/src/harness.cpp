#include "qfdensity/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qfd::harness {

void ExperimentConfig::validate() const {
    if (shards == 0) throw std::invalid_argument("shard count must be >= 1");
    for (auto x : bounds) {
        if (x < 10) throw std::invalid_argument("X must be >= 10, got " + std::to_string(x));
        if (cutoff > static_cast<double>(x)) {
            throw std::invalid_argument("cutoff Z exceeds X = " + std::to_string(x));
        }
    }
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
}

namespace {

void require_ladder(const std::vector<std::uint64_t>& ladder) {
    if (ladder.empty()) throw std::invalid_argument("empty X ladder");
    if (ladder.front() == 0) throw std::invalid_argument("X must be >= 1");
    if (!std::is_sorted(ladder.begin(), ladder.end()) ||
        std::adjacent_find(ladder.begin(), ladder.end()) != ladder.end()) {
        throw std::invalid_argument("X ladder must be strictly ascending");
    }
}

}  // namespace

std::uint64_t product_sum(const DiagonalForm& first, const DiagonalForm& second,
                          std::uint64_t bound, const SieveOptions& options) {
    const DiagonalForm forms[] = {first, second};
    std::uint64_t acc = 0;
    for_each_segment(bound, forms, options, [&](const SegmentView& seg) {
        const auto& a = seg.tables[0];
        const auto& b = seg.tables[1];
        for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<std::uint64_t>(a[i]) * b[i];
    });
    return acc;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const auto k = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

Prop13Ladder verify_prop13(const DiagonalForm& first, const DiagonalForm& second,
                           const std::vector<std::uint64_t>& ladder, double eps,
                           const SieveOptions& options) {
    require_ladder(ladder);
    Prop13Ladder out;
    out.unit_main_term = main_term(first, second, 1.0, eps);

    const DiagonalForm forms[] = {first, second};
    std::uint64_t acc = 0;
    std::size_t next = 0;
    for_each_segment(ladder.back(), forms, options, [&](const SegmentView& seg) {
        const auto& a = seg.tables[0];
        const auto& b = seg.tables[1];
        for (std::size_t i = 0; i < a.size(); ++i) {
            acc += static_cast<std::uint64_t>(a[i]) * b[i];
            if (seg.lo + i == ladder[next]) {
                Prop13Report row;
                row.z1 = first.z();
                row.z2 = second.z();
                row.bound = ladder[next];
                row.lhs = acc;
                row.main_term = out.unit_main_term.value * static_cast<double>(row.bound);
                row.abs_err = std::abs(static_cast<double>(acc) - row.main_term);
                row.rel_err = row.abs_err / row.main_term;
                out.rows.push_back(row);
                ++next;
                if (next == ladder.size()) return;
            }
        }
    });

    std::vector<double> xs, ys;
    for (const auto& r : out.rows) {
        xs.push_back(static_cast<double>(r.bound));
        ys.push_back(std::max(r.abs_err, std::numeric_limits<double>::min()));
    }
    out.fitted_exponent = loglog_slope(xs, ys);
    return out;
}

std::vector<BernaysRow> bernays_scan(const DiagonalForm& form, const std::vector<std::uint64_t>& ladder,
                                     const SieveOptions& options) {
    require_ladder(ladder);
    std::vector<BernaysRow> out;
    const DiagonalForm forms[] = {form};
    std::uint64_t count = 0;
    std::size_t next = 0;
    for_each_segment(ladder.back(), forms, options, [&](const SegmentView& seg) {
        const auto& t = seg.tables[0];
        for (std::size_t i = 0; i < t.size() && next < ladder.size(); ++i) {
            if (t[i] != 0) ++count;
            if (seg.lo + i == ladder[next]) {
                const double x = static_cast<double>(ladder[next]);
                out.push_back({ladder[next], count, static_cast<double>(count) * std::sqrt(std::log(x)) / x});
                ++next;
            }
        }
    });
    return out;
}

double paper_cutoff(std::uint64_t bound) {
    const double lx = std::log(static_cast<double>(bound));
    return lx * std::log(lx);
}

DensityReport density_run(std::uint64_t bound, CutoffChoice cutoff, SubsetSpec subset,
                          const SieveOptions& options) {
    DensityReport rep;
    rep.bound = bound;
    if (cutoff.policy == CutoffPolicy::paper) {
        if (bound < 100) {
            throw std::invalid_argument("the log X log log X cutoff needs X >= 100, got " +
                                        std::to_string(bound));
        }
        rep.cutoff = paper_cutoff(bound);
    } else {
        if (bound == 0) throw std::invalid_argument("X must be >= 1");
        if (!(cutoff.value >= 0) || cutoff.value > static_cast<double>(bound)) {
            throw std::invalid_argument("explicit cutoff must satisfy 0 <= Z <= X");
        }
        rep.cutoff = cutoff.value;
    }

    const PrimeSubset primes = primes_1mod4(static_cast<std::uint64_t>(std::floor(rep.cutoff)), subset);
    const MomentReport moments = moment_report(bound, primes, options);
    rep.primes = primes.primes;
    rep.count = moments.union_count;
    rep.ratio = static_cast<double>(rep.count) / static_cast<double>(bound);
    rep.cs_bound = moments.cs_lower_bound;
    rep.first_moment = moments.first_moment;
    rep.diagonal = moments.diagonal;
    rep.off_diagonal = moments.off_diagonal;
    rep.cauchy_schwarz_holds = moments.cauchy_schwarz_holds();
    rep.cutoff_in_regime = moments.cutoff_in_regime;
    return rep;
}

double DiagnosticsReport::heath_brown_ratio(double exponent) const {
    return static_cast<double>(mean_square) / std::pow(static_cast<double>(cutoff), exponent);
}

double DiagnosticsReport::elliott_ratio() const {
    const double z = static_cast<double>(cutoff);
    const double n = static_cast<double>(n_range);
    return static_cast<double>(pair_mean_square) / ((z * z + n * n * std::log(n)) * n);
}

std::int64_t orthogonality_sum(std::uint64_t n) {
    const auto modulus = static_cast<std::int64_t>(4 * n);
    std::int64_t sum = 0;
    for (std::int64_t d = 1; d < modulus; d += 4) sum += kronecker(d, modulus);
    return sum;
}

DiagnosticsReport char_sum_diagnostics(std::uint64_t cutoff, std::uint64_t n_range) {
    if (cutoff < 5) throw std::invalid_argument("diagnostics need Z >= 5");
    DiagnosticsReport rep;
    rep.cutoff = cutoff;
    rep.n_range = n_range;
    rep.primes = primes_1mod4(cutoff).primes;
    const auto all_primes = primes_up_to(cutoff);

    std::vector<std::uint32_t> classes;
    for (std::uint64_t n = 3; n <= n_range; n += 2) {
        if (!is_squarefree(n)) continue;
        DiagnosticRow row;
        row.n = n;
        const auto in = static_cast<std::int64_t>(n);
        for (auto p : rep.primes) row.t += kronecker(static_cast<std::int64_t>(p), in);

        // pi(Z; 4n, d) by a direct scan of the primes up to Z.
        const std::uint64_t modulus = 4 * n;
        classes.assign(modulus, 0);
        for (auto p : all_primes) ++classes[p % modulus];
        for (std::uint64_t d = 1; d < modulus; d += 4) {
            const int chi = kronecker(static_cast<std::int64_t>(d), static_cast<std::int64_t>(modulus));
            row.orth_sum += chi;
            row.t_by_classes += chi * static_cast<std::int64_t>(classes[d]);
        }
        if (row.orth_sum != 0) ++rep.orthogonality_failures;
        if (row.t != row.t_by_classes) ++rep.two_way_mismatches;
        rep.mean_square += static_cast<std::uint64_t>(row.t * row.t);
        rep.rows.push_back(row);
    }

    // (n / p) for every row and prime; the pair sums use
    // (n / p1 p2) = (n / p1)(n / p2).
    const std::size_t m = rep.primes.size();
    std::vector<std::vector<std::int8_t>> legendre(m, std::vector<std::int8_t>(rep.rows.size()));
    for (std::size_t j = 0; j < m; ++j) {
        const auto p = static_cast<std::int64_t>(rep.primes[j]);
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            legendre[j][i] = static_cast<std::int8_t>(jacobi(static_cast<std::int64_t>(rep.rows[i].n), p));
        }
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            std::int64_t s = 0;
            for (std::size_t i = 0; i < rep.rows.size(); ++i) s += legendre[a][i] * legendre[b][i];
            rep.pair_mean_square += 2 * static_cast<std::uint64_t>(s * s);
        }
    }

    // chi_{-4 p1} chi_{-4 p2}(n) = (n / p1 p2) for odd n, since p1 p2 = 1 (mod 4).
    const std::size_t spot = std::min<std::size_t>(m, 12);
    for (std::size_t a = 0; a < spot; ++a) {
        for (std::size_t b = a + 1; b < spot; ++b) {
            const auto p1 = static_cast<std::int64_t>(rep.primes[a]);
            const auto p2 = static_cast<std::int64_t>(rep.primes[b]);
            for (const auto& row : rep.rows) {
                if (row.n > 199) break;
                const auto n = static_cast<std::int64_t>(row.n);
                ++rep.reciprocity_checks;
                if (kronecker(-4 * p1, n) * kronecker(-4 * p2, n) != jacobi(n, p1 * p2)) {
                    ++rep.reciprocity_failures;
                }
            }
        }
    }
    return rep;
}

}  // namespace qfd::harness
