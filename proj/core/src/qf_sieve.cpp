#include "qfdensity/qf_sieve.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace qfd {

__extension__ typedef __int128 i128;

namespace {

std::uint64_t ceil_sqrt(std::uint64_t v) { return v == 0 ? 0 : isqrt(v - 1) + 1; }

// Runs task(0..count-1) on up to `shards` threads; rethrows the first
// exception in task order.
template <class Task>
void run_sharded(unsigned count, const Task& task) {
    if (count <= 1) {
        if (count == 1) task(0u);
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    {
        std::vector<std::jthread> workers;
        workers.reserve(count - 1);
        for (unsigned i = 1; i < count; ++i) {
            workers.emplace_back([&, i] {
                try {
                    task(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            });
        }
        try {
            task(0u);
        } catch (...) {
            errors[0] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct Range {
    std::uint64_t lo;
    std::uint64_t hi;
};

// Splits [lo, hi) into `parts` contiguous pieces of near-equal width.
std::vector<Range> split_range(std::uint64_t lo, std::uint64_t hi, unsigned parts) {
    std::vector<Range> out;
    const std::uint64_t width = hi - lo;
    parts = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(parts, width)));
    for (unsigned i = 0; i < parts; ++i) {
        out.push_back({lo + width * i / parts, lo + width * (i + 1) / parts});
    }
    return out;
}

void validate(const SieveOptions& options) {
    if (options.shards == 0) throw std::invalid_argument("shard count must be >= 1");
    if (options.segment_width == 0) throw std::invalid_argument("segment width must be >= 1");
}

}  // namespace

RepTable::RepTable(std::uint64_t bound, DiagonalForm form, std::vector<std::uint16_t> counts)
    : bound_(bound), form_(form), counts_(std::move(counts)) {
    if (counts_.size() != bound_) {
        throw std::invalid_argument("RepTable: count array length does not match bound");
    }
}

std::uint16_t RepTable::at(std::uint64_t n) const {
    if (n == 0 || n > bound_) {
        throw std::out_of_range("RepTable: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(bound_) + "]");
    }
    return counts_[n - 1];
}

void sieve_range(const DiagonalForm& form, std::uint64_t lo, std::uint64_t hi,
                 std::span<std::uint16_t> out) {
    if (lo == 0 || hi < lo || out.size() != hi - lo) {
        throw std::invalid_argument("sieve_range: need 1 <= lo <= hi and |out| = hi - lo");
    }
    std::fill(out.begin(), out.end(), std::uint16_t{0});
    if (lo == hi) return;

    const std::uint64_t z = form.z();
    constexpr unsigned kMax = std::numeric_limits<std::uint16_t>::max();
    for (std::uint64_t y = 0;; ++y) {
        const std::uint64_t base = z * y * y;
        if (base > hi - 1) break;
        const std::uint64_t x_lo = lo > base ? ceil_sqrt(lo - base) : 0;
        const std::uint64_t x_hi = isqrt(hi - 1 - base);
        const unsigned y_mult = y > 0 ? 2 : 1;
        for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
            const unsigned mult = y_mult * (x > 0 ? 2 : 1);
            std::uint16_t& cell = out[x * x + base - lo];
            if (cell > kMax - mult) {
                throw InvariantViolation("raw lattice count of n = " +
                                         std::to_string(x * x + base) +
                                         " overflows 16 bits");
            }
            cell = static_cast<std::uint16_t>(cell + mult);
        }
    }

    const unsigned g = form.units();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i] % g != 0) {
            throw InvariantViolation("raw lattice count " + std::to_string(out[i]) +
                                     " of n = " + std::to_string(lo + i) + " for z = " +
                                     std::to_string(z) + " is not divisible by g_z");
        }
        out[i] = static_cast<std::uint16_t>(out[i] / g);
    }
}

RepTable rep_counts(std::uint64_t bound, const DiagonalForm& form, const SieveOptions& options) {
    validate(options);
    if (bound == 0) throw std::invalid_argument("rep_counts: X must be >= 1");
    std::vector<std::uint16_t> counts(bound);
    const auto pieces = split_range(1, bound + 1, options.shards);
    run_sharded(static_cast<unsigned>(pieces.size()), [&](unsigned i) {
        const Range piece = pieces[i];
        for (std::uint64_t lo = piece.lo; lo < piece.hi; lo += options.segment_width) {
            const std::uint64_t hi = std::min(piece.hi, lo + options.segment_width);
            sieve_range(form, lo, hi, std::span(counts).subspan(lo - 1, hi - lo));
        }
    });
    return RepTable(bound, form, std::move(counts));
}

void for_each_segment(std::uint64_t bound, std::span<const DiagonalForm> forms,
                      const SieveOptions& options,
                      const std::function<void(const SegmentView&)>& consume) {
    validate(options);
    std::vector<std::vector<std::uint16_t>> tables(forms.size());
    for (std::uint64_t lo = 1; lo <= bound; lo += options.segment_width) {
        const std::uint64_t hi = std::min(bound + 1, lo + options.segment_width);
        for (auto& t : tables) t.resize(hi - lo);

        const auto pieces = split_range(lo, hi, options.shards);
        run_sharded(static_cast<unsigned>(pieces.size()), [&](unsigned i) {
            const Range piece = pieces[i];
            for (std::size_t j = 0; j < forms.size(); ++j) {
                sieve_range(forms[j], piece.lo, piece.hi,
                            std::span(tables[j]).subspan(piece.lo - lo, piece.hi - piece.lo));
            }
        });
        consume(SegmentView{lo, hi, tables});
    }
}

std::uint64_t union_count(std::uint64_t bound, std::span<const DiagonalForm> forms,
                          const SieveOptions& options) {
    if (forms.empty() || bound == 0) return 0;
    std::uint64_t total = 0;
    for_each_segment(bound, forms, options, [&](const SegmentView& seg) {
        for (std::size_t i = 0; i < seg.hi - seg.lo; ++i) {
            for (const auto& t : seg.tables) {
                if (t[i] != 0) {
                    ++total;
                    break;
                }
            }
        }
    });
    return total;
}

std::vector<DiagonalForm> forms_for(const PrimeSubset& primes) {
    std::vector<DiagonalForm> out;
    out.reserve(primes.size());
    for (auto p : primes.primes) out.emplace_back(p);
    return out;
}

std::vector<double> weighted_sum_table(std::uint64_t bound, const PrimeSubset& primes,
                                       const SieveOptions& options) {
    std::vector<double> out(bound, 0.0);
    const auto forms = forms_for(primes);
    if (forms.empty()) return out;
    std::vector<double> roots;
    for (auto p : primes.primes) roots.push_back(std::sqrt(static_cast<double>(p)));
    for_each_segment(bound, forms, options, [&](const SegmentView& seg) {
        for (std::size_t i = 0; i < seg.hi - seg.lo; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < forms.size(); ++j) {
                acc += roots[j] * seg.tables[j][i];
            }
            out[seg.lo - 1 + i] = acc;
        }
    });
    return out;
}

bool MomentReport::cauchy_schwarz_holds() const noexcept {
    // N * sum R^2 - (sum R)^2 = v^T (N M - A A^T) v with v_i = sqrt(p_i); the
    // middle matrix is an exact integer matrix.
    long double gap = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (std::size_t j = 0; j < primes.size(); ++j) {
            const i128 k = static_cast<i128>(union_count) * pair_counts[i][j] -
                               static_cast<i128>(first_counts[i]) * first_counts[j];
            if (k == 0) continue;
            gap += static_cast<long double>(k) *
                   std::sqrt(static_cast<long double>(primes[i]) * primes[j]);
        }
    }
    return gap >= 0;
}

MomentReport moment_report(std::uint64_t bound, const PrimeSubset& primes,
                           const SieveOptions& options) {
    MomentReport rep;
    rep.bound = bound;
    rep.cutoff = primes.cutoff;
    rep.primes = primes.primes;
    const std::size_t m = primes.size();
    rep.first_counts.assign(m, 0);
    rep.pair_counts.assign(m, std::vector<std::uint64_t>(m, 0));
    rep.cutoff_in_regime =
        std::pow(static_cast<long double>(primes.cutoff), 10.0L) <= static_cast<long double>(bound);

    const auto forms = forms_for(primes);
    if (!forms.empty() && bound > 0) {
        std::vector<std::size_t> hit;
        for_each_segment(bound, forms, options, [&](const SegmentView& seg) {
            for (std::size_t i = 0; i < seg.hi - seg.lo; ++i) {
                hit.clear();
                for (std::size_t j = 0; j < m; ++j) {
                    if (seg.tables[j][i] != 0) hit.push_back(j);
                }
                if (hit.empty()) continue;
                ++rep.union_count;
                for (std::size_t a = 0; a < hit.size(); ++a) {
                    const std::uint64_t ra = seg.tables[hit[a]][i];
                    rep.first_counts[hit[a]] += ra;
                    for (std::size_t b = a; b < hit.size(); ++b) {
                        rep.pair_counts[hit[a]][hit[b]] += ra * seg.tables[hit[b]][i];
                    }
                }
            }
        });
        for (std::size_t a = 0; a < m; ++a) {
            for (std::size_t b = a + 1; b < m; ++b) rep.pair_counts[b][a] = rep.pair_counts[a][b];
        }
    }

    // (sum R)^2 is expanded over prime pairs like sum R^2 so that the
    // equality case of Cauchy-Schwarz yields a ratio of identical sums.
    long double first = 0, first_sq = 0, diag = 0, off = 0;
    for (std::size_t a = 0; a < m; ++a) {
        const long double p = static_cast<long double>(rep.primes[a]);
        const long double fa = rep.first_counts[a];
        first += std::sqrt(p) * fa;
        diag += p * rep.pair_counts[a][a];
        first_sq += p * fa * fa;
        for (std::size_t b = a + 1; b < m; ++b) {
            const long double w = 2.0L * std::sqrt(p * rep.primes[b]);
            off += w * rep.pair_counts[a][b];
            first_sq += w * fa * rep.first_counts[b];
        }
    }
    rep.first_moment = static_cast<double>(first);
    rep.diagonal = static_cast<double>(diag);
    rep.off_diagonal = static_cast<double>(off);
    const long double second = diag + off;
    rep.cs_lower_bound = second > 0 ? static_cast<double>(first_sq / second) : 0.0;
    return rep;
}

}  // namespace qfd
