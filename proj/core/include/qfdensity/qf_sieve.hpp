#pragma once

// Representation counts r(n,z) = #{(x,y) : x^2 + z y^2 = n} / g_z for all
// n <= X, plus the union counts, weighted sums and moments built from them.
//
// Every lattice point (x, y) with x, y >= 0 is visited once and contributes
// 2^(number of nonzero coordinates) raw solutions; the raw count of each n is
// then divided by g_z = 2.  Work is split into n-segments, and each segment
// may be split further across worker threads ("shards").  Shards own
// disjoint n-ranges, so the result never depends on the shard count.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qfdensity/arith.hpp"

namespace qfd {

struct SieveOptions {
    unsigned shards = 1;
    /// Width of one n-segment.  Streaming consumers never hold more than one
    /// segment per form in memory.
    std::uint64_t segment_width = std::uint64_t{1} << 24;
};

/// Dense table of r(n, z) for 1 <= n <= X.  Immutable once built.
class RepTable {
public:
    RepTable(std::uint64_t bound, DiagonalForm form, std::vector<std::uint16_t> counts);

    std::uint64_t bound() const noexcept { return bound_; }
    const DiagonalForm& form() const noexcept { return form_; }
    unsigned units() const noexcept { return form_.units(); }

    /// r(n, z) for 1 <= n <= X.
    std::uint16_t operator[](std::uint64_t n) const { return counts_[n - 1]; }
    std::uint16_t at(std::uint64_t n) const;

    /// counts for n = 1..X, in order.
    std::span<const std::uint16_t> counts() const noexcept { return counts_; }

    friend bool operator==(const RepTable&, const RepTable&) = default;

private:
    std::uint64_t bound_;
    DiagonalForm form_;
    std::vector<std::uint16_t> counts_;
};

/// Fills out[i] = r(lo + i, z) for lo + i in [lo, hi).  Throws
/// InvariantViolation if a raw count is odd or does not fit 16 bits.
void sieve_range(const DiagonalForm& form, std::uint64_t lo, std::uint64_t hi,
                 std::span<std::uint16_t> out);

RepTable rep_counts(std::uint64_t bound, const DiagonalForm& form,
                    const SieveOptions& options = {});

/// One segment [lo, hi) of every requested form, aligned.
struct SegmentView {
    std::uint64_t lo;
    std::uint64_t hi;
    /// tables[j][i] = r(lo + i, forms[j])
    std::span<const std::vector<std::uint16_t>> tables;
};

/// Streams [1, bound] through the callback segment by segment in ascending
/// order.  The callback always runs on the calling thread.
void for_each_segment(std::uint64_t bound, std::span<const DiagonalForm> forms,
                      const SieveOptions& options,
                      const std::function<void(const SegmentView&)>& consume);

/// N_Omega(X, Z): number of n <= X represented by at least one form.
std::uint64_t union_count(std::uint64_t bound, std::span<const DiagonalForm> forms,
                          const SieveOptions& options = {});

std::vector<DiagonalForm> forms_for(const PrimeSubset& primes);

/// R(n) = sum_p sqrt(p) r(n, p) for n = 1..X (index n-1).
std::vector<double> weighted_sum_table(std::uint64_t bound, const PrimeSubset& primes,
                                       const SieveOptions& options = {});

struct MomentReport {
    std::uint64_t bound = 0;
    std::uint64_t cutoff = 0;
    std::vector<std::uint64_t> primes;
    /// sum_n r(n, p) per prime.
    std::vector<std::uint64_t> first_counts;
    /// pair_counts[i][j] = sum_n r(n, p_i) r(n, p_j), symmetric.
    std::vector<std::vector<std::uint64_t>> pair_counts;

    double first_moment = 0;   ///< sum_n R(n)
    double diagonal = 0;       ///< sum_p p * sum_n r(n,p)^2
    double off_diagonal = 0;   ///< sum_{p != q} sqrt(pq) sum_n r(n,p) r(n,q)
    double cs_lower_bound = 0; ///< first_moment^2 / (diagonal + off_diagonal)
    std::uint64_t union_count = 0;
    /// Z <= X^(1/10) is the regime the moment estimates assume; violations
    /// are reported, not rejected.
    bool cutoff_in_regime = true;

    double second_moment() const noexcept { return diagonal + off_diagonal; }
    /// N * sum R^2 >= (sum R)^2
    bool cauchy_schwarz_holds() const noexcept;
};

MomentReport moment_report(std::uint64_t bound, const PrimeSubset& primes,
                           const SieveOptions& options = {});

// --- persistence -------------------------------------------------------------

inline constexpr char kRepTableMagic[4] = {'Q', 'F', 'R', 'T'};
inline constexpr std::uint16_t kRepTableVersion = 1;

/// Binary cache: "QFRT", u16 version, u64 X, u64 z, u8 width (=2), then
/// little-endian u16 counts for n = 1..X.
void write_rep_table(std::ostream& out, const RepTable& table);
RepTable read_rep_table(std::istream& in);

void save_rep_table(const std::string& path, const RepTable& table);
RepTable load_rep_table(const std::string& path);

/// CSV with header "n,r" and one row per n = 1..X.
void write_rep_table_csv(std::ostream& out, const RepTable& table);

}  // namespace qfd
