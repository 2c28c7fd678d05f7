#pragma once

// Dirichlet coefficients attached to genus characters of Q(sqrt(z*)).
//
// For a genus character chi_{f,g} the class group L-function factors as
// L(s, chi_f) L(s, chi_g), so its coefficients are the convolution
// chi_f * chi_g.  This module computes those coefficients two independent
// ways (convolution and the per-prime split/inert/ramified case formulas),
// recovers r(n, z) by orthogonality when every class character is a genus
// character, checks the Moebius expansion of a product of two convolutions
// and the five-fold factorization that follows from it, and divides one
// multiplicative series by another prime by prime.
//
// All arithmetic is exact (64-bit integers).  Product characters such as
// chi_{f1 f2} are evaluated pointwise as chi_{f1}(n) chi_{f2}(n).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfdensity/arith.hpp"
#include "qfdensity/class_group.hpp"

namespace qfd {

enum class SeriesOrigin { convolution, prime_power, product, quotient, orthogonality, character };

std::string_view to_string(SeriesOrigin origin);

/// First N Dirichlet coefficients a(1..N).
class CoefficientSeries {
public:
    CoefficientSeries(std::vector<std::int64_t> coeffs, SeriesOrigin origin);

    std::size_t length() const noexcept { return coeffs_.size(); }
    SeriesOrigin origin() const noexcept { return origin_; }

    /// a(n), 1 <= n <= N.
    std::int64_t operator[](std::uint64_t n) const { return coeffs_[n - 1]; }
    std::int64_t at(std::uint64_t n) const;
    std::span<const std::int64_t> coeffs() const noexcept { return coeffs_; }

private:
    std::vector<std::int64_t> coeffs_;
    SeriesOrigin origin_;
};

/// n -> prod_i chi_{d_i}(n), n = 1..N.
CoefficientSeries character_series(std::span<const std::int64_t> discriminants, std::size_t length);

/// Dirichlet convolution truncated to min(|a|, |b|) terms.
CoefficientSeries dirichlet_convolve(const CoefficientSeries& a, const CoefficientSeries& b);

/// Pointwise product a(n) b(n).
CoefficientSeries pointwise_product(const CoefficientSeries& a, const CoefficientSeries& b);

/// Splitting type of a rational prime in Q(sqrt(z*)).
enum class SplitKind { inert, split, ramified };

struct SplitType {
    std::uint64_t p;
    SplitKind kind;
};

SplitType split_type(const DiagonalForm& form, std::uint64_t p);

/// a(n, chi_{f,g}) = (chi_f * chi_g)(n) for n = 1..N.
CoefficientSeries genus_coeffs(const DiagonalForm& form, const GenusPair& pair, std::size_t length);

/// a(p^k, chi_{f,g}) from the inert/split/ramified case formulas.
std::int64_t prime_power_coeff(const DiagonalForm& form, const GenusPair& pair,
                               std::uint64_t p, unsigned k);

/// r(n, z) = (1/h) sum over genus characters of a(n, chi).  Throws
/// std::domain_error when the class group has non-genus characters.
CoefficientSeries reconstruct_r(const DiagonalForm& form, std::size_t length);

/// Four fundamental discriminants (f1, g1, f2, g2).
struct CharacterQuadruple {
    std::int64_t f1;
    std::int64_t g1;
    std::int64_t f2;
    std::int64_t g2;
};

struct IdentitySides {
    std::int64_t lhs;
    std::int64_t rhs;
    friend bool operator==(const IdentitySides&, const IdentitySides&) = default;
};

/// lhs = (chi_f1 * chi_g1)(n) (chi_f2 * chi_g2)(n);
/// rhs = sum over ordered n = a b c d e^2 of
///       mu(e) chi_f1(abe) chi_g1(cde) chi_f2(ace) chi_g2(bde).
/// Both sides are computed by direct enumeration.
IdentitySides mobius_identity_sides(const CharacterQuadruple& q, std::uint64_t n);

struct FactorizationCheck {
    bool ok = true;
    std::optional<std::uint64_t> first_mismatch;
    std::int64_t lhs_at_mismatch = 0;
    std::int64_t rhs_at_mismatch = 0;
};

/// Coefficients of the five-fold factorization
/// L(s,chi_{f1f2}) L(s,chi_{f1g2}) L(s,chi_{g1f2}) L(s,chi_{g1g2}) / L(2s, chi_{z1* z2*}).
CoefficientSeries five_fold_series(const DiagonalForm& first, const DiagonalForm& second,
                                   const GenusPair& pair1, const GenusPair& pair2,
                                   std::size_t length);

/// The four-fold product L(s,chi_{f1f2}) L(s,chi_{f1g2}) L(s,chi_{g1f2}) L(s,chi_{g1g2}).
CoefficientSeries four_fold_series(const GenusPair& pair1, const GenusPair& pair2,
                                   std::size_t length);

/// Checks a1(n, chi_1) a2(n, chi_2) against five_fold_series for n <= N.
FactorizationCheck factorization_check(const DiagonalForm& first, const DiagonalForm& second,
                                       const GenusPair& pair1, const GenusPair& pair2,
                                       std::size_t length);

/// G with A = B G, for multiplicative A and B with a(1) = b(1) = 1, via
/// g_k(p) = a_k(p) - b_k(p) - sum_{m=1}^{k-1} b_m(p) g_{k-m}(p).
CoefficientSeries quotient_series(const CoefficientSeries& a, const CoefficientSeries& b);

/// CSV with header "n,a_n".
void write_series_csv(std::ostream& out, const CoefficientSeries& series);

}  // namespace qfd
