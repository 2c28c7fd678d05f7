#pragma once

// Dirichlet L-series of real characters at s = 1 and s = 2 with certified
// tails, the class number formula, and the explicit main term for
// sum_{n <= X} r(n, z1) r(n, z2).
//
// Characters are literal pointwise products of Kronecker symbols and are not
// reduced to their primitive cores.
//
// Tail certificates.  Let S(n) be the character partial sum; it is periodic
// with zero mean over one period when the character is non-principal.
//   s = 2:  |sum_{n>N} chi(n)/n^2| <= 2 max|S| / (N+1)^2.
//   s = 1:  sum_{n>N} chi(n)/n = (sbar - S(N))/(N+1) + sum_{n>N} (S(n)-sbar)/(n(n+1)),
//           where sbar is the period mean of S; a second partial summation
//           bounds the last sum by 2 max|C| / ((N+1)(N+2)), C being the
//           cumulative sum of S - sbar over one period.
// All maxima are computed exactly from one period.

#include <cstdint>
#include <string>
#include <vector>

#include "qfdensity/arith.hpp"

namespace qfd {

/// n -> prod_i (d_i / n).  The modulus is prod_i |d_i|.
class ProductCharacter {
public:
    explicit ProductCharacter(std::vector<std::int64_t> factors);

    const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    int operator()(std::uint64_t n) const;

    /// Values on 0..modulus-1.
    std::vector<std::int8_t> period_table() const;
    /// Identically 1 on units, i.e. the period sum is nonzero.
    bool is_principal() const;

private:
    std::vector<std::int64_t> factors_;
    std::uint64_t modulus_;
};

enum class LMethod { direct_with_tail, partial_summation };
std::string to_string(LMethod method);

struct LValue {
    double value = 0;
    double tail_bound = 0;
    std::uint64_t terms_used = 0;
    LMethod method = LMethod::direct_with_tail;
};

/// L(s, chi) for s in {1, 2} with tail_bound <= eps.  Principal characters
/// are rejected.
LValue l_value(const ProductCharacter& chi, int s, double eps);

/// Same evaluation with an explicit number of terms.
LValue l_value_terms(const ProductCharacter& chi, int s, std::uint64_t terms);

/// sum_{n <= Y} chi(n) / n
double truncated_l1(const ProductCharacter& chi, std::uint64_t cutoff);

struct ClassNumberCheck {
    std::uint64_t z = 0;
    std::size_t class_number = 0;
    double estimate = 0;   ///< sqrt(4z)/pi * L(1, chi_{z*})
    double residual = 0;   ///< |h - estimate|
    LValue l1;
};

ClassNumberCheck class_number_formula_check(const DiagonalForm& form, double eps);

struct EulerTerm {
    std::int64_t d = 1;
    /// prod_{p | d} (p - 1)/(p - psi(p)) as an exact fraction.
    std::int64_t numerator = 1;
    std::int64_t denominator = 1;
    double value = 1;
};

struct MainTermReport {
    std::uint64_t z1 = 0;
    std::uint64_t z2 = 0;
    double bound = 0;
    LValue l1;   ///< L(1, chi_{z1*} chi_{z2*})
    LValue l2;   ///< L(2, chi_{z1*} chi_{z2*})
    std::vector<EulerTerm> d_terms;
    double d_sum = 0;
    double value = 0;
    /// Propagated from the two L-value tails.
    double value_error_bound = 0;
};

/// pi^2 X / sqrt(z1* z2*) * L(1,psi)/L(2,psi) * sum_d prod_{p|d} (1-1/p)/(1-psi_d(p)/p)
/// with psi = chi_{z1*} chi_{z2*}, psi_d = chi_{z1*/d} chi_{z2*/d}, and d
/// running over the fundamental discriminants dividing gcd(|z1*|, |z2*|).
MainTermReport main_term(const DiagonalForm& first, const DiagonalForm& second, double bound,
                         double eps);

/// JSON object: z1, z2, X, l1, l2, d_terms[], value, tail bounds.
std::string to_json(const MainTermReport& report);

}  // namespace qfd
