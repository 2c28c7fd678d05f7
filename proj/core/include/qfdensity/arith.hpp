#pragma once

// Exact integer arithmetic used throughout the toolkit: Kronecker symbols,
// fundamental discriminants, the diagonal forms x^2 + z y^2 with z in W,
// multiplicative functions and primes p = 1 (mod 4).

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qfd {

/// Raised when a computed object breaks a mathematical invariant the code
/// relies on (e.g. a lattice count not divisible by the unit number).
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Kronecker symbol (d/n) for d != 0 and n >= 0.
int kronecker(std::int64_t d, std::int64_t n);

/// Legendre/Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);

bool is_squarefree(std::uint64_t n);

/// d = 1, or squarefree d = 1 (mod 4), or d = 4m with m = 2,3 (mod 4) squarefree.
bool is_fundamental(std::int64_t d);

/// A nonzero integer congruent to 0 or 1 mod 4.  The value 1 is admitted and
/// stands for the trivial character.
class Discriminant {
public:
    explicit Discriminant(std::int64_t value);

    std::int64_t value() const noexcept { return value_; }
    std::uint64_t magnitude() const noexcept;
    bool is_fundamental() const noexcept { return qfd::is_fundamental(value_); }

    /// chi_d(n) = (d/n)
    int chi(std::int64_t n) const { return kronecker(value_, n); }

    friend bool operator==(const Discriminant&, const Discriminant&) = default;

private:
    std::int64_t value_;
};

/// The diagonal form x^2 + z y^2 with z squarefree and z = 1 (mod 4).
/// Its discriminant is z* = -4z and the unit count g_z is always 2.
class DiagonalForm {
public:
    explicit DiagonalForm(std::uint64_t z);

    std::uint64_t z() const noexcept { return z_; }
    std::int64_t z_star() const noexcept { return -4 * static_cast<std::int64_t>(z_); }
    Discriminant discriminant() const { return Discriminant(z_star()); }
    unsigned units() const noexcept { return 2; }

    friend bool operator==(const DiagonalForm&, const DiagonalForm&) = default;

private:
    std::uint64_t z_;
};

/// Membership test for W = { z > 1 : z = 1 (mod 4), z squarefree }.
bool in_w(std::uint64_t z) noexcept;

/// All fundamental discriminants d (either sign, including 1) with |d| | m,
/// sorted by |d| and then negative before positive.
std::vector<Discriminant> fundamental_divisors(std::uint64_t m);

// --- multiplicative functions -------------------------------------------

struct PrimePower {
    std::uint64_t p;
    unsigned k;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization, primes ascending.
std::vector<PrimePower> factorize(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

int mobius(std::uint64_t n);
std::uint64_t tau(std::uint64_t n);

/// n = core * root^2 with core squarefree.
struct SquarefreeDecomposition {
    std::uint64_t core;
    std::uint64_t root;
    friend bool operator==(const SquarefreeDecomposition&,
                           const SquarefreeDecomposition&) = default;
};
SquarefreeDecomposition squarefree_part(std::uint64_t n);

/// Number of distinct prime divisors.
unsigned omega(std::uint64_t n);

/// mu(n) for 0 <= n <= limit (entry 0 is 0).
std::vector<std::int8_t> mobius_table(std::uint64_t limit);

/// Smallest prime factor for 0 <= n <= limit (entries 0 and 1 are 0).
std::vector<std::uint32_t> smallest_prime_factor_table(std::uint32_t limit);

// --- primes ----------------------------------------------------------------

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
bool is_prime(std::uint64_t n);

/// Which primes p = 1 (mod 4) below the cutoff are kept.
struct SubsetSpec {
    enum class Kind { all, thinned };
    Kind kind = Kind::all;
    /// For Kind::thinned: keep the primes whose 0-based index in the ordered
    /// list of primes p = 1 (mod 4) is a multiple of stride.
    unsigned stride = 2;

    static SubsetSpec all_primes() { return {}; }
    static SubsetSpec thinned(unsigned stride) { return {Kind::thinned, stride}; }
};

struct PrimeSubset {
    std::uint64_t cutoff = 0;
    SubsetSpec spec;
    std::vector<std::uint64_t> primes;

    std::size_t size() const noexcept { return primes.size(); }
    bool empty() const noexcept { return primes.empty(); }
};

/// Primes p = 1 (mod 4) with p <= cutoff, optionally thinned.
PrimeSubset primes_1mod4(std::uint64_t cutoff, SubsetSpec spec = {});

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t isqrt(std::uint64_t n) noexcept;

}  // namespace qfd
