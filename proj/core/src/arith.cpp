#include "qfdensity/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qfd {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// (a/2) in the Kronecker sense.
int kronecker_two(std::int64_t a) {
    if ((a & 1) == 0) return 0;
    const std::int64_t r = floor_mod(a, 8);
    return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) noexcept { return std::gcd(a, b); }

std::uint64_t isqrt(std::uint64_t n) noexcept {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

int jacobi(std::int64_t a, std::int64_t n) {
    if (n <= 0 || (n & 1) == 0) {
        throw std::invalid_argument("jacobi: modulus must be odd and positive, got " +
                                    std::to_string(n));
    }
    a = floor_mod(a, n);
    int result = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const std::int64_t r = n & 7;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

int kronecker(std::int64_t d, std::int64_t n) {
    if (d == 0) throw std::invalid_argument("kronecker: d must be nonzero");
    if (n < 0) throw std::invalid_argument("kronecker: n must be nonnegative");
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;

    int result = 1;
    while ((n & 1) == 0) {
        n >>= 1;
        result *= kronecker_two(d);
        if (result == 0) return 0;
    }
    return result * jacobi(d, n);
}

bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return false;
        }
    }
    return true;
}

bool is_fundamental(std::int64_t d) {
    if (d == 1) return true;
    if (d == 0) return false;
    const std::int64_t r = floor_mod(d, 4);
    const auto mag = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (r == 1) return is_squarefree(mag);
    if (r != 0) return false;
    const std::int64_t m = d / 4;
    const std::int64_t mr = floor_mod(m, 4);
    if (mr != 2 && mr != 3) return false;
    return is_squarefree(mag / 4);
}

Discriminant::Discriminant(std::int64_t value) : value_(value) {
    if (value == 0) throw std::invalid_argument("discriminant must be nonzero");
    const std::int64_t r = floor_mod(value, 4);
    if (r != 0 && r != 1) {
        throw std::invalid_argument("discriminant must be 0 or 1 mod 4, got " +
                                    std::to_string(value));
    }
}

std::uint64_t Discriminant::magnitude() const noexcept {
    return static_cast<std::uint64_t>(value_ < 0 ? -value_ : value_);
}

bool in_w(std::uint64_t z) noexcept { return z > 1 && z % 4 == 1 && is_squarefree(z); }

DiagonalForm::DiagonalForm(std::uint64_t z) : z_(z) {
    if (!in_w(z)) {
        throw std::invalid_argument("z = " + std::to_string(z) +
                                    " is not a squarefree z > 1 with z = 1 (mod 4)");
    }
}

std::vector<Discriminant> fundamental_divisors(std::uint64_t m) {
    std::vector<Discriminant> out;
    if (m == 0) return out;
    for (std::uint64_t dv : divisors(m)) {
        const auto v = static_cast<std::int64_t>(dv);
        if (is_fundamental(-v)) out.emplace_back(-v);
        if (is_fundamental(v)) out.emplace_back(v);
    }
    return out;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.push_back({p, k});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out{1};
    if (n == 0) return {};
    for (const auto& [p, k] : factorize(n)) {
        const std::size_t base = out.size();
        std::uint64_t pk = 1;
        for (unsigned e = 1; e <= k; ++e) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int mobius(std::uint64_t n) {
    int mu = 1;
    for (const auto& pp : factorize(n)) {
        if (pp.k > 1) return 0;
        mu = -mu;
    }
    return mu;
}

std::uint64_t tau(std::uint64_t n) {
    std::uint64_t t = 1;
    for (const auto& pp : factorize(n)) t *= pp.k + 1;
    return t;
}

SquarefreeDecomposition squarefree_part(std::uint64_t n) {
    SquarefreeDecomposition out{1, 1};
    for (const auto& [p, k] : factorize(n)) {
        if (k % 2 == 1) out.core *= p;
        for (unsigned i = 0; i < k / 2; ++i) out.root *= p;
    }
    return out;
}

unsigned omega(std::uint64_t n) { return static_cast<unsigned>(factorize(n).size()); }

std::vector<std::uint32_t> smallest_prime_factor_table(std::uint32_t limit) {
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= limit; j += i) {
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
    }
    return spf;
}

std::vector<std::int8_t> mobius_table(std::uint64_t limit) {
    std::vector<std::int8_t> mu(limit + 1, 1);
    mu[0] = 0;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t j = p; j <= limit; j += p) {
            if (j > p) composite[j] = true;
            mu[j] = static_cast<std::int8_t>(-mu[j]);
        }
        if (p <= limit / p) {
            for (std::uint64_t j = p * p; j <= limit; j += p * p) mu[j] = 0;
        }
    }
    return mu;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i <= limit / i) {
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
    }
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) return false;
    }
    return true;
}

PrimeSubset primes_1mod4(std::uint64_t cutoff, SubsetSpec spec) {
    if (spec.kind == SubsetSpec::Kind::thinned && spec.stride == 0) {
        throw std::invalid_argument("thinned prime subset needs stride >= 1");
    }
    PrimeSubset out;
    out.cutoff = cutoff;
    out.spec = spec;
    std::size_t index = 0;
    for (std::uint64_t p : primes_up_to(cutoff)) {
        if (p % 4 != 1) continue;
        const bool keep = spec.kind == SubsetSpec::Kind::all || index % spec.stride == 0;
        if (keep) out.primes.push_back(p);
        ++index;
    }
    return out;
}

}  // namespace qfd
