#pragma once

// Slow, independent reference implementations.  Nothing here calls into the
// library under test.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

__extension__ typedef unsigned __int128 u128;

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k) out.emplace_back(p, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool squarefree(std::uint64_t n) {
    for (const auto& [p, k] : trial_factor(n)) {
        if (k > 1) return false;
    }
    return true;
}

inline bool prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b = mod(b, m);
    while (e > 0) {
        if (e & 1) r = static_cast<std::int64_t>((static_cast<u128>(r) * b) % m);
        b = static_cast<std::int64_t>((static_cast<u128>(b) * b) % m);
        e >>= 1;
    }
    return r;
}

/// Kronecker symbol from the Euler criterion at odd primes, the (d/2) rule
/// and complete multiplicativity.
inline int kronecker(std::int64_t d, std::int64_t n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int v = 1;
    for (const auto& [p, k] : trial_factor(static_cast<std::uint64_t>(n))) {
        int at_p;
        if (p == 2) {
            const std::int64_t r = mod(d, 8);
            at_p = (r % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
        } else {
            const auto pp = static_cast<std::int64_t>(p);
            if (mod(d, pp) == 0) {
                at_p = 0;
            } else {
                at_p = powmod(d, (pp - 1) / 2, pp) == 1 ? 1 : -1;
            }
        }
        for (unsigned i = 0; i < k; ++i) v *= at_p;
    }
    return v;
}

inline bool fundamental(std::int64_t d) {
    if (d == 1) return true;
    if (mod(d, 4) == 1) return squarefree(static_cast<std::uint64_t>(std::llabs(d)));
    if (mod(d, 4) == 0) {
        const std::int64_t m = d / 4;
        return (mod(m, 4) == 2 || mod(m, 4) == 3) && squarefree(static_cast<std::uint64_t>(std::llabs(m)));
    }
    return false;
}

/// r(n, z) for n = 0..X by a symmetric double loop over all signs.
inline std::vector<std::int64_t> naive_r(std::uint64_t z, std::uint64_t bound) {
    std::vector<std::int64_t> raw(bound + 1, 0);
    const auto xmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(bound))) + 1;
    for (std::int64_t x = -xmax; x <= xmax; ++x) {
        for (std::int64_t y = -xmax; y <= xmax; ++y) {
            const std::int64_t n = x * x + static_cast<std::int64_t>(z) * y * y;
            if (n <= static_cast<std::int64_t>(bound)) ++raw[static_cast<std::size_t>(n)];
        }
    }
    for (auto& v : raw) v /= 2;
    return raw;
}

struct Form {
    std::int64_t a, b, c;
};

/// Reduced primitive forms of discriminant D < 0 by an unpruned scan.
inline std::vector<Form> reduced_forms(std::int64_t disc) {
    std::vector<Form> out;
    const std::int64_t m = -disc;
    for (std::int64_t a = 1; a <= m; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            std::int64_t g = std::abs(b);
            for (std::int64_t t : {a, c}) {
                std::int64_t u = t, v = g;
                while (v) {
                    const std::int64_t w = u % v;
                    u = v;
                    v = w;
                }
                g = u;
            }
            if (g == 1) out.push_back({a, b, c});
        }
    }
    return out;
}

/// (chi_f * chi_g)(n) by divisor enumeration.
inline std::int64_t convolution(std::int64_t f, std::int64_t g, std::uint64_t n) {
    std::int64_t s = 0;
    for (std::uint64_t u = 1; u <= n; ++u) {
        if (n % u == 0) {
            s += kronecker(f, static_cast<std::int64_t>(u)) * kronecker(g, static_cast<std::int64_t>(n / u));
        }
    }
    return s;
}

inline int mobius(std::uint64_t n) {
    int v = 1;
    for (const auto& [p, k] : trial_factor(n)) {
        if (k > 1) return 0;
        v = -v;
    }
    return v;
}

}  // namespace oracle
