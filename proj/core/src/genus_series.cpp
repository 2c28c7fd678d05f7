#include "qfdensity/genus_series.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qfd {

std::string_view to_string(SeriesOrigin origin) {
    switch (origin) {
        case SeriesOrigin::convolution: return "convolution";
        case SeriesOrigin::prime_power: return "prime-power";
        case SeriesOrigin::product: return "product";
        case SeriesOrigin::quotient: return "quotient";
        case SeriesOrigin::orthogonality: return "orthogonality";
        case SeriesOrigin::character: return "character";
    }
    return "unknown";
}

CoefficientSeries::CoefficientSeries(std::vector<std::int64_t> coeffs, SeriesOrigin origin)
    : coeffs_(std::move(coeffs)), origin_(origin) {}

std::int64_t CoefficientSeries::at(std::uint64_t n) const {
    if (n == 0 || n > coeffs_.size()) {
        throw std::out_of_range("series index " + std::to_string(n) + " outside [1, " +
                                std::to_string(coeffs_.size()) + "]");
    }
    return coeffs_[n - 1];
}

CoefficientSeries character_series(std::span<const std::int64_t> discriminants, std::size_t length) {
    std::vector<std::int64_t> out(length, 1);
    for (std::int64_t d : discriminants) {
        const Discriminant disc(d);
        const std::uint64_t period = disc.magnitude();
        std::vector<std::int8_t> table(period);
        for (std::uint64_t r = 0; r < period; ++r) {
            table[r] = static_cast<std::int8_t>(kronecker(d, static_cast<std::int64_t>(r)));
        }
        // chi_d has period |d| because d = 0, 1 (mod 4).
        for (std::size_t n = 1; n <= length; ++n) out[n - 1] *= table[n % period];
    }
    return CoefficientSeries(std::move(out), SeriesOrigin::character);
}

CoefficientSeries dirichlet_convolve(const CoefficientSeries& a, const CoefficientSeries& b) {
    const std::size_t len = std::min(a.length(), b.length());
    std::vector<std::int64_t> out(len, 0);
    for (std::size_t u = 1; u <= len; ++u) {
        const std::int64_t au = a[u];
        if (au == 0) continue;
        for (std::size_t v = 1, n = u; n <= len; ++v, n += u) out[n - 1] += au * b[v];
    }
    return CoefficientSeries(std::move(out), SeriesOrigin::convolution);
}

CoefficientSeries pointwise_product(const CoefficientSeries& a, const CoefficientSeries& b) {
    const std::size_t len = std::min(a.length(), b.length());
    std::vector<std::int64_t> out(len);
    for (std::size_t n = 1; n <= len; ++n) out[n - 1] = a[n] * b[n];
    return CoefficientSeries(std::move(out), SeriesOrigin::product);
}

SplitType split_type(const DiagonalForm& form, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("split_type: " + std::to_string(p) + " is not prime");
    const int chi = kronecker(form.z_star(), static_cast<std::int64_t>(p));
    const SplitKind kind = chi < 0 ? SplitKind::inert : chi > 0 ? SplitKind::split : SplitKind::ramified;
    return {p, kind};
}

namespace {

void require_pair(const DiagonalForm& form, const GenusPair& pair) {
    if (!is_genus_pair(form, pair.f.value(), pair.g.value())) {
        throw std::invalid_argument("(" + std::to_string(pair.f.value()) + ", " +
                                    std::to_string(pair.g.value()) +
                                    ") is not a genus factorization of " +
                                    std::to_string(form.z_star()));
    }
}

std::int64_t ipow(std::int64_t base, unsigned k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= base;
    return r;
}

}  // namespace

CoefficientSeries genus_coeffs(const DiagonalForm& form, const GenusPair& pair, std::size_t length) {
    require_pair(form, pair);
    const std::int64_t f[] = {pair.f.value()};
    const std::int64_t g[] = {pair.g.value()};
    return dirichlet_convolve(character_series(f, length), character_series(g, length));
}

std::int64_t prime_power_coeff(const DiagonalForm& form, const GenusPair& pair,
                               std::uint64_t p, unsigned k) {
    require_pair(form, pair);
    if (k == 0) return 1;
    const SplitType type = split_type(form, p);
    if (type.kind == SplitKind::inert) return k % 2 == 0 ? 1 : 0;

    // Value of the genus character on a prime ideal above p: chi_f(N p) when
    // p does not divide f, otherwise chi_g(N p).
    const auto ip = static_cast<std::int64_t>(p);
    const int on_prime = pair.f.value() % ip != 0 ? pair.f.chi(ip) : pair.g.chi(ip);
    if (type.kind == SplitKind::ramified) return ipow(on_prime, k);
    // Split: both primes above p take the same value, so the symmetric sum
    // sum_j chi(p)^j chi(pbar)^(k-j) collapses to (k+1) chi(p)^k.
    return static_cast<std::int64_t>(k + 1) * ipow(on_prime, k);
}

CoefficientSeries reconstruct_r(const DiagonalForm& form, std::size_t length) {
    const ClassGroupInfo info = class_group_info(form);
    if (!info.one_class_per_genus()) {
        throw std::domain_error("z = " + std::to_string(form.z()) + ": class number " +
                                std::to_string(info.class_number()) + " exceeds the " +
                                std::to_string(info.genus.size()) +
                                " genus characters; r(n, z) needs non-genus characters");
    }
    std::vector<std::int64_t> sum(length, 0);
    for (const auto& pair : info.genus) {
        const auto a = genus_coeffs(form, pair, length);
        for (std::size_t n = 1; n <= length; ++n) sum[n - 1] += a[n];
    }
    const auto h = static_cast<std::int64_t>(info.class_number());
    for (std::size_t n = 1; n <= length; ++n) {
        if (sum[n - 1] % h != 0) {
            throw InvariantViolation("orthogonality sum at n = " + std::to_string(n) +
                                     " is not divisible by h = " + std::to_string(h));
        }
        sum[n - 1] /= h;
    }
    return CoefficientSeries(std::move(sum), SeriesOrigin::orthogonality);
}

IdentitySides mobius_identity_sides(const CharacterQuadruple& q, std::uint64_t n) {
    const std::int64_t chars[4] = {q.f1, q.g1, q.f2, q.g2};
    for (std::int64_t d : chars) {
        if (!is_fundamental(d)) {
            throw std::invalid_argument(std::to_string(d) + " is not a fundamental discriminant");
        }
    }
    if (n == 0) throw std::invalid_argument("mobius_identity_sides: n must be >= 1");

    const auto divs_n = divisors(n);
    auto chi = [](std::int64_t d, std::uint64_t m) {
        return static_cast<std::int64_t>(kronecker(d, static_cast<std::int64_t>(m)));
    };

    std::int64_t conv1 = 0, conv2 = 0;
    for (std::uint64_t r : divs_n) {
        conv1 += chi(q.f1, r) * chi(q.g1, n / r);
        conv2 += chi(q.f2, r) * chi(q.g2, n / r);
    }

    std::int64_t rhs = 0;
    for (std::uint64_t e : divs_n) {
        if (e * e > n) break;
        if (n % (e * e) != 0) continue;
        const int mu = mobius(e);
        if (mu == 0) continue;
        const std::uint64_t m = n / (e * e);
        const auto divs = divisors(m);
        // chi(x) on each divisor of m, per character; the symbols are
        // completely multiplicative so chi(abe) = chi(a) chi(b) chi(e).
        std::vector<std::array<std::int64_t, 4>> val(divs.size());
        for (std::size_t i = 0; i < divs.size(); ++i) {
            for (int c = 0; c < 4; ++c) val[i][c] = chi(chars[c], divs[i]);
        }
        std::array<std::int64_t, 4> ve{};
        for (int c = 0; c < 4; ++c) ve[c] = chi(chars[c], e);
        auto index_of = [&](std::uint64_t x) {
            return static_cast<std::size_t>(std::lower_bound(divs.begin(), divs.end(), x) - divs.begin());
        };
        for (std::size_t ia = 0; ia < divs.size(); ++ia) {
            const std::uint64_t ma = m / divs[ia];
            for (std::size_t ib = 0; ib < divs.size() && divs[ib] <= ma; ++ib) {
                if (ma % divs[ib] != 0) continue;
                const std::uint64_t mab = ma / divs[ib];
                for (std::size_t ic = 0; ic < divs.size() && divs[ic] <= mab; ++ic) {
                    if (mab % divs[ic] != 0) continue;
                    const std::size_t id = index_of(mab / divs[ic]);
                    const auto& a = val[ia];
                    const auto& b = val[ib];
                    const auto& c = val[ic];
                    const auto& d = val[id];
                    rhs += mu * (a[0] * b[0] * ve[0]) * (c[1] * d[1] * ve[1]) *
                           (a[2] * c[2] * ve[2]) * (b[3] * d[3] * ve[3]);
                }
            }
        }
    }
    return {conv1 * conv2, rhs};
}

CoefficientSeries four_fold_series(const GenusPair& pair1, const GenusPair& pair2, std::size_t length) {
    const std::int64_t f1 = pair1.f.value(), g1 = pair1.g.value();
    const std::int64_t f2 = pair2.f.value(), g2 = pair2.g.value();
    const std::int64_t s1[] = {f1, f2};
    const std::int64_t s2[] = {f1, g2};
    const std::int64_t s3[] = {g1, f2};
    const std::int64_t s4[] = {g1, g2};
    auto out = dirichlet_convolve(
        dirichlet_convolve(character_series(s1, length), character_series(s2, length)),
        dirichlet_convolve(character_series(s3, length), character_series(s4, length)));
    return CoefficientSeries({out.coeffs().begin(), out.coeffs().end()}, SeriesOrigin::product);
}

CoefficientSeries five_fold_series(const DiagonalForm& first, const DiagonalForm& second,
                                   const GenusPair& pair1, const GenusPair& pair2,
                                   std::size_t length) {
    require_pair(first, pair1);
    require_pair(second, pair2);
    // 1 / L(2s, chi_{z1* z2*}) = sum_e mu(e) chi_{z1*}(e) chi_{z2*}(e) e^{-2s}
    const auto mu = mobius_table(isqrt(length));
    std::vector<std::int64_t> inverse(length, 0);
    for (std::uint64_t e = 1; e * e <= length; ++e) {
        if (mu[e] == 0) continue;
        const auto ie = static_cast<std::int64_t>(e);
        inverse[e * e - 1] = mu[e] * kronecker(first.z_star(), ie) * kronecker(second.z_star(), ie);
    }
    auto out = dirichlet_convolve(four_fold_series(pair1, pair2, length),
                                  CoefficientSeries(std::move(inverse), SeriesOrigin::character));
    return CoefficientSeries({out.coeffs().begin(), out.coeffs().end()}, SeriesOrigin::product);
}

FactorizationCheck factorization_check(const DiagonalForm& first, const DiagonalForm& second,
                                       const GenusPair& pair1, const GenusPair& pair2,
                                       std::size_t length) {
    if (first == second) throw std::invalid_argument("factorization_check needs z1 != z2");
    const auto lhs = pointwise_product(genus_coeffs(first, pair1, length),
                                       genus_coeffs(second, pair2, length));
    const auto rhs = five_fold_series(first, second, pair1, pair2, length);
    FactorizationCheck out;
    for (std::size_t n = 1; n <= length; ++n) {
        if (lhs[n] != rhs[n]) {
            out.ok = false;
            out.first_mismatch = n;
            out.lhs_at_mismatch = lhs[n];
            out.rhs_at_mismatch = rhs[n];
            break;
        }
    }
    return out;
}

CoefficientSeries quotient_series(const CoefficientSeries& a, const CoefficientSeries& b) {
    const std::size_t len = std::min(a.length(), b.length());
    if (len == 0) return CoefficientSeries({}, SeriesOrigin::quotient);
    if (a[1] != 1 || b[1] != 1) {
        throw std::invalid_argument("quotient_series: multiplicative inputs need a(1) = b(1) = 1");
    }
    if (len > UINT32_MAX) throw std::invalid_argument("quotient_series: length too large");

    // g at prime powers, indexed by the prime power itself.
    std::vector<std::int64_t> at_prime_power(len + 1, 0);
    for (std::uint64_t p : primes_up_to(len)) {
        std::vector<std::int64_t> ak{1}, bk{1}, gk{1};
        for (std::uint64_t pk = p; pk <= len; pk *= p) {
            ak.push_back(a[pk]);
            bk.push_back(b[pk]);
            const std::size_t k = ak.size() - 1;
            std::int64_t g = ak[k] - bk[k];
            for (std::size_t m = 1; m < k; ++m) g -= bk[m] * gk[k - m];
            gk.push_back(g);
            at_prime_power[pk] = g;
            if (pk > len / p) break;
        }
    }

    const auto spf = smallest_prime_factor_table(static_cast<std::uint32_t>(len));
    std::vector<std::int64_t> out(len, 0);
    out[0] = 1;
    for (std::size_t n = 2; n <= len; ++n) {
        const std::uint64_t p = spf[n];
        std::uint64_t pk = 1, m = n;
        while (m % p == 0) {
            m /= p;
            pk *= p;
        }
        out[n - 1] = at_prime_power[pk] * out[m - 1];
    }
    return CoefficientSeries(std::move(out), SeriesOrigin::quotient);
}

void write_series_csv(std::ostream& out, const CoefficientSeries& series) {
    out << "n,a_n\n";
    for (std::size_t n = 1; n <= series.length(); ++n) out << n << ',' << series[n] << '\n';
}

}  // namespace qfd
