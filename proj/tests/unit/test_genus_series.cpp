#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qfdensity/genus_series.hpp"
#include "qfdensity/qf_sieve.hpp"

using namespace qfd;

namespace {

GenusPair pair_of(std::int64_t f, std::int64_t g) { return {Discriminant(f), Discriminant(g)}; }

bool is_prime_power(std::uint64_t n, std::uint64_t& p, unsigned& k) {
    const auto f = oracle::trial_factor(n);
    if (f.size() != 1) return false;
    p = f[0].first;
    k = f[0].second;
    return true;
}

}  // namespace

TEST_CASE("genus coefficients worked values") {
    const DiagonalForm five(5);
    const auto principal = genus_coeffs(five, pair_of(1, -20), 10);
    const auto other = genus_coeffs(five, pair_of(-4, 5), 10);
    CHECK(principal[3] == 2);
    CHECK(other[3] == -2);
    CHECK(principal[1] == 1);
    CHECK(other[1] == 1);
    CHECK(other[5] == 1);
    CHECK(principal.origin() == SeriesOrigin::convolution);
    CHECK_THROWS_AS(genus_coeffs(five, pair_of(-4, 13), 10), std::invalid_argument);
}

TEST_CASE("genus coefficients match divisor-sum oracle") {
    for (std::uint64_t z : {5u, 13u, 21u, 33u, 41u}) {
        const DiagonalForm form(z);
        for (const auto& pair : genus_pairs(form)) {
            const auto series = genus_coeffs(form, pair, 2000);
            for (std::uint64_t n = 1; n <= 2000; ++n) {
                REQUIRE(series[n] == oracle::convolution(pair.f.value(), pair.g.value(), n));
                REQUIRE(std::llabs(series[n]) <= static_cast<std::int64_t>(tau(n)));
            }
        }
    }
}

TEST_CASE("split types follow chi_{z*}(p)") {
    const DiagonalForm form(5);
    CHECK(split_type(form, 3).kind == SplitKind::split);
    CHECK(split_type(form, 2).kind == SplitKind::ramified);
    CHECK(split_type(form, 5).kind == SplitKind::ramified);
    CHECK(split_type(form, 11).kind == SplitKind::inert);
    CHECK_THROWS(split_type(form, 9));
    for (auto p : primes_up_to(1000)) {
        const int c = oracle::kronecker(-20, static_cast<std::int64_t>(p));
        const auto kind = split_type(form, p).kind;
        REQUIRE(kind == (c == 1 ? SplitKind::split : c == -1 ? SplitKind::inert : SplitKind::ramified));
    }
}

TEST_CASE("prime power case formulas") {
    const DiagonalForm five(5);
    CHECK(prime_power_coeff(five, pair_of(1, -20), 3, 1) == 2);
    CHECK(prime_power_coeff(five, pair_of(-4, 5), 5, 3) == 1);
    for (unsigned k = 0; k < 8; ++k) {
        CHECK(prime_power_coeff(five, pair_of(-4, 5), 11, k) == (k % 2 ? 0 : 1));
    }

    for (std::uint64_t z : {5u, 13u, 17u, 21u, 33u}) {
        const DiagonalForm form(z);
        for (const auto& pair : genus_pairs(form)) {
            const auto series = genus_coeffs(form, pair, 10000);
            for (std::uint64_t n = 2; n <= 10000; ++n) {
                std::uint64_t p;
                unsigned k;
                if (!is_prime_power(n, p, k)) continue;
                const auto v = prime_power_coeff(form, pair, p, k);
                REQUIRE_MESSAGE(v == series[n], "z=" << z << " n=" << n);
                REQUIRE(std::llabs(v) <= static_cast<std::int64_t>(k) + 1);
            }
        }
    }
}

TEST_CASE("orthogonality reconstruction") {
    const auto five = reconstruct_r(DiagonalForm(5), 10);
    CHECK(five[3] == 0);
    CHECK(five[6] == 2);
    CHECK(five[1] == 1);
    CHECK(five.origin() == SeriesOrigin::orthogonality);

    for (std::uint64_t z : {5u, 13u, 21u, 33u, 105u}) {
        const DiagonalForm form(z);
        REQUIRE(class_group_info(form).one_class_per_genus());
        const auto series = reconstruct_r(form, 10000);
        const auto ref = oracle::naive_r(z, 10000);
        for (std::uint64_t n = 1; n <= 10000; ++n) REQUIRE(series[n] == ref[n]);
    }
    CHECK_THROWS_AS(reconstruct_r(DiagonalForm(41), 100), std::domain_error);
}

TEST_CASE("Moebius identity worked values") {
    CHECK(mobius_identity_sides({1, 1, 1, 1}, 4) == IdentitySides{9, 9});
    CHECK(mobius_identity_sides({1, -20, -4, 5}, 3) == IdentitySides{-4, -4});
    CHECK(mobius_identity_sides({-3, 28, -4, 13}, 1) == IdentitySides{1, 1});
}

TEST_CASE("Moebius identity over random quadruples") {
    const std::vector<std::int64_t> pool = {1, -3, -4, 5, -7, -8, 8, -11, 12, 13, -15, 17, -20, 21, -24, 28};
    std::uint64_t state = 12345;
    auto pick = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return pool[(state >> 33) % pool.size()];
    };
    for (int trial = 0; trial < 6; ++trial) {
        const CharacterQuadruple q{pick(), pick(), pick(), pick()};
        for (std::uint64_t n = 1; n <= 1500; ++n) {
            const auto sides = mobius_identity_sides(q, n);
            REQUIRE(sides.lhs == sides.rhs);
            REQUIRE(sides.lhs == oracle::convolution(q.f1, q.g1, n) * oracle::convolution(q.f2, q.g2, n));
        }
    }
}

TEST_CASE("five-fold factorization") {
    const DiagonalForm z5(5), z13(13);
    CHECK(factorization_check(z5, z13, pair_of(1, -20), pair_of(1, -52), 100).ok);
    CHECK(factorization_check(z5, z13, pair_of(-4, 5), pair_of(-4, 13), 100).ok);
    CHECK_THROWS_AS(factorization_check(z5, z5, pair_of(1, -20), pair_of(1, -20), 10), std::invalid_argument);

    for (auto [a, b] : {std::pair{5u, 21u}, std::pair{13u, 17u}}) {
        const DiagonalForm f1(a), f2(b);
        for (const auto& p1 : genus_pairs(f1)) {
            for (const auto& p2 : genus_pairs(f2)) {
                const auto res = factorization_check(f1, f2, p1, p2, 2000);
                REQUIRE(res.ok);
                CHECK_FALSE(res.first_mismatch.has_value());
            }
        }
    }

    // mixed principal / non-principal pair
    const auto five = five_fold_series(z5, z13, pair_of(-4, 5), pair_of(1, -52), 50);
    const auto a1 = genus_coeffs(z5, pair_of(-4, 5), 50);
    const auto a2 = genus_coeffs(z13, pair_of(1, -52), 50);
    for (std::uint64_t n = 1; n <= 50; ++n) CHECK(five[n] == a1[n] * a2[n]);
}

TEST_CASE("quotient series") {
    const auto ones = CoefficientSeries(std::vector<std::int64_t>(500, 1), SeriesOrigin::character);
    const auto g = quotient_series(ones, ones);
    CHECK(g[1] == 1);
    for (std::uint64_t n = 2; n <= 500; ++n) REQUIRE(g[n] == 0);
    CHECK(g.origin() == SeriesOrigin::quotient);

    // mu = 1 / zeta
    std::vector<std::int64_t> delta(500, 0);
    delta[0] = 1;
    const auto mu = quotient_series(CoefficientSeries(delta, SeriesOrigin::character), ones);
    for (std::uint64_t n = 1; n <= 500; ++n) REQUIRE(mu[n] == oracle::mobius(n));

    const DiagonalForm z5(5), z13(13);
    const auto pair1 = pair_of(-4, 5), pair2 = pair_of(-4, 13);
    const auto a = pointwise_product(genus_coeffs(z5, pair1, 3000), genus_coeffs(z13, pair2, 3000));
    const auto b = four_fold_series(pair1, pair2, 3000);
    const auto q = quotient_series(a, b);
    const auto back = dirichlet_convolve(b, q);
    for (std::uint64_t n = 1; n <= 3000; ++n) REQUIRE(back[n] == a[n]);
    for (std::uint64_t n = 2; n <= 3000; ++n) {
        const auto sf = squarefree_part(n);
        if (sf.core != 1) REQUIRE(q[n] == 0);
    }
    for (auto p : primes_up_to(54)) {
        if (p == 2 || p == 5 || p == 13) continue;
        REQUIRE(q[p * p] == -oracle::kronecker(-20 * -52, static_cast<std::int64_t>(p)));
    }
}

TEST_CASE("series helpers") {
    const std::int64_t d[] = {-4};
    const auto chi = character_series(d, 8);
    CHECK(std::vector<std::int64_t>(chi.coeffs().begin(), chi.coeffs().end()) ==
          std::vector<std::int64_t>{1, 0, -1, 0, 1, 0, -1, 0});
    CHECK_THROWS(chi.at(0));
    CHECK_THROWS(chi.at(9));
    std::ostringstream out;
    write_series_csv(out, chi);
    CHECK(out.str().rfind("n,a_n\n1,1\n2,0\n3,-1\n", 0) == 0);
}
