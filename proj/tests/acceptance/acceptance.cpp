// Acceptance gate.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.  Every tolerance is a named constant below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfdensity/arith.hpp"
#include "qfdensity/class_group.hpp"
#include "qfdensity/genus_series.hpp"
#include "qfdensity/harness.hpp"
#include "qfdensity/lfunctions.hpp"
#include "qfdensity/qf_sieve.hpp"

using namespace qfd;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kSieveSecondsPerZ = 1.0;
constexpr double kFactorizationSeconds = 30.0;
constexpr double kClassNumberTail = 1e-6;
constexpr double kProp13MaxExponent = 0.85;
constexpr double kProp13Seconds = 600.0;
constexpr double kHeathBrownExponent = 2.1;
constexpr std::uint64_t kOrthogonalityRange = 500;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return harness::format_double(v); }

struct Outcome {
    bool pass;
    std::string detail;
};

// --- 1 ---------------------------------------------------------------------

std::string serialize_tables(unsigned shards) {
    std::ostringstream out;
    for (std::uint64_t z : {5u, 13u, 17u, 21u, 29u, 33u}) write_rep_table(out, rep_counts(10000, DiagonalForm(z), {shards}));
    return out.str();
}

Outcome sieve_oracle() {
    double worst = 0;
    for (std::uint64_t z : {5u, 13u, 17u, 21u, 29u, 33u}) {
        const auto t0 = Clock::now();
        const auto table = rep_counts(10000, DiagonalForm(z));
        worst = std::max(worst, seconds_since(t0));
        const auto ref = oracle::naive_r(z, 10000);
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            if (table[n] != ref[n]) {
                return {false, "z=" + std::to_string(z) + " differs at n=" + std::to_string(n)};
            }
        }
    }
    return {worst < kSieveSecondsPerZ, "6 tables exact, slowest " + fmt(worst) + " s (limit " + fmt(kSieveSecondsPerZ) + " s)"};
}

// --- 2 ---------------------------------------------------------------------

Outcome genus_reconstruction() {
    std::size_t prime_powers = 0;
    for (std::uint64_t z : {5u, 13u, 21u, 33u}) {
        const DiagonalForm form(z);
        if (!class_group_info(form).one_class_per_genus()) return {false, "z=" + std::to_string(z) + " not one class per genus"};
        const auto r = reconstruct_r(form, 10000);
        const auto table = rep_counts(10000, form);
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            if (r[n] != table[n]) return {false, "z=" + std::to_string(z) + " reconstruction differs at n=" + std::to_string(n)};
        }
        for (const auto& pair : genus_pairs(form)) {
            const auto conv = genus_coeffs(form, pair, 10000);
            for (auto p : primes_up_to(10000)) {
                std::uint64_t q = p;
                for (unsigned k = 1; q <= 10000; ++k, q *= p) {
                    ++prime_powers;
                    if (prime_power_coeff(form, pair, p, k) != conv[q]) {
                        return {false, "z=" + std::to_string(z) + " case formula differs at " + std::to_string(p) + "^" + std::to_string(k)};
                    }
                }
            }
        }
    }
    return {true, "4 forms exact to 10^4; " + std::to_string(prime_powers) + " prime-power coefficients agree"};
}

// --- 3 ---------------------------------------------------------------------

Outcome mobius_identity() {
    const std::vector<CharacterQuadruple> quads = {
        {1, -20, -4, 5}, {1, 1, 1, 1}, {-4, 5, -4, 13}, {-3, 28, -7, 12}, {-8, 5, 12, -11}, {1, -84, -4, 21}};
    for (const auto& q : quads) {
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            const auto s = mobius_identity_sides(q, n);
            if (s.lhs != s.rhs) return {false, "mismatch at n=" + std::to_string(n)};
        }
    }
    return {true, std::to_string(quads.size()) + " quadruples exact for n <= 10^4"};
}

// --- 4 ---------------------------------------------------------------------

Outcome five_fold() {
    const auto t0 = Clock::now();
    std::size_t checks = 0;
    for (auto [a, b] : {std::pair{5u, 13u}, std::pair{5u, 21u}, std::pair{13u, 17u}}) {
        const DiagonalForm f1(a), f2(b);
        for (const auto& p1 : genus_pairs(f1)) {
            for (const auto& p2 : genus_pairs(f2)) {
                ++checks;
                const auto res = factorization_check(f1, f2, p1, p2, 5000);
                if (!res.ok) {
                    return {false, "(" + std::to_string(a) + "," + std::to_string(b) + ") mismatch at n=" +
                                       std::to_string(res.first_mismatch.value_or(0))};
                }
            }
        }
    }
    const double t = seconds_since(t0);
    return {t < kFactorizationSeconds,
            std::to_string(checks) + " pair combinations exact to 5000 in " + fmt(t) + " s (limit " + fmt(kFactorizationSeconds) + " s)"};
}

// --- 5 ---------------------------------------------------------------------

Outcome quotient() {
    const std::size_t n_max = 10000;
    const DiagonalForm z5(5), z13(13);
    const GenusPair p1{Discriminant(-4), Discriminant(5)}, p2{Discriminant(-4), Discriminant(13)};
    const auto a = pointwise_product(genus_coeffs(z5, p1, n_max), genus_coeffs(z13, p2, n_max));

    const auto trivial = quotient_series(a, a);
    const auto back_trivial = dirichlet_convolve(a, trivial);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (trivial[n] != (n == 1 ? 1 : 0) || back_trivial[n] != a[n]) return {false, "A = B case fails at n=" + std::to_string(n)};
    }

    const auto b = four_fold_series(p1, p2, n_max);
    const auto g = quotient_series(a, b);
    const auto back = dirichlet_convolve(b, g);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        if (back[n] != a[n]) return {false, "B G != A at n=" + std::to_string(n)};
        if (squarefree_part(n).core != 1 && g[n] != 0) return {false, "G not supported on squares at n=" + std::to_string(n)};
    }
    std::size_t unramified = 0;
    for (auto p : primes_up_to(100)) {
        if (p == 2 || p == 5 || p == 13) continue;
        ++unramified;
        if (g[p * p] != -kronecker(z5.z_star() * z13.z_star(), static_cast<std::int64_t>(p))) {
            return {false, "g(p^2) wrong at p=" + std::to_string(p)};
        }
    }
    return {true, "A = B G exact to 10^4 in both cases; g(p^2) = -chi(p) at " + std::to_string(unramified) + " unramified primes"};
}

// --- 6 ---------------------------------------------------------------------

Outcome class_number_formula() {
    std::size_t count = 0;
    double worst_residual = 0;
    for (std::uint64_t z = 1; z <= 200; ++z) {
        if (!in_w(z)) continue;
        ++count;
        const auto c = class_number_formula_check(DiagonalForm(z), kClassNumberTail);
        if (c.l1.tail_bound > kClassNumberTail) return {false, "tail not certified for z=" + std::to_string(z)};
        if (std::llround(c.estimate) != static_cast<long long>(c.class_number)) {
            return {false, "rounding fails for z=" + std::to_string(z)};
        }
        worst_residual = std::max(worst_residual, c.residual);
    }
    return {true, std::to_string(count) + " z recovered exactly, max residual " + fmt(worst_residual)};
}

// --- 7 ---------------------------------------------------------------------

std::string serialize_prop13(unsigned shards) {
    std::ostringstream out;
    harness::write_prop13(out, harness::verify_prop13(DiagonalForm(5), DiagonalForm(13), {100000, 1000000, 10000000}, 1e-10, {shards}),
                          harness::OutputFormat::json);
    return out.str();
}

Outcome prop13() {
    const auto t0 = Clock::now();
    const auto ladder = harness::verify_prop13(DiagonalForm(5), DiagonalForm(13), {100000, 1000000, 10000000}, 1e-10, {1});
    const double t = seconds_since(t0);
    bool decreasing = true;
    std::string rel;
    for (std::size_t i = 0; i < ladder.rows.size(); ++i) {
        rel += (i ? ", " : "") + fmt(ladder.rows[i].rel_err);
        if (i && !(ladder.rows[i].rel_err < ladder.rows[i - 1].rel_err)) decreasing = false;
    }
    const bool ok = decreasing && ladder.fitted_exponent <= kProp13MaxExponent && t < kProp13Seconds;
    return {ok, "rel_err " + rel + (decreasing ? " (strictly decreasing)" : " (NOT decreasing)") + "; exponent " +
                    fmt(ladder.fitted_exponent) + " (limit " + fmt(kProp13MaxExponent) + "); " + fmt(t) + " s"};
}

// --- 8 ---------------------------------------------------------------------

std::string serialize_density(unsigned shards) {
    std::ostringstream out;
    harness::write_density(out, harness::density_run(1000000, harness::CutoffChoice::paper(), {}, {shards}),
                           harness::OutputFormat::json);
    return out.str();
}

Outcome density() {
    const auto rep = harness::density_run(1000000, harness::CutoffChoice::paper());
    const bool ok = rep.cauchy_schwarz_holds && static_cast<double>(rep.count) >= rep.cs_bound;
    return {ok, "Z=" + fmt(rep.cutoff) + ", N=" + std::to_string(rep.count) + " >= (sum R)^2/sum R^2=" + fmt(rep.cs_bound) +
                    ", N/X=" + fmt(rep.ratio)};
}

// --- 9 ---------------------------------------------------------------------

Outcome diagnostics() {
    for (std::uint64_t n = 3; n <= kOrthogonalityRange; n += 2) {
        if (!is_squarefree(n)) continue;
        if (harness::orthogonality_sum(n) != 0) return {false, "orthogonality sum nonzero at n=" + std::to_string(n)};
    }
    std::vector<double> ratios;
    for (std::uint64_t z : {100u, 1000u}) {
        const auto n = static_cast<std::uint64_t>(std::llround(static_cast<double>(z) * std::log(static_cast<double>(z))));
        const auto rep = harness::char_sum_diagnostics(z, n);
        if (rep.two_way_mismatches || rep.orthogonality_failures) return {false, "T(n) two-way mismatch"};
        ratios.push_back(rep.heath_brown_ratio(kHeathBrownExponent));
    }
    // C is fitted on Z = 100 and must still bound Z = 1000.
    const double c = ratios[0];
    return {ratios[1] <= c, "orthogonality exact for n <= 500; C fitted at Z=100: " + fmt(c) + ", Z=1000 ratio " + fmt(ratios[1])};
}

// --- 10 --------------------------------------------------------------------

Outcome determinism() {
    const std::vector<std::function<std::string(unsigned)>> producers = {serialize_tables, serialize_prop13, serialize_density};
    const char* names[] = {"rep tables", "prop13", "density"};
    std::size_t bytes = 0;
    for (std::size_t i = 0; i < producers.size(); ++i) {
        const std::string base = producers[i](1);
        bytes += base.size();
        for (unsigned shards : {2u, 4u, 8u}) {
            if (producers[i](shards) != base) return {false, std::string(names[i]) + " differs at " + std::to_string(shards) + " shards"};
        }
    }
    return {true, "rep tables, prop13 and density outputs byte-identical across 1/2/4/8 shards (" + std::to_string(bytes) + " bytes per shard count)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"sieve oracle equivalence", sieve_oracle},
        {"genus reconstruction", genus_reconstruction},
        {"Moebius 5-tuple identity", mobius_identity},
        {"five-fold factorization", five_fold},
        {"quotient recursion", quotient},
        {"class number formula", class_number_formula},
        {"sum r(n,5) r(n,13) main term", prop13},
        {"Cauchy-Schwarz density bound", density},
        {"character sum diagnostics", diagnostics},
        {"shard determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
