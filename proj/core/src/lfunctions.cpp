#include "qfdensity/lfunctions.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qfdensity/class_group.hpp"

namespace qfd {

__extension__ typedef __int128 i128;

ProductCharacter::ProductCharacter(std::vector<std::int64_t> factors)
    : factors_(std::move(factors)), modulus_(1) {
    if (factors_.empty()) throw std::invalid_argument("ProductCharacter needs at least one factor");
    for (std::int64_t d : factors_) {
        const Discriminant disc(d);
        if (modulus_ > UINT32_MAX / std::max<std::uint64_t>(1, disc.magnitude())) {
            throw std::invalid_argument("ProductCharacter: modulus too large");
        }
        modulus_ *= disc.magnitude();
    }
}

int ProductCharacter::operator()(std::uint64_t n) const {
    int v = 1;
    for (std::int64_t d : factors_) {
        v *= kronecker(d, static_cast<std::int64_t>(n % modulus_));
        if (v == 0) break;
    }
    return v;
}

std::vector<std::int8_t> ProductCharacter::period_table() const {
    std::vector<std::int8_t> table(modulus_, 1);
    for (std::int64_t d : factors_) {
        const Discriminant disc(d);
        const std::uint64_t q = disc.magnitude();
        std::vector<std::int8_t> own(q);
        for (std::uint64_t r = 0; r < q; ++r) {
            own[r] = static_cast<std::int8_t>(kronecker(d, static_cast<std::int64_t>(r)));
        }
        for (std::uint64_t r = 0; r < modulus_; ++r) table[r] = static_cast<std::int8_t>(table[r] * own[r % q]);
    }
    return table;
}

bool ProductCharacter::is_principal() const {
    const auto table = period_table();
    std::int64_t sum = 0;
    for (auto v : table) sum += v;
    return sum != 0;
}

std::string to_string(LMethod method) {
    return method == LMethod::partial_summation ? "partial-summation" : "direct-with-tail";
}

namespace {

// Exact per-period constants for the tail certificates.
struct PeriodStats {
    std::vector<std::int8_t> table;
    std::vector<std::int64_t> partial;  // S(k), k = 0..q-1
    std::int64_t max_partial = 0;       // max |S|
    long double mean_partial = 0;       // sbar
    long double max_cumulative = 0;     // max |C|
};

PeriodStats period_stats(const ProductCharacter& chi) {
    PeriodStats st;
    st.table = chi.period_table();
    const std::uint64_t q = chi.modulus();
    st.partial.assign(q, 0);
    std::int64_t s = 0;
    i128 total = 0;
    for (std::uint64_t k = 1; k <= q; ++k) {
        s += st.table[k % q];
        st.partial[k % q] = s;
        st.max_partial = std::max<std::int64_t>(st.max_partial, s < 0 ? -s : s);
        total += s;
    }
    if (s != 0) {
        throw std::invalid_argument("L-value of a principal character requested");
    }
    // C(k) * q = sum_{m<=k} (q S(m) - total), kept exact.
    i128 c = 0, c_max = 0;
    for (std::uint64_t k = 1; k <= q; ++k) {
        c += static_cast<i128>(q) * st.partial[k % q] - total;
        const i128 mag = c < 0 ? -c : c;
        if (mag > c_max) c_max = mag;
    }
    st.mean_partial = static_cast<long double>(total) / static_cast<long double>(q);
    st.max_cumulative = static_cast<long double>(c_max) / static_cast<long double>(q);
    return st;
}

// Neumaier-compensated sum; its rounding error is at most
// (2u + n u^2) sum |x_i| with u the long double unit roundoff.
struct CompensatedSum {
    long double sum = 0;
    long double carry = 0;

    void add(long double x) {
        const long double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            carry += (sum - t) + x;
        } else {
            carry += (x - t) + sum;
        }
        sum = t;
    }
    long double value() const { return sum + carry; }
};

LValue evaluate(const PeriodStats& st, std::uint64_t q, int s, std::uint64_t terms) {
    if (terms == 0) throw std::invalid_argument("L-value needs at least one term");
    LValue out;
    out.terms_used = terms;
    CompensatedSum sum;
    long double magnitude = 0;
    const long double n1 = static_cast<long double>(terms) + 1;
    long double tail = 0;
    if (s == 2) {
        for (std::uint64_t n = 1; n <= terms; ++n) {
            const int v = st.table[n % q];
            if (v != 0) sum.add(v / (static_cast<long double>(n) * n));
        }
        magnitude = 2;
        tail = 2.0L * st.max_partial / (n1 * n1);
        out.method = LMethod::direct_with_tail;
    } else {
        for (std::uint64_t n = 1; n <= terms; ++n) {
            const int v = st.table[n % q];
            if (v != 0) sum.add(v / static_cast<long double>(n));
        }
        sum.add((st.mean_partial - st.partial[terms % q]) / n1);
        magnitude = std::log(n1) + 2;
        tail = 2.0L * st.max_cumulative / (n1 * (n1 + 1));
        out.method = LMethod::partial_summation;
    }
    const long double u = LDBL_EPSILON / 2;
    const long double total = sum.value();
    out.value = static_cast<double>(total);
    // summation error, the final rounding to double, and the tail
    const long double rounding = (2 * u + n1 * u * u) * magnitude * 2 +
                                 std::fabs(total) * std::numeric_limits<double>::epsilon();
    out.tail_bound = static_cast<double>(tail + rounding);
    return out;
}

void require_point(int s) {
    if (s != 1 && s != 2) throw std::invalid_argument("L-values are only evaluated at s = 1 or s = 2");
}

}  // namespace

LValue l_value_terms(const ProductCharacter& chi, int s, std::uint64_t terms) {
    require_point(s);
    return evaluate(period_stats(chi), chi.modulus(), s, terms);
}

LValue l_value(const ProductCharacter& chi, int s, double eps) {
    require_point(s);
    if (!(eps > 0)) throw std::invalid_argument("l_value: eps must be positive");
    const PeriodStats st = period_stats(chi);
    const long double constant = s == 2 ? 2.0L * st.max_partial : 2.0L * st.max_cumulative;
    auto terms = static_cast<std::uint64_t>(std::ceil(std::sqrt(constant / eps)));
    terms = std::max<std::uint64_t>(terms, 1);
    LValue out = evaluate(st, chi.modulus(), s, terms);
    // The rounding allowance can push a borderline bound just over eps.
    for (int attempt = 0; out.tail_bound > eps; ++attempt) {
        if (attempt == 8) {
            throw std::invalid_argument("l_value: eps is below the attainable precision");
        }
        terms += terms / 4 + 1;
        out = evaluate(st, chi.modulus(), s, terms);
    }
    return out;
}

double truncated_l1(const ProductCharacter& chi, std::uint64_t cutoff) {
    if (cutoff == 0) throw std::invalid_argument("truncated_l1: Y must be >= 1");
    const auto table = chi.period_table();
    const std::uint64_t q = chi.modulus();
    long double sum = 0;
    for (std::uint64_t n = 1; n <= cutoff; ++n) {
        const int v = table[n % q];
        if (v != 0) sum += v / static_cast<long double>(n);
    }
    return static_cast<double>(sum);
}

ClassNumberCheck class_number_formula_check(const DiagonalForm& form, double eps) {
    ClassNumberCheck out;
    out.z = form.z();
    out.class_number = class_number(form.z_star());
    out.l1 = l_value(ProductCharacter({form.z_star()}), 1, eps);
    out.estimate = std::sqrt(4.0 * static_cast<double>(form.z())) / std::numbers::pi * out.l1.value;
    out.residual = std::abs(static_cast<double>(out.class_number) - out.estimate);
    return out;
}

MainTermReport main_term(const DiagonalForm& first, const DiagonalForm& second, double bound,
                         double eps) {
    if (first == second) throw std::invalid_argument("main_term needs z1 != z2");
    MainTermReport out;
    out.z1 = first.z();
    out.z2 = second.z();
    out.bound = bound;

    const ProductCharacter psi({first.z_star(), second.z_star()});
    out.l1 = l_value(psi, 1, eps);
    out.l2 = l_value(psi, 2, eps);

    const std::uint64_t common = std::gcd(static_cast<std::uint64_t>(-first.z_star()),
                                          static_cast<std::uint64_t>(-second.z_star()));
    long double d_sum = 0;
    for (const Discriminant& d : fundamental_divisors(common)) {
        EulerTerm term;
        term.d = d.value();
        const std::int64_t top1 = first.z_star() / d.value();
        const std::int64_t top2 = second.z_star() / d.value();
        for (const auto& pp : factorize(d.magnitude())) {
            const auto p = static_cast<std::int64_t>(pp.p);
            const int psi_p = kronecker(top1, p) * kronecker(top2, p);
            term.numerator *= p - 1;
            term.denominator *= p - psi_p;
            const std::int64_t g = std::gcd(term.numerator, term.denominator);
            term.numerator /= g;
            term.denominator /= g;
        }
        term.value = static_cast<double>(term.numerator) / static_cast<double>(term.denominator);
        d_sum += static_cast<long double>(term.numerator) / term.denominator;
        out.d_terms.push_back(term);
    }
    out.d_sum = static_cast<double>(d_sum);

    const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
    const long double root = std::sqrt(16.0L * out.z1 * out.z2);
    const long double ratio = static_cast<long double>(out.l1.value) / out.l2.value;
    const long double value = pi2 * bound / root * ratio * d_sum;
    out.value = static_cast<double>(value);
    const long double rel = out.l1.tail_bound / std::abs(out.l1.value) +
                            out.l2.tail_bound / (std::abs(out.l2.value) - out.l2.tail_bound);
    out.value_error_bound = static_cast<double>(std::abs(value) * rel);
    return out;
}

namespace {

nlohmann::json l_json(const LValue& l) {
    return {{"value", l.value},
            {"tail_bound", l.tail_bound},
            {"terms_used", l.terms_used},
            {"method", to_string(l.method)}};
}

}  // namespace

std::string to_json(const MainTermReport& report) {
    nlohmann::json j;
    j["z1"] = report.z1;
    j["z2"] = report.z2;
    j["X"] = report.bound;
    j["l1"] = l_json(report.l1);
    j["l2"] = l_json(report.l2);
    j["d_terms"] = nlohmann::json::array();
    for (const auto& t : report.d_terms) {
        j["d_terms"].push_back({{"d", t.d},
                                {"numerator", t.numerator},
                                {"denominator", t.denominator},
                                {"euler_factor", t.value}});
    }
    j["d_sum"] = report.d_sum;
    j["value"] = report.value;
    j["value_error_bound"] = report.value_error_bound;
    return j.dump();
}

}  // namespace qfd
