#include "qfdensity/class_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

namespace qfd {

std::vector<ReducedForm> reduced_forms(std::int64_t disc) {
    if (disc >= 0) throw std::invalid_argument("reduced_forms: discriminant must be negative");
    const std::int64_t r = ((disc % 4) + 4) % 4;
    if (r != 0 && r != 1) {
        throw std::invalid_argument("reduced_forms: discriminant must be 0 or 1 mod 4, got " +
                                    std::to_string(disc));
    }

    std::vector<ReducedForm> out;
    const auto a_max = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(-disc) / 3));
    for (std::int64_t a = 1; a <= a_max; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b - disc;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && a == c) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

bool is_genus_pair(const DiagonalForm& form, std::int64_t f, std::int64_t g) {
    return f != 0 && g != 0 && f * g == form.z_star() && is_fundamental(f) && is_fundamental(g);
}

std::vector<GenusPair> genus_pairs(const DiagonalForm& form) {
    const std::int64_t zs = form.z_star();
    std::vector<GenusPair> out;
    for (std::uint64_t dv : divisors(static_cast<std::uint64_t>(-zs))) {
        const auto m = static_cast<std::int64_t>(dv);
        for (std::int64_t f : {-m, m}) {
            const std::int64_t g = zs / f;
            if (std::llabs(f) >= std::llabs(g)) continue;
            if (is_genus_pair(form, f, g)) out.push_back({Discriminant(f), Discriminant(g)});
        }
    }
    return out;
}

ClassGroupInfo class_group_info(const DiagonalForm& form) {
    return ClassGroupInfo{form, reduced_forms(form.z_star()), genus_pairs(form)};
}

void write_forms_csv(std::ostream& out, const std::vector<ReducedForm>& forms) {
    out << "a,b,c\n";
    for (const auto& f : forms) out << f.a << ',' << f.b << ',' << f.c << '\n';
}

}  // namespace qfd
