#pragma once

// Reduced binary quadratic forms of negative discriminant, class numbers,
// and the genus characters of Q(sqrt(-4z)) as factorizations z* = f g.
// Forms are only counted; there is no composition.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qfdensity/arith.hpp"

namespace qfd {

/// a x^2 + b xy + c y^2 with |b| <= a <= c, b >= 0 when |b| = a or a = c.
struct ReducedForm {
    std::int64_t a;
    std::int64_t b;
    std::int64_t c;

    std::int64_t discriminant() const noexcept { return b * b - 4 * a * c; }
    friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

/// Primitive reduced forms of discriminant D < 0, sorted by (a, b).
std::vector<ReducedForm> reduced_forms(std::int64_t disc);

inline std::size_t class_number(std::int64_t disc) { return reduced_forms(disc).size(); }

/// Unordered factorization z* = f g into fundamental discriminants; stored
/// with |f| < |g|.  The pair (1, z*) is the principal genus character.
struct GenusPair {
    Discriminant f;
    Discriminant g;

    bool is_principal() const noexcept { return f.value() == 1 || g.value() == 1; }
    friend bool operator==(const GenusPair&, const GenusPair&) = default;
};

/// All genus characters of discriminant z*, sorted by |f|.
std::vector<GenusPair> genus_pairs(const DiagonalForm& form);

/// True iff {f, g} is an unordered factorization of z* into fundamental
/// discriminants.
bool is_genus_pair(const DiagonalForm& form, std::int64_t f, std::int64_t g);

struct ClassGroupInfo {
    DiagonalForm form;
    std::vector<ReducedForm> forms;
    std::vector<GenusPair> genus;

    std::size_t class_number() const noexcept { return forms.size(); }
    /// Every class group character is a genus character.
    bool one_class_per_genus() const noexcept { return forms.size() == genus.size(); }
};

ClassGroupInfo class_group_info(const DiagonalForm& form);

/// CSV with header "a,b,c".
void write_forms_csv(std::ostream& out, const std::vector<ReducedForm>& forms);

}  // namespace qfd
