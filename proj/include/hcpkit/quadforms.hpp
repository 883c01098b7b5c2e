#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace hcpkit {

/* Positive definite binary quadratic form a x^2 + b xy + c y^2. */
struct quad_form
{
    std::int64_t a = 1, b = 0, c = 1;

    std::int64_t discriminant() const { return b * b - 4 * a * c; }
    /* |b| <= a <= c, and b >= 0 whenever |b| == a or a == c */
    bool is_reduced() const;
    bool is_primitive() const;

    auto operator<=>(quad_form const &) const = default;
};

quad_form reduce(quad_form f);

/* Primitive reduced forms of discriminant D sorted by (a, b); one per class. */
std::vector<quad_form> reduced_forms(std::int64_t D);

std::uint64_t class_number(std::int64_t D);

/* sum of 1/a over the reduced forms */
mpq_class inv_a_sum(std::int64_t D);

/* |O*| of the order of discriminant D */
unsigned unit_group_order(std::int64_t D);

} // namespace hcpkit
