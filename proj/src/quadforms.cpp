#include "hcpkit/quadforms.hpp"

#include <cmath>
#include <numeric>

#include "hcpkit/arith.hpp"
#include "hcpkit/errors.hpp"

namespace hcpkit {

bool quad_form::is_reduced() const
{
    std::int64_t ab = b < 0 ? -b : b;
    if (!(ab <= a && a <= c))
        return false;
    if ((ab == a || a == c) && b < 0)
        return false;
    return true;
}

bool quad_form::is_primitive() const
{
    return std::gcd(std::gcd(a, b), c) == 1;
}

namespace {

void require_discriminant(std::int64_t D, char const * who)
{
    if (!is_discriminant(D))
        throw invalid_argument(std::string(who) + ": not a negative discriminant");
}

std::int64_t isqrt(std::int64_t n)
{
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace

quad_form reduce(quad_form f)
{
    if (f.discriminant() >= 0)
        throw invalid_argument("reduce: discriminant must be negative");
    if (f.a <= 0)
        throw invalid_argument("reduce: form must be positive definite");
    for (;;) {
        /* normalise b into (-a, a] */
        std::int64_t two_a = 2 * f.a;
        std::int64_t k = (f.a - f.b) / two_a;
        if ((f.a - f.b) % two_a < 0)
            --k;
        /* b' = b + 2ak lies in (-a, a] */
        if (k != 0) {
            f.c = f.a * k * k + f.b * k + f.c;
            f.b += two_a * k;
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

std::vector<quad_form> reduced_forms(std::int64_t D)
{
    require_discriminant(D, "reduced_forms");
    std::vector<quad_form> out;
    std::int64_t const amax = isqrt(-D / 3);
    for (std::int64_t a = 1; a <= amax; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0)
                continue;
            std::int64_t num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            quad_form f{a, b, num / (4 * a)};
            if (f.c < a || !f.is_reduced() || !f.is_primitive())
                continue;
            out.push_back(f);
        }
    }
    return out;
}

std::uint64_t class_number(std::int64_t D)
{
    return reduced_forms(D).size();
}

mpq_class inv_a_sum(std::int64_t D)
{
    mpq_class s = 0;
    for (auto const & f : reduced_forms(D))
        s += mpq_class(1, static_cast<unsigned long>(f.a));
    s.canonicalize();
    return s;
}

unsigned unit_group_order(std::int64_t D)
{
    require_discriminant(D, "unit_group_order");
    if (D == -3)
        return 6;
    if (D == -4)
        return 4;
    return 2;
}

} // namespace hcpkit
