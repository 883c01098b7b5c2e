#include "hcpkit/ffexperiments.hpp"

#include <limits>
#include <string>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/quadforms.hpp"

namespace hcpkit {

pth_power_split extract_pth_power(fq_poly const & A)
{
    if (A.degree() < 1)
        throw precondition_failed("extract_pth_power: A must be nonconstant");
    auto const & F = A.F();
    std::uint64_t const p = F.characteristic();
    pth_power_split out{A, 0};
    for (;;) {
        auto const & c = out.base.coeffs();
        bool pth = true;
        for (std::size_t i = 0; i < c.size() && pth; ++i)
            if (c[i] != 0 && i % p != 0)
                pth = false;
        if (!pth)
            return out;
        /* coefficient-wise p-th root: a^{1/p} = a^{q/p} */
        std::vector<finite_field::elem> root(c.size() / p + 1, 0);
        for (std::size_t i = 0; i < c.size(); i += p)
            root[i / p] = F.pow(c[i], F.size() / p);
        out.base = fq_poly(A.field(), std::move(root));
        ++out.exponent;
    }
}

namespace {

bool is_supersingular_j(fq_element const & j)
{
    fq_poly ss = supersingular_polynomial(j.field->characteristic());
    return fq_poly(j.field, ss.coeffs())(j.value) == 0;
}

std::int64_t scan_for_discriminant(fq_element const & j, class_polynomials & source,
                                   std::int64_t d_scan_cap)
{
    for (std::int64_t absD = 3; absD <= d_scan_cap; ++absD) {
        std::int64_t const D = -absD;
        if (!is_discriminant(D) || class_number(D) > source.h_cap())
            continue;
        fq_poly H = fq_poly::from_int(j.field, source.get(D));
        if (H(j.value) == 0)
            return D;
    }
    return 0;
}

std::int64_t discriminant_for(fq_element const & j, class_polynomials & source,
                              std::int64_t d_scan_cap)
{
    if (!is_supersingular_j(j) && j.field->size() <= max_point_count_field) {
        try {
            return deuring_discriminants(j, source, d_scan_cap).front();
        } catch (not_found const &) {
        }
    }
    return scan_for_discriminant(j, source, d_scan_cap);
}

} // namespace

common_cm_point find_common_cm_point(fq_poly const & A, fq_poly const & B, std::uint64_t n_max,
                                     std::uint64_t m_max, class_polynomials & source,
                                     std::int64_t d_scan_cap)
{
    if (!same_field(A.F(), B.F()))
        throw field_mismatch("find_common_cm_point: A and B over different fields");
    if (A.degree() < 1 || B.degree() < 1)
        throw precondition_failed("find_common_cm_point: A and B must be nonconstant");
    auto const split = extract_pth_power(A);
    auto const & F = A.F();
    std::uint64_t const p = F.characteristic();
    std::uint64_t const m0 = F.degree();

    fq_poly Bpow = B;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        Bpow = pow(Bpow, p);
        fq_poly P = split.base - Bpow;
        if (P.is_zero() || P.degree() < 1)
            continue;
        for (std::uint64_t m = 1; m <= m_max; ++m) {
            if (m0 != 1 && m != m0)
                continue;
            for (auto const & [alpha, mult] : roots_in(P, m)) {
                fq_poly Am(alpha.field, A.coeffs());
                fq_element j{alpha.field, Am(alpha.value)};
                std::int64_t D = discriminant_for(j, source, d_scan_cap);
                if (D != 0)
                    return {alpha, j, n + split.exponent, n, m, D};
            }
        }
    }
    throw not_found("find_common_cm_point: nothing found for n <= " + std::to_string(n_max) +
                    ", m <= " + std::to_string(m_max) + ", |D| <= " + std::to_string(d_scan_cap));
}

std::vector<growth_row> gcd_degree_growth(fq_poly const & A, fq_poly const & B, std::int64_t D0,
                                          std::uint64_t k_max, class_polynomials & source)
{
    if (!same_field(A.F(), B.F()))
        throw field_mismatch("gcd_degree_growth: A and B over different fields");
    if (!is_discriminant(D0))
        throw invalid_argument("gcd_degree_growth: D0 is not a discriminant");
    auto const p = static_cast<std::int64_t>(A.F().characteristic());

    std::vector<growth_row> rows;
    std::int64_t D = D0;
    std::uint64_t h0 = 0, g0 = 0;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        if (k > 0) {
            if (D < std::numeric_limits<std::int64_t>::min() / (p * p))
                throw cap_exceeded("gcd_degree_growth: D0 p^{2k} overflows");
            D *= p * p;
        }
        growth_row r;
        r.k = k;
        r.D = D;
        r.h = class_number(D);
        if (r.h > source.h_cap())
            throw cap_exceeded("gcd_degree_growth: h(" + std::to_string(D) + ") exceeds cap");
        fq_poly H = fq_poly::from_int(A.field(), source.get(D));
        fq_poly g = poly_gcd(compose(H, A), compose(H, B));
        r.deg_gcd = static_cast<std::uint64_t>(std::max(g.degree(), 0));
        r.ratio = static_cast<double>(r.deg_gcd) / static_cast<double>(r.h);
        if (k == 0) {
            if (r.deg_gcd == 0)
                throw precondition_failed("gcd_degree_growth: gcd at D0 is constant");
            h0 = r.h;
            g0 = r.deg_gcd;
        }
        /* deg_gcd * h0 >= h * g0 */
        r.bound_holds = r.deg_gcd * h0 >= r.h * g0;
        rows.push_back(r);
    }
    return rows;
}

int_polynomial gcd_ffchar0(int_polynomial const & A, int_polynomial const & B, std::int64_t D1,
                           std::int64_t D2, class_polynomials & source)
{
    if (A.degree() < 1 || B.degree() < 1)
        throw precondition_failed("gcd_ffchar0: A and B must be nonconstant");
    return gcd(source.get(D1).compose(A), source.get(D2).compose(B));
}

} // namespace hcpkit
