#pragma once

#include <cstdint>
#include <vector>

#include "hcpkit/finitefield.hpp"
#include "hcpkit/int_polynomial.hpp"

namespace hcpkit {

class class_polynomials;

/* A = A0^{p^e} with A0 not a p-th power (A nonconstant). */
struct pth_power_split
{
    fq_poly base;
    std::uint64_t exponent = 0; // e
};

pth_power_split extract_pth_power(fq_poly const & A);

struct common_cm_point
{
    fq_element alpha;
    fq_element j;           // A(alpha) = B(alpha)^{p^k}
    std::uint64_t k = 0;
    std::uint64_t n = 0;    // search step at which alpha was found
    std::uint64_t m = 0;    // alpha lies in F_{p^m}
    std::int64_t D = 0;     // H_D mod p vanishes at j
};

/* Searches n = 1..n_max and m = 1..m_max for a root alpha of A0 - B^{p^n}
 * in F_{p^m} whose image A(alpha) is a root of some H_D mod p.  Supersingular
 * images and ordinary ones outside the point-counting range are matched by
 * scanning discriminants up to d_scan_cap.  Throws precondition_failed for
 * constant A or B and not_found when nothing is found. */
common_cm_point find_common_cm_point(fq_poly const & A, fq_poly const & B, std::uint64_t n_max,
                                     std::uint64_t m_max, class_polynomials & source,
                                     std::int64_t d_scan_cap = 2000);

struct growth_row
{
    std::uint64_t k = 0;
    std::int64_t D = 0;        // D0 p^{2k}
    std::uint64_t h = 0;       // h(D)
    std::uint64_t deg_gcd = 0; // deg gcd(H_D(A), H_D(B)) over F_q
    double ratio = 0;          // deg_gcd / h
    bool bound_holds = false;  // deg_gcd >= (h / h(D0)) deg_gcd(0)
};

/* Rows k = 0..k_max.  precondition_failed when the k = 0 gcd is constant;
 * cap_exceeded when some h(D0 p^{2k}) is above the source's cap. */
std::vector<growth_row> gcd_degree_growth(fq_poly const & A, fq_poly const & B, std::int64_t D0,
                                          std::uint64_t k_max, class_polynomials & source);

/* Primitive gcd over Q of H_{D1}(A(X)) and H_{D2}(B(X)). */
int_polynomial gcd_ffchar0(int_polynomial const & A, int_polynomial const & B, std::int64_t D1,
                           std::int64_t D2, class_polynomials & source);

} // namespace hcpkit
