#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "hcpkit/int_polynomial.hpp"

namespace hcpkit {

/* Psi_n = (T^n - 1) / prod_{d | n, d < n} Psi_d, memoised. */
int_polynomial const & cyclotomic_polynomial(std::uint64_t n);

/* p-adic valuation of Psi_n(a) for a prime p (infinite for Psi_n(a) = 0,
 * reported as UINT64_MAX).  Avoids expanding Psi_n when |a| >= 2 by summing
 * mu(n/d) v_p(a^d - 1). */
std::uint64_t cyclotomic_value_valuation(std::uint64_t n, mpz_class const & a, std::uint64_t p);

/* (ord_p(a) == k) <=> (p | Psi_{k p^l}(a) for some l <= l_max)
 *                 <=> (p | Psi_{k p^l}(a) for all l <= l_max) */
bool lemma44_check(mpz_class const & a, std::uint64_t p, std::uint64_t k, std::uint64_t l_max);

/* Psi_{k p^l} = Psi_k^{(p-1) p^{l-1}} over F_p, p prime not dividing k, l >= 1. */
bool cyclotomic_congruence_check(std::uint64_t k, std::uint64_t p, std::uint64_t l);

} // namespace hcpkit
