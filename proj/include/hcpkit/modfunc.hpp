#pragma once

#include <cstdint>

#include "hcpkit/bigfloat.hpp"

namespace hcpkit {

/* The modular invariant j(tau) = E4(q)^3 / Delta(q), q = exp(2 pi i tau),
 * from the divisor-sum series of E4 and the product expansion of Delta.  Both
 * expansions run until |q|^n < 2^-(prec_bits + 32).
 *
 * No reduction into the fundamental domain is done: Im(tau) must exceed 0.4
 * and prec_bits must be at least 64, otherwise invalid_argument is thrown. */
big_complex j_tau(big_complex const & tau, long prec_bits);

/* Working precision (bits) for H_D: the dominant coefficient of H_D has
 * about pi sqrt|D| sum(1/a) nats, plus 64 guard bits and 8 bits per degree. */
long required_precision(std::int64_t D);

/* Map tau to the standard fundamental domain of SL2(Z) (j is invariant). */
big_complex reduce_to_fundamental_domain(big_complex tau);

} // namespace hcpkit
