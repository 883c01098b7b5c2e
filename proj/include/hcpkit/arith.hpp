#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hcpkit {

/* Prime factorisation of |n|, possibly partial.  Whatever could not be split
 * within the trial-division bound and the Pollard-rho budget is left in
 * `cofactor`; product(p^e) * cofactor == |n| always holds. */
struct factorization
{
    std::vector<std::pair<mpz_class, unsigned>> factors; // sorted by prime
    mpz_class cofactor = 1;

    bool complete() const { return cofactor == 1; }
    mpz_class value() const;
};

/* Kronecker symbol (D/n) for n >= 1. */
int kronecker(mpz_class const & D, mpz_class const & n);
int kronecker(std::int64_t D, std::int64_t n);

/* Deterministic below 2^64 (fixed Miller-Rabin bases), 64 random-free
 * rounds with fixed pseudo-random bases above. */
bool is_prime(mpz_class const & n);
bool is_prime(std::uint64_t n);

factorization factorize(mpz_class const & n, std::uint64_t bound);

bool is_discriminant(std::int64_t D);
bool is_fundamental_discriminant(std::int64_t D);
bool is_squarefree(std::uint64_t n);

/* Least k >= 1 with a^k = 1 mod p.  Throws invalid_argument when p | a. */
std::uint64_t multiplicative_order(mpz_class const & a, std::uint64_t p);

/* True iff every prime dividing x divides y, decided by gcd stripping
 * without factoring.  supp(0) is the set of all primes, so x == 0 gives
 * true only for y == 0; x == +-1 always gives true. */
bool support_subset_int(mpz_class const & x, mpz_class const & y);

std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
int moebius(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/* Non-negative residue of x modulo m. */
std::uint64_t mod_ui(mpz_class const & x, std::uint64_t m);

} // namespace hcpkit
