#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "hcpkit/int_polynomial.hpp"

namespace hcpkit {

class class_polynomials;

/* Element (u + v sqrt5)/2 of Z[(1 + sqrt5)/2], u = v mod 2. */
class quad_int
{
    mpz_class u_, v_;

  public:
    quad_int() = default;
    /* throws invalid_argument on a parity mismatch */
    quad_int(mpz_class u, mpz_class v);

    static quad_int from_int(mpz_class const & n) { return quad_int(2 * n, 0); }
    static quad_int phi() { return quad_int(1, 1); }

    mpz_class const & u() const { return u_; }
    mpz_class const & v() const { return v_; }

    bool is_zero() const { return u_ == 0 && v_ == 0; }
    bool is_unit() const;
    quad_int conjugate() const { return quad_int(u_, -v_); }
    /* (u^2 - 5 v^2) / 4 */
    mpz_class norm() const;

    friend quad_int operator+(quad_int const & a, quad_int const & b);
    friend quad_int operator-(quad_int const & a, quad_int const & b);
    friend quad_int operator*(quad_int const & a, quad_int const & b);
    quad_int operator-() const { return quad_int(-u_, -v_); }
    friend bool operator==(quad_int const & a, quad_int const & b) = default;

    std::string to_string() const;
};

/* Nearest lattice point to a / b (b != 0), rounding coordinatewise. */
quad_int round_div(quad_int const & a, quad_int const & b);

/* a / b when b divides a; throws invalid_argument otherwise. */
quad_int exact_div(quad_int const & a, quad_int const & b);

bool divides(quad_int const & b, quad_int const & a);

/* A gcd up to units by norm-Euclidean division; throws invalid_argument
 * when both arguments are zero.  `steps`, when given, receives the number
 * of division steps. */
quad_int euclidean_gcd(quad_int x, quad_int y, unsigned long * steps = nullptr);

/* Every prime dividing x divides y (gcd stripping).  supp(0) is every prime:
 * x == 0 gives y == 0; a unit x gives true. */
bool support_subset(quad_int const & x, quad_int const & y);

quad_int evaluate(int_polynomial const & f, quad_int const & x);

/* The two roots of H_{-15}: (-191025 -+ 85995 sqrt5)/2. */
std::pair<quad_int, quad_int> discriminant_minus15_roots();

struct thm54_report
{
    std::int64_t D = 0;
    std::uint64_t h = 0;
    bool forward = false;  // p | H_D(j1) => p | H_D(j2)
    bool backward = false;
    bool required = false; // D = 1 mod 8: both directions must hold
};

thm54_report verify_thm54(std::int64_t D, class_polynomials & source);
thm54_report verify_thm54(std::int64_t D, std::pair<quad_int, quad_int> const & j_pair,
                          class_polynomials & source);

} // namespace hcpkit
