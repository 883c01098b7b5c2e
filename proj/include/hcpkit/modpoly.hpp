#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include <gmpxx.h>

namespace hcpkit {

/* Sparse bivariate integer polynomial, keyed by (deg_X, deg_Y). */
class bivar_int_polynomial
{
    std::map<std::pair<unsigned, unsigned>, mpz_class> c;

  public:
    using key = std::pair<unsigned, unsigned>;

    std::map<key, mpz_class> const & terms() const { return c; }
    mpz_class coeff(unsigned i, unsigned j) const;
    void set(unsigned i, unsigned j, mpz_class v);

    unsigned degree_x() const;
    unsigned degree_y() const;
    bool is_symmetric() const;
    mpz_class operator()(mpz_class const & x, mpz_class const & y) const;

    /* coefficients reduced into [0, p), zero terms dropped */
    std::map<key, std::uint64_t> reduce_mod(std::uint64_t p) const;

    friend bool operator==(bivar_int_polynomial const & a, bivar_int_polynomial const & b)
    {
        return a.c == b.c;
    }
};

struct modpoly_attempt
{
    bivar_int_polynomial poly;
    bool ok = false;
    double max_residual = 0;
};

/* Phi_N by evaluation at tau_s = i y_s, y_s = 1.05, 1.10, ... (N + 3
 * samples), interpolation in Y = j(tau_s) over the first N + 2 and a check
 * against the last one. */
modpoly_attempt modular_polynomial_at(unsigned N, long prec_bits);

/* Phi_N for N in {1, 2, 3, 5, 7}; retries with doubled precision and throws
 * precision_exhausted if rounding never becomes clean.  Memoised. */
bivar_int_polynomial const & modular_polynomial(unsigned N);

/* Phi_p = (X - Y^p)(X^p - Y) mod p, for p in {2, 3, 5, 7}. */
bool kronecker_congruence_check(unsigned p);

} // namespace hcpkit
