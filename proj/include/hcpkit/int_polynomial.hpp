#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hcpkit {

/* Dense univariate polynomial over Z, constant term first.  The coefficient
 * vector never carries trailing zeros, so the zero polynomial is empty. */
class int_polynomial
{
    std::vector<mpz_class> c;

    void normalize();

  public:
    int_polynomial() = default;
    explicit int_polynomial(std::vector<mpz_class> coeffs);
    int_polynomial(std::initializer_list<long> coeffs);

    static int_polynomial monomial(unsigned degree, mpz_class coeff = 1);
    static int_polynomial constant(mpz_class value);

    std::vector<mpz_class> const & coeffs() const { return c; }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    mpz_class const & lead() const { return c.back(); }
    mpz_class coeff(std::size_t i) const { return i < c.size() ? c[i] : mpz_class(0); }

    mpz_class operator()(mpz_class const & x) const;
    /* den^deg * f(num/den), an integer */
    mpz_class eval_homogeneous(mpz_class const & num, mpz_class const & den) const;

    int_polynomial & operator+=(int_polynomial const & o);
    int_polynomial & operator-=(int_polynomial const & o);
    int_polynomial & operator*=(mpz_class const & s);

    friend int_polynomial operator+(int_polynomial a, int_polynomial const & b) { return a += b; }
    friend int_polynomial operator-(int_polynomial a, int_polynomial const & b) { return a -= b; }
    friend int_polynomial operator*(int_polynomial const & a, int_polynomial const & b);
    friend int_polynomial operator*(int_polynomial a, mpz_class const & s) { return a *= s; }
    friend bool operator==(int_polynomial const & a, int_polynomial const & b) { return a.c == b.c; }

    int_polynomial pow(unsigned e) const;
    int_polynomial derivative() const;
    /* f(g(X)) */
    int_polynomial compose(int_polynomial const & g) const;

    mpz_class content() const;
    /* sign normalised so the leading coefficient is positive */
    int_polynomial primitive_part() const;

    std::string to_string(char var = 'T') const;
};

/* Quotient and remainder by a monic divisor; exact over Z. */
void divrem_monic(int_polynomial const & f, int_polynomial const & g,
                  int_polynomial & q, int_polynomial & r);

/* Exact quotient; throws invalid_argument when g does not divide f over Z. */
int_polynomial div_exact(int_polynomial const & f, int_polynomial const & g);

/* Primitive gcd in Q[X] (positive leading coefficient); gcd(0, 0) = 0. */
int_polynomial gcd(int_polynomial const & f, int_polynomial const & g);

/* Primitive squarefree part f / gcd(f, f'). */
int_polynomial squarefree_part(int_polynomial const & f);

} // namespace hcpkit
