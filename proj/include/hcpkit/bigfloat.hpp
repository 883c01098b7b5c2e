#pragma once

#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace hcpkit {

/* RAII handle on an mpfr_t.  Binary operators produce a result at the
 * larger of the two operand precisions; all rounding is to nearest. */
class big_float
{
    mpfr_t v;

  public:
    explicit big_float(mpfr_prec_t prec = 64);
    big_float(mpfr_prec_t prec, double x);
    big_float(mpfr_prec_t prec, long x);
    big_float(mpfr_prec_t prec, mpz_class const & x);
    big_float(mpfr_prec_t prec, mpq_class const & x);
    big_float(mpfr_prec_t prec, std::string const & decimal);
    big_float(big_float const & o);
    big_float(big_float && o) noexcept;
    big_float & operator=(big_float const & o);
    big_float & operator=(big_float && o) noexcept;
    ~big_float();

    mpfr_ptr get() { return v; }
    mpfr_srcptr get() const { return v; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v); }

    static big_float pi(mpfr_prec_t prec);

    big_float & operator+=(big_float const & o);
    big_float & operator-=(big_float const & o);
    big_float & operator*=(big_float const & o);
    big_float & operator/=(big_float const & o);
    big_float & operator*=(long s);

    friend big_float operator+(big_float a, big_float const & b) { return a += b; }
    friend big_float operator-(big_float a, big_float const & b) { return a -= b; }
    friend big_float operator*(big_float a, big_float const & b) { return a *= b; }
    friend big_float operator/(big_float a, big_float const & b) { return a /= b; }
    friend big_float operator*(big_float a, long s) { return a *= s; }
    big_float operator-() const;

    friend bool operator<(big_float const & a, big_float const & b) { return mpfr_less_p(a.v, b.v); }
    friend bool operator>(big_float const & a, big_float const & b) { return mpfr_greater_p(a.v, b.v); }

    bool is_zero() const { return mpfr_zero_p(v) != 0; }
    int sign() const { return mpfr_sgn(v); }
    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }
    /* log2 |x|, -inf for zero */
    double log2_abs() const;
    std::string to_string(int digits = 30) const;

    /* nearest integer; |x - round(x)| is written to residual when given */
    mpz_class round(big_float * residual = nullptr) const;
};

big_float abs(big_float x);
big_float sqrt(big_float x);
big_float exp(big_float x);
big_float log(big_float x);
big_float cos(big_float x);
big_float sin(big_float x);

struct big_complex
{
    big_float re, im;

    explicit big_complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    big_complex(big_float r, big_float i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t precision() const { return re.precision(); }

    big_complex & operator+=(big_complex const & o);
    big_complex & operator-=(big_complex const & o);
    big_complex & operator*=(big_complex const & o);
    big_complex & operator/=(big_complex const & o);

    friend big_complex operator+(big_complex a, big_complex const & b) { return a += b; }
    friend big_complex operator-(big_complex a, big_complex const & b) { return a -= b; }
    friend big_complex operator*(big_complex a, big_complex const & b) { return a *= b; }
    friend big_complex operator/(big_complex a, big_complex const & b) { return a /= b; }
    big_complex operator-() const { return {-re, -im}; }

    big_complex conj() const { return {re, -im}; }
    /* |z|^2 */
    big_float norm() const;
    big_float abs() const;
};

/* out = a * b without temporaries beyond t1, t2 (both at out's precision). */
void mul_into(big_complex & out, big_complex const & a, big_complex const & b,
              big_float & t1, big_float & t2);

} // namespace hcpkit
