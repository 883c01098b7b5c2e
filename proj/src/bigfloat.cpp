#include "hcpkit/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "hcpkit/errors.hpp"

namespace hcpkit {

big_float::big_float(mpfr_prec_t prec)
{
    mpfr_init2(v, prec);
    mpfr_set_zero(v, 1);
}

big_float::big_float(mpfr_prec_t prec, double x)
{
    mpfr_init2(v, prec);
    mpfr_set_d(v, x, MPFR_RNDN);
}

big_float::big_float(mpfr_prec_t prec, long x)
{
    mpfr_init2(v, prec);
    mpfr_set_si(v, x, MPFR_RNDN);
}

big_float::big_float(mpfr_prec_t prec, mpz_class const & x)
{
    mpfr_init2(v, prec);
    mpfr_set_z(v, x.get_mpz_t(), MPFR_RNDN);
}

big_float::big_float(mpfr_prec_t prec, mpq_class const & x)
{
    mpfr_init2(v, prec);
    mpfr_set_q(v, x.get_mpq_t(), MPFR_RNDN);
}

big_float::big_float(mpfr_prec_t prec, std::string const & decimal)
{
    mpfr_init2(v, prec);
    if (mpfr_set_str(v, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v);
        throw invalid_argument("big_float: cannot parse '" + decimal + "'");
    }
}

big_float::big_float(big_float const & o)
{
    mpfr_init2(v, o.precision());
    mpfr_set(v, o.v, MPFR_RNDN);
}

big_float::big_float(big_float && o) noexcept
{
    mpfr_init2(v, o.precision());
    mpfr_swap(v, o.v);
}

big_float & big_float::operator=(big_float const & o)
{
    if (this != &o) {
        mpfr_set_prec(v, o.precision());
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    return *this;
}

big_float & big_float::operator=(big_float && o) noexcept
{
    mpfr_swap(v, o.v);
    return *this;
}

big_float::~big_float()
{
    mpfr_clear(v);
}

big_float big_float::pi(mpfr_prec_t prec)
{
    big_float r(prec);
    mpfr_const_pi(r.v, MPFR_RNDN);
    return r;
}

namespace {

void widen(mpfr_ptr x, mpfr_prec_t p)
{
    if (mpfr_get_prec(x) < p)
        mpfr_prec_round(x, p, MPFR_RNDN);
}

} // namespace

big_float & big_float::operator+=(big_float const & o)
{
    widen(v, o.precision());
    mpfr_add(v, v, o.v, MPFR_RNDN);
    return *this;
}

big_float & big_float::operator-=(big_float const & o)
{
    widen(v, o.precision());
    mpfr_sub(v, v, o.v, MPFR_RNDN);
    return *this;
}

big_float & big_float::operator*=(big_float const & o)
{
    widen(v, o.precision());
    mpfr_mul(v, v, o.v, MPFR_RNDN);
    return *this;
}

big_float & big_float::operator/=(big_float const & o)
{
    widen(v, o.precision());
    mpfr_div(v, v, o.v, MPFR_RNDN);
    return *this;
}

big_float & big_float::operator*=(long s)
{
    mpfr_mul_si(v, v, s, MPFR_RNDN);
    return *this;
}

big_float big_float::operator-() const
{
    big_float r(*this);
    mpfr_neg(r.v, r.v, MPFR_RNDN);
    return r;
}

double big_float::log2_abs() const
{
    if (mpfr_zero_p(v))
        return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string big_float::to_string(int digits) const
{
    char * s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v);
    std::unique_ptr<char, decltype(&mpfr_free_str)> guard(s, &mpfr_free_str);
    return std::string(s);
}

mpz_class big_float::round(big_float * residual) const
{
    big_float r(precision());
    mpfr_rint(r.v, v, MPFR_RNDN);
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), r.v, MPFR_RNDN);
    if (residual) {
        big_float d(precision());
        mpfr_sub(d.v, v, r.v, MPFR_RNDN);
        mpfr_abs(d.v, d.v, MPFR_RNDN);
        *residual = std::move(d);
    }
    return z;
}

big_float abs(big_float x)
{
    mpfr_abs(x.get(), x.get(), MPFR_RNDN);
    return x;
}

big_float sqrt(big_float x)
{
    mpfr_sqrt(x.get(), x.get(), MPFR_RNDN);
    return x;
}

big_float exp(big_float x)
{
    mpfr_exp(x.get(), x.get(), MPFR_RNDN);
    return x;
}

big_float log(big_float x)
{
    mpfr_log(x.get(), x.get(), MPFR_RNDN);
    return x;
}

big_float cos(big_float x)
{
    mpfr_cos(x.get(), x.get(), MPFR_RNDN);
    return x;
}

big_float sin(big_float x)
{
    mpfr_sin(x.get(), x.get(), MPFR_RNDN);
    return x;
}

big_complex & big_complex::operator+=(big_complex const & o)
{
    re += o.re;
    im += o.im;
    return *this;
}

big_complex & big_complex::operator-=(big_complex const & o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

void mul_into(big_complex & out, big_complex const & a, big_complex const & b,
              big_float & t1, big_float & t2)
{
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_fma(out.im.get(), a.im.get(), b.re.get(), t2.get(), MPFR_RNDN);
    mpfr_swap(out.re.get(), t1.get());
}

big_complex & big_complex::operator*=(big_complex const & o)
{
    auto p = std::max(precision(), o.precision());
    big_float t1(p), t2(p);
    big_complex out(p);
    mul_into(out, *this, o, t1, t2);
    return *this = std::move(out);
}

big_complex & big_complex::operator/=(big_complex const & o)
{
    big_float n = o.norm();
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
}

big_float big_complex::norm() const
{
    return re * re + im * im;
}

big_float big_complex::abs() const
{
    return sqrt(norm());
}

} // namespace hcpkit
