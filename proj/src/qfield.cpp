#include "hcpkit/qfield.hpp"

#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/quadforms.hpp"

namespace hcpkit {

quad_int::quad_int(mpz_class u, mpz_class v) : u_(std::move(u)), v_(std::move(v))
{
    if (mpz_odd_p(u_.get_mpz_t()) != mpz_odd_p(v_.get_mpz_t()))
        throw invalid_argument("quad_int: u and v must have the same parity");
}

bool quad_int::is_unit() const
{
    return abs(norm()) == 1;
}

mpz_class quad_int::norm() const
{
    mpz_class n = u_ * u_ - 5 * v_ * v_;
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

quad_int operator+(quad_int const & a, quad_int const & b)
{
    return quad_int(a.u_ + b.u_, a.v_ + b.v_);
}

quad_int operator-(quad_int const & a, quad_int const & b)
{
    return quad_int(a.u_ - b.u_, a.v_ - b.v_);
}

quad_int operator*(quad_int const & a, quad_int const & b)
{
    mpz_class u = a.u_ * b.u_ + 5 * a.v_ * b.v_;
    mpz_class v = a.u_ * b.v_ + a.v_ * b.u_;
    mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), 2);
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 2);
    return quad_int(std::move(u), std::move(v));
}

std::string quad_int::to_string() const
{
    return "(" + u_.get_str() + (v_ < 0 ? " - " : " + ") + mpz_class(abs(v_)).get_str() +
           "*sqrt5)/2";
}

namespace {

/* nearest integer to n / d, d > 0, ties rounded up */
mpz_class round_quotient(mpz_class const & n, mpz_class const & d)
{
    mpz_class q, t = 2 * n + d;
    mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), mpz_class(2 * d).get_mpz_t());
    return q;
}

} // namespace

quad_int round_div(quad_int const & a, quad_int const & b)
{
    if (b.is_zero())
        throw invalid_argument("round_div: division by zero");
    /* a / b = (U + V sqrt5) / (2 N) with U + V sqrt5 = 2 a conj(b) */
    quad_int const t = a * b.conjugate();
    mpz_class N = b.norm();
    mpz_class U = t.u(), V = t.v();
    if (N < 0) {
        N = -N;
        U = -U;
        V = -V;
    }
    /* a/b = (r + s sqrt5)/2 with r = U/N, s = V/N */
    mpz_class v = round_quotient(V, N);
    /* u = v mod 2 nearest to U/N: u = v + 2 round((U - vN) / (2N)) */
    mpz_class u = v + 2 * round_quotient(U - v * N, 2 * N);
    return quad_int(std::move(u), std::move(v));
}

bool divides(quad_int const & b, quad_int const & a)
{
    if (b.is_zero())
        return a.is_zero();
    quad_int const t = a * b.conjugate();
    mpz_class const N = abs(b.norm());
    return mpz_divisible_p(t.u().get_mpz_t(), N.get_mpz_t()) &&
           mpz_divisible_p(t.v().get_mpz_t(), N.get_mpz_t()) &&
           [&] {
               mpz_class u = t.u() / N, v = t.v() / N;
               return mpz_odd_p(u.get_mpz_t()) == mpz_odd_p(v.get_mpz_t());
           }();
}

quad_int exact_div(quad_int const & a, quad_int const & b)
{
    if (b.is_zero())
        throw invalid_argument("exact_div: division by zero");
    quad_int const t = a * b.conjugate();
    mpz_class N = b.norm();
    if (!mpz_divisible_p(t.u().get_mpz_t(), N.get_mpz_t()) ||
        !mpz_divisible_p(t.v().get_mpz_t(), N.get_mpz_t()))
        throw invalid_argument("exact_div: not divisible");
    mpz_class u, v;
    mpz_divexact(u.get_mpz_t(), t.u().get_mpz_t(), N.get_mpz_t());
    mpz_divexact(v.get_mpz_t(), t.v().get_mpz_t(), N.get_mpz_t());
    return quad_int(std::move(u), std::move(v));
}

quad_int euclidean_gcd(quad_int x, quad_int y, unsigned long * steps)
{
    if (x.is_zero() && y.is_zero())
        throw invalid_argument("euclidean_gcd: both arguments are zero");
    unsigned long n = 0;
    while (!y.is_zero()) {
        quad_int r = x - round_div(x, y) * y;
        x = std::move(y);
        y = std::move(r);
        ++n;
    }
    if (steps)
        *steps = n;
    return x;
}

bool support_subset(quad_int const & x, quad_int const & y)
{
    if (x.is_zero())
        return y.is_zero();
    quad_int z = x;
    for (;;) {
        quad_int g = euclidean_gcd(z, y);
        if (g.is_unit())
            break;
        z = exact_div(z, g);
    }
    return z.is_unit();
}

quad_int evaluate(int_polynomial const & f, quad_int const & x)
{
    quad_int r;
    auto const & c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * x + quad_int::from_int(*it);
    return r;
}

std::pair<quad_int, quad_int> discriminant_minus15_roots()
{
    return {quad_int(-191025, -85995), quad_int(-191025, 85995)};
}

thm54_report verify_thm54(std::int64_t D, std::pair<quad_int, quad_int> const & j_pair,
                          class_polynomials & source)
{
    thm54_report r;
    r.D = D;
    int_polynomial const & H = source.get(D);
    r.h = static_cast<std::uint64_t>(H.degree());
    r.required = ((D % 8) + 8) % 8 == 1;
    quad_int const x = evaluate(H, j_pair.first);
    quad_int const y = evaluate(H, j_pair.second);
    r.forward = support_subset(x, y);
    r.backward = support_subset(y, x);
    return r;
}

thm54_report verify_thm54(std::int64_t D, class_polynomials & source)
{
    return verify_thm54(D, discriminant_minus15_roots(), source);
}

} // namespace hcpkit
