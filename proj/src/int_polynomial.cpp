#include "hcpkit/int_polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "hcpkit/errors.hpp"

namespace hcpkit {

void int_polynomial::normalize()
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

int_polynomial::int_polynomial(std::vector<mpz_class> coeffs) : c(std::move(coeffs))
{
    normalize();
}

int_polynomial::int_polynomial(std::initializer_list<long> coeffs)
{
    c.reserve(coeffs.size());
    for (long v : coeffs)
        c.emplace_back(v);
    normalize();
}

int_polynomial int_polynomial::monomial(unsigned degree, mpz_class coeff)
{
    std::vector<mpz_class> v(degree + 1, 0);
    v[degree] = std::move(coeff);
    return int_polynomial(std::move(v));
}

int_polynomial int_polynomial::constant(mpz_class value)
{
    return int_polynomial(std::vector<mpz_class>{std::move(value)});
}

mpz_class int_polynomial::operator()(mpz_class const & x) const
{
    mpz_class r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * x + *it;
    return r;
}

mpz_class int_polynomial::eval_homogeneous(mpz_class const & num, mpz_class const & den) const
{
    mpz_class r = 0, dpow = 1;
    /* sum c_i num^i den^(deg-i), Horner in num with running den powers */
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * num + *it * dpow;
        dpow *= den;
    }
    return r;
}

int_polynomial & int_polynomial::operator+=(int_polynomial const & o)
{
    if (o.c.size() > c.size())
        c.resize(o.c.size(), 0);
    for (std::size_t i = 0; i < o.c.size(); ++i)
        c[i] += o.c[i];
    normalize();
    return *this;
}

int_polynomial & int_polynomial::operator-=(int_polynomial const & o)
{
    if (o.c.size() > c.size())
        c.resize(o.c.size(), 0);
    for (std::size_t i = 0; i < o.c.size(); ++i)
        c[i] -= o.c[i];
    normalize();
    return *this;
}

int_polynomial & int_polynomial::operator*=(mpz_class const & s)
{
    for (auto & x : c)
        x *= s;
    normalize();
    return *this;
}

int_polynomial operator*(int_polynomial const & a, int_polynomial const & b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    }
    return int_polynomial(std::move(r));
}

int_polynomial int_polynomial::pow(unsigned e) const
{
    int_polynomial r = constant(1), b = *this;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

int_polynomial int_polynomial::derivative() const
{
    if (c.size() <= 1)
        return {};
    std::vector<mpz_class> r(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i)
        r[i - 1] = c[i] * static_cast<unsigned long>(i);
    return int_polynomial(std::move(r));
}

int_polynomial int_polynomial::compose(int_polynomial const & g) const
{
    int_polynomial r;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * g + constant(*it);
    return r;
}

mpz_class int_polynomial::content() const
{
    mpz_class g = 0;
    for (auto const & x : c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

int_polynomial int_polynomial::primitive_part() const
{
    if (is_zero())
        return {};
    mpz_class g = content();
    if (lead() < 0)
        g = -g;
    std::vector<mpz_class> r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        mpz_divexact(r[i].get_mpz_t(), c[i].get_mpz_t(), g.get_mpz_t());
    return int_polynomial(std::move(r));
}

std::string int_polynomial::to_string(char var) const
{
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        mpz_class const & a = c[static_cast<std::size_t>(i)];
        if (a == 0)
            continue;
        mpz_class mag = abs(a);
        if (first)
            os << (a < 0 ? "-" : "");
        else
            os << (a < 0 ? " - " : " + ");
        first = false;
        if (i == 0 || mag != 1)
            os << mag;
        if (i > 0) {
            os << var;
            if (i > 1)
                os << '^' << i;
        }
    }
    return os.str();
}

void divrem_monic(int_polynomial const & f, int_polynomial const & g,
                  int_polynomial & q, int_polynomial & r)
{
    if (!g.is_monic())
        throw invalid_argument("divrem_monic: divisor must be monic");
    std::vector<mpz_class> rem = f.coeffs();
    int const dg = g.degree();
    int const df = f.degree();
    if (df < dg) {
        q = {};
        r = f;
        return;
    }
    std::vector<mpz_class> quo(static_cast<std::size_t>(df - dg + 1), 0);
    auto const & gc = g.coeffs();
    for (int i = df; i >= dg; --i) {
        mpz_class t = rem[static_cast<std::size_t>(i)];
        if (t == 0)
            continue;
        quo[static_cast<std::size_t>(i - dg)] = t;
        for (int j = 0; j <= dg; ++j)
            mpz_submul(rem[static_cast<std::size_t>(i - dg + j)].get_mpz_t(), t.get_mpz_t(),
                       gc[static_cast<std::size_t>(j)].get_mpz_t());
    }
    q = int_polynomial(std::move(quo));
    r = int_polynomial(std::move(rem));
}

int_polynomial div_exact(int_polynomial const & f, int_polynomial const & g)
{
    if (g.is_zero())
        throw invalid_argument("div_exact: division by zero polynomial");
    std::vector<mpz_class> rem = f.coeffs();
    int const dg = g.degree();
    int const df = f.degree();
    if (df < dg) {
        if (!f.is_zero())
            throw invalid_argument("div_exact: not divisible");
        return {};
    }
    std::vector<mpz_class> quo(static_cast<std::size_t>(df - dg + 1), 0);
    auto const & gc = g.coeffs();
    for (int i = df; i >= dg; --i) {
        mpz_class & t = rem[static_cast<std::size_t>(i)];
        if (t == 0)
            continue;
        if (!mpz_divisible_p(t.get_mpz_t(), g.lead().get_mpz_t()))
            throw invalid_argument("div_exact: not divisible");
        mpz_class qt;
        mpz_divexact(qt.get_mpz_t(), t.get_mpz_t(), g.lead().get_mpz_t());
        quo[static_cast<std::size_t>(i - dg)] = qt;
        for (int j = 0; j <= dg; ++j)
            mpz_submul(rem[static_cast<std::size_t>(i - dg + j)].get_mpz_t(), qt.get_mpz_t(),
                       gc[static_cast<std::size_t>(j)].get_mpz_t());
    }
    if (std::any_of(rem.begin(), rem.end(), [](mpz_class const & x) { return x != 0; }))
        throw invalid_argument("div_exact: not divisible");
    return int_polynomial(std::move(quo));
}

namespace {

/* lead(g)^(deg f - deg g + 1) * f mod g */
int_polynomial pseudo_remainder(int_polynomial const & f, int_polynomial const & g)
{
    std::vector<mpz_class> rem = f.coeffs();
    int const dg = g.degree();
    auto const & gc = g.coeffs();
    mpz_class const & lg = g.lead();
    for (int i = f.degree(); i >= dg; --i) {
        mpz_class t = rem[static_cast<std::size_t>(i)];
        for (int k = 0; k <= i; ++k)
            rem[static_cast<std::size_t>(k)] *= lg;
        if (t == 0)
            continue;
        for (int j = 0; j <= dg; ++j)
            mpz_submul(rem[static_cast<std::size_t>(i - dg + j)].get_mpz_t(), t.get_mpz_t(),
                       gc[static_cast<std::size_t>(j)].get_mpz_t());
    }
    rem.resize(static_cast<std::size_t>(std::max(dg, 0)));
    return int_polynomial(std::move(rem));
}

} // namespace

int_polynomial gcd(int_polynomial const & f, int_polynomial const & g)
{
    int_polynomial a = f.primitive_part(), b = g.primitive_part();
    if (a.degree() < b.degree())
        std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree() == 0)
            return int_polynomial::constant(1);
        int_polynomial r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.primitive_part();
    }
    return a;
}

int_polynomial squarefree_part(int_polynomial const & f)
{
    int_polynomial g = gcd(f, f.derivative());
    int_polynomial pf = f.primitive_part();
    if (g.degree() <= 0)
        return pf;
    return div_exact(pf, g).primitive_part();
}

} // namespace hcpkit
