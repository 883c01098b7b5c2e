#include "hcpkit/finitefield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/quadforms.hpp"

namespace hcpkit {

using elem = finite_field::elem;
using u128 = unsigned __int128;

namespace {

constexpr std::uint64_t max_field_size = std::uint64_t(1) << 62;
constexpr std::size_t max_degree = 62;

bool irreducible_over_prime_field(field_ptr const & Fp, std::vector<std::uint64_t> const & mod)
{
    fq_poly f(Fp, std::vector<elem>(mod.begin(), mod.end()));
    auto const m = static_cast<std::uint64_t>(f.degree());
    fq_poly X = fq_poly::monomial(Fp, 1);
    fq_poly xp = X;
    mpz_class p(static_cast<unsigned long>(Fp->characteristic()));
    for (std::uint64_t i = 1; i <= m / 2; ++i) {
        xp = powmod(xp, p, f);
        if (poly_gcd(f, xp - X).degree() > 0)
            return false;
    }
    return true;
}

} // namespace

finite_field::finite_field(std::uint64_t p, std::uint64_t m) : p_(p), m_(m), q_(1)
{
    for (std::uint64_t i = 0; i < m; ++i)
        q_ *= p;
}

field_ptr finite_field::make(std::uint64_t p, std::uint64_t m)
{
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, std::uint64_t>, field_ptr> fields;

    if (m < 1 || m > max_degree)
        throw invalid_argument("finite_field: degree out of range");
    if (!is_prime(p))
        throw invalid_argument("finite_field: characteristic must be prime");
    u128 q = 1;
    for (std::uint64_t i = 0; i < m; ++i) {
        q *= p;
        if (q >= max_field_size)
            throw field_too_large("finite_field: p^m must stay below 2^62");
    }

    {
        std::lock_guard lock(mutex);
        if (auto it = fields.find({p, m}); it != fields.end())
            return it->second;
    }

    std::shared_ptr<finite_field> F(new finite_field(p, m));
    if (m == 1) {
        F->modulus_ = {0, 1};
    } else {
        auto Fp = make(p, 1);
        auto const pm = static_cast<std::uint64_t>(q);
        for (std::uint64_t idx = 0; idx < pm; ++idx) {
            std::vector<std::uint64_t> cand(m + 1);
            std::uint64_t t = idx;
            for (std::uint64_t i = 0; i < m; ++i) {
                cand[i] = t % p;
                t /= p;
            }
            cand[m] = 1;
            if (cand[0] == 0)
                continue;
            if (irreducible_over_prime_field(Fp, cand)) {
                F->modulus_ = std::move(cand);
                break;
            }
        }
    }

    std::lock_guard lock(mutex);
    auto [it, inserted] = fields.emplace(std::make_pair(p, m), std::move(F));
    return it->second;
}

bool same_field(finite_field const & a, finite_field const & b)
{
    return a.characteristic() == b.characteristic() && a.degree() == b.degree();
}

std::vector<std::uint64_t> finite_field::coords(elem a) const
{
    std::vector<std::uint64_t> c(m_);
    for (std::uint64_t i = 0; i < m_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

elem finite_field::from_coords(std::vector<std::uint64_t> const & c) const
{
    if (c.size() > m_)
        throw invalid_argument("finite_field: too many coordinates");
    elem r = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        r = r * p_ + c[i] % p_;
    return r;
}

elem finite_field::from_int(mpz_class const & n) const
{
    return mod_ui(n, p_);
}

elem finite_field::from_int(std::int64_t n) const
{
    auto const r = n % static_cast<std::int64_t>(p_);
    return static_cast<elem>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
}

elem finite_field::generator() const
{
    return m_ == 1 ? 0 : p_;
}

elem finite_field::add(elem a, elem b) const
{
    if (m_ == 1) {
        elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    elem r = 0, scale = 1;
    for (std::uint64_t i = 0; i < m_; ++i) {
        elem s = a % p_ + b % p_;
        if (s >= p_)
            s -= p_;
        r += s * scale;
        scale *= p_;
        a /= p_;
        b /= p_;
    }
    return r;
}

elem finite_field::neg(elem a) const
{
    if (m_ == 1)
        return a == 0 ? 0 : p_ - a;
    elem r = 0, scale = 1;
    for (std::uint64_t i = 0; i < m_; ++i) {
        elem d = a % p_;
        r += (d == 0 ? 0 : p_ - d) * scale;
        scale *= p_;
        a /= p_;
    }
    return r;
}

elem finite_field::sub(elem a, elem b) const
{
    return add(a, neg(b));
}

elem finite_field::mul(elem a, elem b) const
{
    if (m_ == 1)
        return mulmod(a, b, p_);
    std::uint64_t x[max_degree], y[max_degree];
    u128 prod[2 * max_degree] = {};
    for (std::uint64_t i = 0; i < m_; ++i) {
        x[i] = a % p_;
        a /= p_;
        y[i] = b % p_;
        b /= p_;
    }
    for (std::uint64_t i = 0; i < m_; ++i) {
        if (x[i] == 0)
            continue;
        for (std::uint64_t j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + static_cast<u128>(x[i]) * y[j]) % p_;
    }
    /* reduce by the monic modulus from the top */
    for (std::uint64_t k = 2 * m_ - 2; k >= m_; --k) {
        auto const t = static_cast<std::uint64_t>(prod[k] % p_);
        prod[k] = 0;
        if (t == 0)
            continue;
        for (std::uint64_t i = 0; i < m_; ++i)
            prod[k - m_ + i] = (prod[k - m_ + i] + static_cast<u128>(p_ - t) * modulus_[i]) % p_;
    }
    elem r = 0;
    for (std::uint64_t i = m_; i-- > 0;)
        r = r * p_ + static_cast<std::uint64_t>(prod[i] % p_);
    return r;
}

elem finite_field::pow(elem a, std::uint64_t e) const
{
    elem r = 1;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        e >>= 1;
        if (e)
            a = mul(a, a);
    }
    return r;
}

elem finite_field::pow(elem a, mpz_class const & e) const
{
    if (e < 0)
        return pow(inv(a), mpz_class(-e));
    elem r = 1;
    auto const bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mul(r, r);
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = mul(r, a);
    }
    return r;
}

elem finite_field::inv(elem a) const
{
    if (a == 0)
        throw invalid_argument("finite_field: inverse of zero");
    if (m_ == 1)
        return invmod(a, p_);
    return pow(a, q_ - 2);
}

std::uint64_t finite_field::to_prime_field(elem a) const
{
    if (a >= p_)
        throw invalid_argument("finite_field: element not in the prime field");
    return a;
}

std::string finite_field::to_string(elem a) const
{
    if (m_ == 1)
        return std::to_string(a);
    std::ostringstream os;
    auto c = coords(a);
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i)
        os << (i ? "," : "") << c[i];
    os << ')';
    return os.str();
}

/* ---- polynomials ---- */

fq_poly::fq_poly(field_ptr field, std::vector<elem> coeffs) : f(std::move(field)), c(std::move(coeffs))
{
    normalize();
}

void fq_poly::normalize()
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

fq_poly fq_poly::monomial(field_ptr field, unsigned degree, elem coeff)
{
    std::vector<elem> v(degree + 1, 0);
    v[degree] = coeff;
    return fq_poly(std::move(field), std::move(v));
}

fq_poly fq_poly::from_int(field_ptr field, std::vector<mpz_class> const & coeffs)
{
    std::vector<elem> v(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        v[i] = field->from_int(coeffs[i]);
    return fq_poly(std::move(field), std::move(v));
}

fq_poly fq_poly::from_int(field_ptr field, int_polynomial const & g)
{
    return from_int(std::move(field), g.coeffs());
}

elem fq_poly::operator()(elem x) const
{
    elem r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = f->add(f->mul(r, x), *it);
    return r;
}

std::string fq_poly::to_string(char var) const
{
    if (c.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        elem a = c[static_cast<std::size_t>(i)];
        if (a == 0)
            continue;
        if (!first)
            os << " + ";
        first = false;
        if (i == 0 || a != 1)
            os << f->to_string(a);
        if (i > 0) {
            os << var;
            if (i > 1)
                os << '^' << i;
        }
    }
    return os.str();
}

namespace {

void check_same(fq_poly const & a, fq_poly const & b)
{
    if (!same_field(a.F(), b.F()))
        throw field_mismatch("polynomials over different fields");
}

} // namespace

fq_poly operator+(fq_poly const & a, fq_poly const & b)
{
    check_same(a, b);
    auto const & F = a.F();
    std::vector<elem> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.add(a.coeff(i), b.coeff(i));
    return fq_poly(a.field(), std::move(r));
}

fq_poly operator-(fq_poly const & a, fq_poly const & b)
{
    check_same(a, b);
    auto const & F = a.F();
    std::vector<elem> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F.sub(a.coeff(i), b.coeff(i));
    return fq_poly(a.field(), std::move(r));
}

fq_poly operator*(fq_poly const & a, fq_poly const & b)
{
    check_same(a, b);
    if (a.is_zero() || b.is_zero())
        return fq_poly(a.field());
    auto const & F = a.F();
    auto const & ac = a.coeffs();
    auto const & bc = b.coeffs();
    std::vector<elem> r(ac.size() + bc.size() - 1, 0);
    if (F.degree() == 1) {
        std::uint64_t const p = F.characteristic();
        std::vector<u128> acc(r.size(), 0);
        for (std::size_t i = 0; i < ac.size(); ++i) {
            if (ac[i] == 0)
                continue;
            for (std::size_t j = 0; j < bc.size(); ++j)
                acc[i + j] = (acc[i + j] + static_cast<u128>(ac[i]) * bc[j]) % p;
        }
        for (std::size_t k = 0; k < r.size(); ++k)
            r[k] = static_cast<elem>(acc[k]);
    } else {
        for (std::size_t i = 0; i < ac.size(); ++i) {
            if (ac[i] == 0)
                continue;
            for (std::size_t j = 0; j < bc.size(); ++j)
                r[i + j] = F.add(r[i + j], F.mul(ac[i], bc[j]));
        }
    }
    return fq_poly(a.field(), std::move(r));
}

fq_poly scale(fq_poly const & a, elem s)
{
    std::vector<elem> r(a.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = a.F().mul(a.coeffs()[i], s);
    return fq_poly(a.field(), std::move(r));
}

fq_poly make_monic(fq_poly const & a)
{
    if (a.is_zero() || a.lead() == 1)
        return a;
    return scale(a, a.F().inv(a.lead()));
}

void divrem(fq_poly const & a, fq_poly const & b, fq_poly & q, fq_poly & r)
{
    check_same(a, b);
    if (b.is_zero())
        throw invalid_argument("fq_poly: division by zero polynomial");
    auto const & F = a.F();
    std::vector<elem> rem = a.coeffs();
    int const db = b.degree();
    int const da = a.degree();
    if (da < db) {
        q = fq_poly(a.field());
        r = a;
        return;
    }
    elem const linv = F.inv(b.lead());
    auto const & bc = b.coeffs();
    std::vector<elem> quo(static_cast<std::size_t>(da - db + 1), 0);
    for (int i = da; i >= db; --i) {
        elem t = rem[static_cast<std::size_t>(i)];
        if (t == 0)
            continue;
        t = F.mul(t, linv);
        quo[static_cast<std::size_t>(i - db)] = t;
        for (int j = 0; j <= db; ++j) {
            auto & x = rem[static_cast<std::size_t>(i - db + j)];
            x = F.sub(x, F.mul(t, bc[static_cast<std::size_t>(j)]));
        }
    }
    rem.resize(static_cast<std::size_t>(db));
    q = fq_poly(a.field(), std::move(quo));
    r = fq_poly(a.field(), std::move(rem));
}

fq_poly operator%(fq_poly const & a, fq_poly const & b)
{
    fq_poly q(a.field()), r(a.field());
    divrem(a, b, q, r);
    return r;
}

fq_poly operator/(fq_poly const & a, fq_poly const & b)
{
    fq_poly q(a.field()), r(a.field());
    divrem(a, b, q, r);
    return q;
}

fq_poly pow(fq_poly const & a, std::uint64_t e)
{
    fq_poly r = fq_poly::monomial(a.field(), 0), b = a;
    while (e) {
        if (e & 1)
            r = r * b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

fq_poly powmod(fq_poly const & a, mpz_class const & e, fq_poly const & mod)
{
    fq_poly r = fq_poly::monomial(a.field(), 0) % mod;
    fq_poly b = a % mod;
    auto const bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = (r * r) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i))
            r = (r * b) % mod;
    }
    return r;
}

fq_poly derivative(fq_poly const & a)
{
    if (a.degree() < 1)
        return fq_poly(a.field());
    auto const & F = a.F();
    std::vector<elem> r(a.coeffs().size() - 1);
    for (std::size_t i = 1; i < a.coeffs().size(); ++i)
        r[i - 1] = F.mul(a.coeffs()[i], F.from_int(static_cast<std::int64_t>(i % F.characteristic())));
    return fq_poly(a.field(), std::move(r));
}

fq_poly compose(fq_poly const & a, fq_poly const & b)
{
    check_same(a, b);
    fq_poly r(a.field());
    for (auto it = a.coeffs().rbegin(); it != a.coeffs().rend(); ++it)
        r = r * b + fq_poly(a.field(), {*it});
    return r;
}

fq_poly poly_gcd(fq_poly const & a, fq_poly const & b)
{
    check_same(a, b);
    fq_poly x = a, y = b;
    while (!y.is_zero()) {
        fq_poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return make_monic(x);
}

elem resultant(fq_poly const & a_in, fq_poly const & b_in)
{
    check_same(a_in, b_in);
    auto const & F = a_in.F();
    if (a_in.is_zero() || b_in.is_zero())
        return 0;
    fq_poly a = a_in, b = b_in;
    elem acc = 1;
    /* res(a, b) with the recurrence res(a, b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} res(b, r) */
    for (;;) {
        int const da = a.degree(), db = b.degree();
        if (db == 0)
            return F.mul(acc, F.pow(b.lead(), static_cast<std::uint64_t>(da)));
        fq_poly r = a % b;
        if (r.is_zero())
            return 0;
        if ((da & 1) && (db & 1))
            acc = F.neg(acc);
        acc = F.mul(acc, F.pow(b.lead(), static_cast<std::uint64_t>(da - r.degree())));
        a = std::move(b);
        b = std::move(r);
    }
}

fq_poly squarefree_part(fq_poly const & a)
{
    if (a.degree() < 1)
        return make_monic(a);
    fq_poly d = derivative(a);
    if (d.is_zero())
        throw invalid_argument("squarefree_part: p-th powers are not supported");
    fq_poly g = poly_gcd(a, d);
    return make_monic(a / g);
}

/* ---- roots ---- */

namespace {

fq_poly lift(fq_poly const & f, field_ptr const & K)
{
    if (same_field(f.F(), *K))
        return fq_poly(K, f.coeffs());
    if (f.F().degree() != 1 || f.F().characteristic() != K->characteristic())
        throw field_mismatch("roots_in: polynomial must be over F_p or over F_{p^m} itself");
    /* prime field elements keep their encoding in any extension */
    return fq_poly(K, f.coeffs());
}

/* Split a squarefree product of distinct linear factors. */
void equal_degree_split(fq_poly const & g, std::mt19937_64 & rng, std::vector<elem> & roots)
{
    auto const & F = g.F();
    if (g.degree() == 0)
        return;
    if (g.degree() == 1) {
        roots.push_back(F.neg(F.mul(g.coeff(0), F.inv(g.lead()))));
        return;
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, F.size() - 1);
    for (;;) {
        fq_poly h(g.field());
        if (F.characteristic() == 2) {
            /* trace map of r X: sum over i < log2 q of (r X)^{2^i} mod g */
            fq_poly t = fq_poly::monomial(g.field(), 1, pick(rng)) % g;
            h = t;
            std::uint64_t const k = F.degree();
            for (std::uint64_t i = 1; i < k; ++i) {
                t = (t * t) % g;
                h = h + t;
            }
        } else {
            fq_poly base(g.field(), {pick(rng), 1});
            mpz_class e = (mpz_class(static_cast<unsigned long>(F.size())) - 1) / 2;
            h = powmod(base, e, g) - fq_poly::monomial(g.field(), 0);
        }
        fq_poly d = poly_gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            equal_degree_split(d, rng, roots);
            equal_degree_split(g / d, rng, roots);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<fq_element, unsigned>> roots_in(fq_poly const & f_in, std::uint64_t m,
                                                      root_method method)
{
    if (m < 1)
        throw invalid_argument("roots_in: m must be >= 1");
    if (f_in.is_zero())
        throw invalid_argument("roots_in: zero polynomial");
    auto K = finite_field::make(f_in.F().characteristic(), m);
    fq_poly f = lift(f_in, K);
    auto const & F = *K;

    if (method == root_method::automatic)
        method = F.size() <= 1024 ? root_method::exhaustive : root_method::splitting;

    std::vector<elem> distinct;
    if (method == root_method::exhaustive) {
        if (F.size() > max_point_count_field)
            throw field_too_large("roots_in: exhaustive search limited to 2^20 elements");
        for (elem x = 0; x < F.size(); ++x)
            if (f(x) == 0)
                distinct.push_back(x);
    } else if (f.degree() > 0) {
        /* g = gcd(f, X^q - X) collects the distinct roots in F_q */
        fq_poly X = fq_poly::monomial(K, 1);
        fq_poly xq = powmod(X, mpz_class(static_cast<unsigned long>(F.size())), f);
        fq_poly g = poly_gcd(f, xq - X);
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ F.size());
        equal_degree_split(g, rng, distinct);
        std::sort(distinct.begin(), distinct.end());
    }

    std::vector<std::pair<fq_element, unsigned>> out;
    for (elem r : distinct) {
        unsigned mult = 0;
        fq_poly rest = f;
        fq_poly lin(K, {F.neg(r), 1});
        for (;;) {
            fq_poly q(K), rem(K);
            divrem(rest, lin, q, rem);
            if (!rem.is_zero())
                break;
            ++mult;
            rest = std::move(q);
        }
        out.push_back({fq_element{K, r}, mult});
    }
    return out;
}

/* ---- supersingular j-invariants ---- */

fq_poly supersingular_polynomial(std::uint64_t p)
{
    if (!is_prime(p))
        throw invalid_argument("supersingular_polynomial: p must be prime");
    auto Fp = finite_field::make(p, 1);
    if (p == 2 || p == 3)
        return fq_poly::monomial(Fp, 1);
    auto const & F = *Fp;

    /* Hasse invariant of the Legendre family: sum_{i<=m} C(m,i)^2 lambda^i */
    std::uint64_t const m = (p - 1) / 2;
    std::vector<elem> hasse(m + 1);
    elem binom = 1;
    for (std::uint64_t i = 0; i <= m; ++i) {
        if (i > 0)
            binom = F.mul(F.mul(binom, (m - i + 1) % p), F.inv(i % p));
        hasse[i] = F.mul(binom, binom);
    }
    fq_poly H(Fp, hasse);

    /* j = 256 (1 - l + l^2)^3 / (l^2 (1 - l)^2): eliminate lambda by a
     * resultant, sampled at j = 0..m and interpolated (degree m in j) */
    fq_poly one_minus_l(Fp, {1, F.neg(1)});
    fq_poly l2(Fp, {0, 0, 1});
    fq_poly den = l2 * one_minus_l * one_minus_l;
    fq_poly tri(Fp, {1, F.neg(1), 1});
    fq_poly num = scale(tri * tri * tri, F.from_int(std::int64_t{256}));

    std::vector<elem> xs, ys;
    for (std::uint64_t j = 0; j <= m; ++j) {
        fq_poly G = scale(den, j) - num;
        xs.push_back(j);
        ys.push_back(resultant(H, G));
    }

    /* Lagrange interpolation */
    fq_poly R(Fp);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fq_poly basis = fq_poly::monomial(Fp, 0);
        elem denom = 1;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (k == i)
                continue;
            basis = basis * fq_poly(Fp, {F.neg(xs[k]), 1});
            denom = F.mul(denom, F.sub(xs[i], xs[k]));
        }
        R = R + scale(basis, F.mul(ys[i], F.inv(denom)));
    }
    return squarefree_part(R);
}

/* ---- curves and point counting ---- */

weierstrass_curve curve_from_j(fq_element const & j0)
{
    auto const & F = *j0.field;
    std::uint64_t const p = F.characteristic();
    weierstrass_curve E{j0.field};
    elem const j = j0.value;
    if (p == 2) {
        if (j == 0) {
            E.a3 = 1;
        } else {
            E.a1 = 1;
            E.a6 = F.inv(j);
        }
    } else if (p == 3) {
        if (j == 0) {
            E.a4 = 1;
        } else {
            E.a2 = 1;
            E.a6 = F.neg(F.inv(j));
        }
    } else {
        elem const j1728 = F.from_int(std::int64_t{1728});
        if (j == 0) {
            E.a6 = 1;
        } else if (j == j1728) {
            E.a4 = 1;
        } else {
            elem k = F.div(j, F.sub(j1728, j));
            E.a4 = F.mul(F.from_int(std::int64_t{3}), k);
            E.a6 = F.mul(F.from_int(std::int64_t{2}), k);
        }
    }
    return E;
}

std::uint64_t count_points(weierstrass_curve const & E)
{
    auto const & F = *E.field;
    std::uint64_t const q = F.size();
    if (q > max_point_count_field)
        throw field_too_large("count_points: q must be at most 2^20");

    auto rhs = [&](elem x) {
        elem r = F.add(F.mul(F.add(F.mul(F.add(x, E.a2), x), E.a4), x), E.a6);
        return r;
    };

    std::uint64_t count = 1; // point at infinity
    if (F.characteristic() == 2) {
        /* z^2 + z = w is solvable (twice) iff w lies in the image */
        std::vector<std::uint8_t> image(q, 0);
        for (elem z = 0; z < q; ++z)
            image[F.add(F.mul(z, z), z)] = 1;
        for (elem x = 0; x < q; ++x) {
            elem c = F.add(F.mul(E.a1, x), E.a3);
            if (c == 0) {
                count += 1;
                continue;
            }
            elem w = F.div(rhs(x), F.mul(c, c));
            count += image[w] ? 2 : 0;
        }
        return count;
    }

    std::vector<std::uint8_t> square(q, 0);
    for (elem z = 0; z < q; ++z)
        square[F.mul(z, z)] = 1;
    elem const quarter = F.inv(F.from_int(std::int64_t{4}));
    for (elem x = 0; x < q; ++x) {
        /* (y + (a1 x + a3)/2)^2 = rhs + (a1 x + a3)^2 / 4 */
        elem c = F.add(F.mul(E.a1, x), E.a3);
        elem v = F.add(rhs(x), F.mul(F.mul(c, c), quarter));
        if (v == 0)
            count += 1;
        else if (square[v])
            count += 2;
    }
    return count;
}

std::int64_t frobenius_trace(fq_element const & j0)
{
    auto const E = curve_from_j(j0);
    auto const n = count_points(E);
    return static_cast<std::int64_t>(j0.field->size()) + 1 - static_cast<std::int64_t>(n);
}

std::vector<std::int64_t> deuring_discriminants(fq_element const & j0, class_polynomials & source,
                                                std::int64_t max_abs_D)
{
    auto const & F = *j0.field;
    auto const p = static_cast<std::int64_t>(F.characteristic());
    auto const q = static_cast<std::int64_t>(F.size());
    std::int64_t const t = frobenius_trace(j0);
    if (t % p == 0)
        throw supersingular_input("deuring_discriminants: j0 is supersingular");

    std::int64_t const delta = t * t - 4 * q;
    auto Fp = finite_field::make(F.characteristic(), 1);
    std::vector<std::int64_t> out;
    bool any_tried = false;
    for (std::int64_t f = 1; f * f <= -delta; ++f) {
        if (delta % (f * f) != 0)
            continue;
        std::int64_t const D = delta / (f * f);
        if (!is_discriminant(D))
            continue;
        if (max_abs_D > 0 && -D > max_abs_D)
            continue;
        if (class_number(D) > source.h_cap())
            continue;
        any_tried = true;
        fq_poly H = fq_poly::from_int(j0.field, source.get(D));
        if (H(j0.value) == 0)
            out.push_back(D);
    }
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return a > b; });
    if (out.empty())
        throw not_found("deuring_discriminants: no candidate D vanishes at j0 (t = " +
                        std::to_string(t) + (any_tried ? ")" : ", all candidates above cap)"));
    return out;
}

std::vector<std::pair<fq_element, unsigned>> michel_counts(std::int64_t D, std::uint64_t p,
                                                           class_polynomials & source)
{
    if (kronecker(D, static_cast<std::int64_t>(p)) != -1)
        throw not_inert("michel_counts: p is not inert for D");
    auto Fp = finite_field::make(p, 1);
    fq_poly H = fq_poly::from_int(Fp, source.get(D));
    return roots_in(H, 2);
}

} // namespace hcpkit
