#include "hcpkit/modpoly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <vector>

#include "hcpkit/bigfloat.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/modfunc.hpp"

namespace hcpkit {

mpz_class bivar_int_polynomial::coeff(unsigned i, unsigned j) const
{
    auto it = c.find({i, j});
    return it == c.end() ? mpz_class(0) : it->second;
}

void bivar_int_polynomial::set(unsigned i, unsigned j, mpz_class v)
{
    if (v == 0)
        c.erase({i, j});
    else
        c[{i, j}] = std::move(v);
}

unsigned bivar_int_polynomial::degree_x() const
{
    unsigned d = 0;
    for (auto const & [k, v] : c)
        d = std::max(d, k.first);
    return d;
}

unsigned bivar_int_polynomial::degree_y() const
{
    unsigned d = 0;
    for (auto const & [k, v] : c)
        d = std::max(d, k.second);
    return d;
}

bool bivar_int_polynomial::is_symmetric() const
{
    for (auto const & [k, v] : c)
        if (coeff(k.second, k.first) != v)
            return false;
    return true;
}

mpz_class bivar_int_polynomial::operator()(mpz_class const & x, mpz_class const & y) const
{
    mpz_class r = 0, t;
    for (auto const & [k, v] : c) {
        mpz_class xi, yj;
        mpz_pow_ui(xi.get_mpz_t(), x.get_mpz_t(), k.first);
        mpz_pow_ui(yj.get_mpz_t(), y.get_mpz_t(), k.second);
        r += v * xi * yj;
    }
    return r;
}

std::map<bivar_int_polynomial::key, std::uint64_t>
bivar_int_polynomial::reduce_mod(std::uint64_t p) const
{
    std::map<key, std::uint64_t> out;
    for (auto const & [k, v] : c) {
        auto r = mpz_fdiv_ui(v.get_mpz_t(), p);
        if (r)
            out[k] = r;
    }
    return out;
}

namespace {

bool supported_level(unsigned N)
{
    return N == 1 || N == 2 || N == 3 || N == 5 || N == 7;
}

/* Coefficients (constant first, real parts) of prod over the N + 1 cyclic
 * index-N sublattices of (X - j(gamma tau)), tau = i y. */
std::vector<big_float> sublattice_product(unsigned N, big_float const & y, long prec_bits)
{
    auto const w = y.precision();
    big_float Nf(w, static_cast<long>(N));
    std::vector<big_complex> roots;

    big_complex t0(w);
    t0.im = y * Nf;
    roots.push_back(j_tau(t0, prec_bits));
    for (unsigned b = 0; b < N; ++b) {
        big_complex t(w);
        t.re = big_float(w, static_cast<long>(b)) / Nf;
        t.im = y / Nf;
        roots.push_back(j_tau(reduce_to_fundamental_domain(t), prec_bits));
    }

    std::vector<big_complex> poly(1, big_complex(w));
    mpfr_set_ui(poly[0].re.get(), 1, MPFR_RNDN);
    for (auto const & r : roots) {
        std::vector<big_complex> next(poly.size() + 1, big_complex(w));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * r;
        }
        poly = std::move(next);
    }
    std::vector<big_float> out;
    for (auto & c : poly)
        out.push_back(c.re);
    return out;
}

/* Newton interpolation: monomial coefficients of the polynomial through
 * (xs[i], ys[i]). */
std::vector<big_float> interpolate(std::vector<big_float> const & xs, std::vector<big_float> ys)
{
    std::size_t const n = xs.size();
    auto const w = xs[0].precision();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i)
            ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - k]);
    std::vector<big_float> coeffs(n, big_float(w));
    /* expand the Newton form from the innermost term */
    for (std::size_t k = n; k-- > 0;) {
        /* coeffs <- coeffs * (X - xs[k]) + ys[k] */
        for (std::size_t i = n - 1; i > 0; --i)
            coeffs[i] = coeffs[i - 1] - coeffs[i] * xs[k];
        coeffs[0] = ys[k] - coeffs[0] * xs[k];
    }
    return coeffs;
}

} // namespace

modpoly_attempt modular_polynomial_at(unsigned N, long prec_bits)
{
    if (!supported_level(N))
        throw unsupported_level("modular_polynomial: level must be one of 1, 2, 3, 5, 7");
    modpoly_attempt out;
    if (N == 1) {
        out.poly.set(1, 0, 1);
        out.poly.set(0, 1, -1);
        out.ok = true;
        return out;
    }

    auto const w = static_cast<mpfr_prec_t>(prec_bits + 32);
    unsigned const samples = N + 3;
    std::vector<big_float> ys;                   // j(tau_s)
    std::vector<std::vector<big_float>> coeffs;  // per sample, X-coefficients
    for (unsigned s = 0; s < samples; ++s) {
        big_float y = big_float(w, std::string("1.05")) + big_float(w, std::string("0.05")) * static_cast<long>(s);
        big_complex tau(w);
        tau.im = y;
        ys.push_back(j_tau(tau, prec_bits).re);
        coeffs.push_back(sublattice_product(N, y, prec_bits));
    }

    std::vector<big_float> nodes(ys.begin(), ys.begin() + N + 2);
    out.ok = true;
    for (unsigned k = 0; k <= N + 1; ++k) {
        std::vector<big_float> vals;
        for (unsigned s = 0; s < N + 2; ++s)
            vals.push_back(coeffs[s][k]);
        auto poly_in_y = interpolate(nodes, vals);
        std::vector<mpz_class> rounded;
        for (unsigned l = 0; l < poly_in_y.size(); ++l) {
            big_float residual(w);
            rounded.push_back(poly_in_y[l].round(&residual));
            out.max_residual = std::max(out.max_residual, residual.to_double());
            out.poly.set(k, l, rounded.back());
        }
        /* check at the held-out sample */
        big_float const & Y = ys[N + 2];
        big_float acc(w);
        for (std::size_t l = rounded.size(); l-- > 0;)
            acc = acc * Y + big_float(w, rounded[l]);
        big_float diff = abs(acc - coeffs[N + 2][k]);
        if (!(diff.to_double() < 0.25))
            out.ok = false;
    }
    if (!(out.max_residual < 0.25))
        out.ok = false;
    if (out.poly.coeff(N + 1, 0) != 1 || out.poly.degree_x() != N + 1)
        out.ok = false;
    return out;
}

bivar_int_polynomial const & modular_polynomial(unsigned N)
{
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<bivar_int_polynomial const>> memo;
    if (!supported_level(N))
        throw unsupported_level("modular_polynomial: level must be one of 1, 2, 3, 5, 7");
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(N); it != memo.end())
            return *it->second;
    }
    long prec = 256 + 128L * N * N;
    for (int attempt = 0; attempt <= 4; ++attempt, prec *= 2) {
        auto r = modular_polynomial_at(N, prec);
        if (r.ok) {
            std::lock_guard lock(mutex);
            auto [it, inserted] =
                memo.emplace(N, std::make_unique<bivar_int_polynomial const>(std::move(r.poly)));
            return *it->second;
        }
    }
    throw precision_exhausted("modular_polynomial: rounding failed for N = " + std::to_string(N));
}

bool kronecker_congruence_check(unsigned p)
{
    if (p == 1 || !supported_level(p))
        throw invalid_argument("kronecker_congruence_check: p must be a prime in {2, 3, 5, 7}");
    auto const lhs = modular_polynomial(p).reduce_mod(p);

    /* (X - Y^p)(X^p - Y) = X^{p+1} - XY - X^p Y^p + Y^{p+1} */
    bivar_int_polynomial k;
    k.set(p + 1, 0, 1);
    k.set(1, 1, -1);
    k.set(p, p, -1);
    k.set(0, p + 1, 1);
    return lhs == k.reduce_mod(p);
}

} // namespace hcpkit
