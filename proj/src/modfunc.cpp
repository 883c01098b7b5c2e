#include "hcpkit/modfunc.hpp"

#include <cmath>
#include <vector>

#include "hcpkit/errors.hpp"
#include "hcpkit/quadforms.hpp"

namespace hcpkit {

namespace {

/* sigma_3(n) for 0 <= n <= N */
std::vector<unsigned long> sigma3_table(std::size_t N)
{
    std::vector<unsigned long> s(N + 1, 0);
    for (std::size_t d = 1; d <= N; ++d) {
        unsigned long d3 = static_cast<unsigned long>(d) * d * d;
        for (std::size_t m = d; m <= N; m += d)
            s[m] += d3;
    }
    return s;
}

} // namespace

big_complex j_tau(big_complex const & tau, long prec_bits)
{
    if (prec_bits < 64)
        throw invalid_argument("j_tau: prec_bits must be >= 64");
    double const im = tau.im.to_double();
    if (!(im > 0.4))
        throw invalid_argument("j_tau: Im(tau) must exceed 0.4");

    mpfr_prec_t const w = prec_bits + 32;

    /* q = exp(-2 pi Im tau) * (cos 2 pi Re tau + i sin 2 pi Re tau) */
    big_float two_pi = big_float::pi(w) * 2;
    big_float mod(w), arg(w);
    mpfr_mul(mod.get(), two_pi.get(), tau.im.get(), MPFR_RNDN);
    mpfr_neg(mod.get(), mod.get(), MPFR_RNDN);
    mpfr_exp(mod.get(), mod.get(), MPFR_RNDN);
    mpfr_mul(arg.get(), two_pi.get(), tau.re.get(), MPFR_RNDN);
    big_complex q(w);
    mpfr_sin_cos(q.im.get(), q.re.get(), arg.get(), MPFR_RNDN);
    mpfr_mul(q.re.get(), q.re.get(), mod.get(), MPFR_RNDN);
    mpfr_mul(q.im.get(), q.im.get(), mod.get(), MPFR_RNDN);

    double const log2q = mod.log2_abs();
    if (!(log2q < 0))
        throw invalid_argument("j_tau: |q| >= 1");
    auto const terms = static_cast<std::size_t>(
        std::ceil(static_cast<double>(prec_bits + 32) / -log2q)) + 1;
    auto const sigma3 = sigma3_table(terms);

    big_complex qn = q;             // q^n
    big_complex e4(w), prod(w);     // sum sigma3(n) q^n, prod (1 - q^n)
    mpfr_set_ui(prod.re.get(), 1, MPFR_RNDN);
    big_complex factor(w), tmp(w);
    big_float t1(w), t2(w);
    for (std::size_t n = 1; n <= terms; ++n) {
        mpfr_mul_ui(t1.get(), qn.re.get(), sigma3[n], MPFR_RNDN);
        mpfr_add(e4.re.get(), e4.re.get(), t1.get(), MPFR_RNDN);
        mpfr_mul_ui(t1.get(), qn.im.get(), sigma3[n], MPFR_RNDN);
        mpfr_add(e4.im.get(), e4.im.get(), t1.get(), MPFR_RNDN);

        mpfr_ui_sub(factor.re.get(), 1, qn.re.get(), MPFR_RNDN);
        mpfr_neg(factor.im.get(), qn.im.get(), MPFR_RNDN);
        mul_into(prod, prod, factor, t1, t2);

        mul_into(qn, qn, q, t1, t2);
    }
    /* E4 = 1 + 240 * sum */
    mpfr_mul_ui(e4.re.get(), e4.re.get(), 240, MPFR_RNDN);
    mpfr_mul_ui(e4.im.get(), e4.im.get(), 240, MPFR_RNDN);
    mpfr_add_ui(e4.re.get(), e4.re.get(), 1, MPFR_RNDN);

    /* Delta = q * prod^24 */
    big_complex delta = prod;
    for (int i = 0; i < 3; ++i)
        mul_into(delta, delta, delta, t1, t2);     // prod^8
    big_complex p8 = delta;
    mul_into(delta, delta, delta, t1, t2);         // prod^16
    mul_into(delta, delta, p8, t1, t2);            // prod^24
    mul_into(delta, delta, q, t1, t2);

    big_complex e4cube(w);
    mul_into(e4cube, e4, e4, t1, t2);
    mul_into(e4cube, e4cube, e4, t1, t2);
    e4cube /= delta;
    return e4cube;
}

long required_precision(std::int64_t D)
{
    auto const forms = reduced_forms(D);
    big_float v(256, static_cast<long>(-D));
    v = sqrt(v) * big_float::pi(256);
    v *= big_float(256, inv_a_sum(D));
    v /= log(big_float(256, 2L));
    mpfr_ceil(v.get(), v.get());
    return static_cast<long>(mpfr_get_si(v.get(), MPFR_RNDN)) + 64 +
           8 * static_cast<long>(forms.size());
}

big_complex reduce_to_fundamental_domain(big_complex tau)
{
    if (!(tau.im.sign() > 0))
        throw invalid_argument("reduce_to_fundamental_domain: Im(tau) must be positive");
    auto const w = tau.precision();
    big_float n(w);
    for (int iter = 0; iter < 10000; ++iter) {
        /* translate Re tau into [-1/2, 1/2] */
        mpfr_round(n.get(), tau.re.get());
        mpfr_sub(tau.re.get(), tau.re.get(), n.get(), MPFR_RNDN);
        big_float nrm = tau.norm();
        if (mpfr_cmp_ui(nrm.get(), 1) >= 0)
            return tau;
        /* tau <- -1/tau = -conj(tau) / |tau|^2 */
        mpfr_neg(tau.re.get(), tau.re.get(), MPFR_RNDN);
        mpfr_div(tau.re.get(), tau.re.get(), nrm.get(), MPFR_RNDN);
        mpfr_div(tau.im.get(), tau.im.get(), nrm.get(), MPFR_RNDN);
    }
    throw precision_exhausted("reduce_to_fundamental_domain: no convergence");
}

} // namespace hcpkit
