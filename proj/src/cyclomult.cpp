#include "hcpkit/cyclomult.hpp"

#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "hcpkit/arith.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/finitefield.hpp"

namespace hcpkit {

int_polynomial const & cyclotomic_polynomial(std::uint64_t n)
{
    static std::mutex mutex;
    static std::map<std::uint64_t, std::unique_ptr<int_polynomial const>> memo;
    if (n < 1)
        throw invalid_argument("cyclotomic_polynomial: n must be >= 1");
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(n); it != memo.end())
            return *it->second;
    }
    int_polynomial r = int_polynomial::monomial(static_cast<unsigned>(n)) - int_polynomial{1};
    for (auto d : divisors(n)) {
        if (d == n)
            continue;
        int_polynomial q, rem;
        divrem_monic(r, cyclotomic_polynomial(d), q, rem);
        if (!rem.is_zero())
            throw error("cyclotomic_polynomial: inexact division");
        r = std::move(q);
    }
    std::lock_guard lock(mutex);
    auto [it, inserted] = memo.emplace(n, std::make_unique<int_polynomial const>(std::move(r)));
    return *it->second;
}

namespace {

constexpr std::uint64_t infinite_valuation = std::numeric_limits<std::uint64_t>::max();

std::uint64_t valuation(mpz_class x, std::uint64_t p)
{
    if (x == 0)
        return infinite_valuation;
    return mpz_remove(x.get_mpz_t(), x.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t());
}

/* v_p(a^d - 1), a^d != 1 */
std::uint64_t valuation_of_power_minus_one(mpz_class const & a, std::uint64_t d, std::uint64_t p)
{
    mpz_class const P(static_cast<unsigned long>(p));
    for (unsigned long E = 32;; E *= 2) {
        mpz_class mod, r;
        mpz_pow_ui(mod.get_mpz_t(), P.get_mpz_t(), E);
        mpz_class base = a;
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), d, mod.get_mpz_t());
        r -= 1;
        if (r < 0)
            r += mod;
        if (r != 0)
            return valuation(r, p);
    }
}

} // namespace

std::uint64_t cyclotomic_value_valuation(std::uint64_t n, mpz_class const & a, std::uint64_t p)
{
    if (n < 1)
        throw invalid_argument("cyclotomic_value_valuation: n must be >= 1");
    if (abs(a) <= 1)
        return valuation(cyclotomic_polynomial(n)(a), p);
    std::int64_t v = 0;
    for (auto d : divisors(n)) {
        int mu = moebius(n / d);
        if (mu == 0)
            continue;
        v += mu * static_cast<std::int64_t>(valuation_of_power_minus_one(a, d, p));
    }
    return static_cast<std::uint64_t>(v);
}

bool lemma44_check(mpz_class const & a, std::uint64_t p, std::uint64_t k, std::uint64_t l_max)
{
    if (!is_prime(p))
        throw invalid_argument("lemma44_check: p must be prime");
    if (mod_ui(a, p) == 0)
        throw invalid_argument("lemma44_check: p divides a");
    if (k < 1 || k % p == 0)
        throw invalid_argument("lemma44_check: k must be positive and coprime to p");

    bool const has_order = multiplicative_order(a, p) == k;
    bool some = false, all = true;
    std::uint64_t n = k;
    for (std::uint64_t l = 0; l <= l_max; ++l, n *= p) {
        bool const divisible = cyclotomic_value_valuation(n, a, p) > 0;
        some = some || divisible;
        all = all && divisible;
    }
    return has_order == some && some == all;
}

bool cyclotomic_congruence_check(std::uint64_t k, std::uint64_t p, std::uint64_t l)
{
    if (!is_prime(p) || k < 1 || k % p == 0 || l < 1)
        throw invalid_argument("cyclotomic_congruence_check: need p prime, p not dividing k, l >= 1");
    std::uint64_t pl = 1;
    for (std::uint64_t i = 0; i < l; ++i)
        pl *= p;
    auto Fp = finite_field::make(p, 1);
    fq_poly lhs = fq_poly::from_int(Fp, cyclotomic_polynomial(k * pl));
    fq_poly rhs = pow(fq_poly::from_int(Fp, cyclotomic_polynomial(k)), (p - 1) * (pl / p));
    return lhs == rhs;
}

} // namespace hcpkit
