#include "hcpkit/arith.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hcpkit/errors.hpp"

namespace hcpkit {

mpz_class factorization::value() const
{
    mpz_class r = cofactor;
    for (auto const & [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        r *= pe;
    }
    return r;
}

int kronecker(mpz_class const & D, mpz_class const & n_in)
{
    if (n_in < 1)
        throw invalid_argument("kronecker: n must be >= 1");
    mpz_class a = D;
    mpz_class n = n_in;
    int result = 1;

    /* strip the 2-part of n using the D mod 8 rule */
    auto twos = mpz_scan1(n.get_mpz_t(), 0);
    if (twos > 0) {
        if (mpz_even_p(a.get_mpz_t()))
            return 0;
        unsigned long r8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
        if ((twos & 1) && (r8 == 3 || r8 == 5))
            result = -result;
        n >>= twos;
    }
    if (n == 1)
        return result;

    /* Jacobi symbol (a/n), n odd > 1 */
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    while (a != 0) {
        auto t = mpz_scan1(a.get_mpz_t(), 0);
        if (t > 0) {
            unsigned long r8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if ((t & 1) && (r8 == 3 || r8 == 5))
                result = -result;
            a >>= t;
        }
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            result = -result;
        std::swap(a, n);
        mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
    }
    return n == 1 ? result : 0;
}

int kronecker(std::int64_t D, std::int64_t n)
{
    return kronecker(mpz_class(static_cast<long>(D)), mpz_class(static_cast<long>(n)));
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m)
{
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::tie(t, nt) = std::make_pair(nt, t - q * nt);
        std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1)
        throw invalid_argument("invmod: not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::uint64_t mod_ui(mpz_class const & x, std::uint64_t m)
{
    return mpz_fdiv_ui(x.get_mpz_t(), m);
}

namespace {

bool miller_rabin_round(mpz_class const & n, mpz_class const & nm1,
                        mpz_class const & d, unsigned long s, mpz_class const & base)
{
    mpz_class x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

constexpr std::uint64_t small_primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace

bool is_prime(mpz_class const & n)
{
    if (n < 2)
        return false;
    for (auto p : small_primes) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    mpz_class nm1 = n - 1;
    unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
    mpz_class d = nm1 >> s;

    /* these twelve bases are deterministic below 3.3e24 > 2^64 */
    for (auto p : small_primes)
        if (!miller_rabin_round(n, nm1, d, s, mpz_class(static_cast<unsigned long>(p))))
            return false;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64)
        return true;

    /* 64 further rounds: error < 4^-64 = 2^-128 */
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(mpz_class(0x5eed));
    mpz_class range = n - 3;
    for (int i = 0; i < 64; ++i) {
        mpz_class base = rng.get_z_range(range) + 2;
        if (!miller_rabin_round(n, nm1, d, s, base))
            return false;
    }
    return true;
}

bool is_prime(std::uint64_t n)
{
    return is_prime(mpz_class(static_cast<unsigned long>(n)));
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    if (n < 2)
        return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i])
            continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i)
            composite[j] = true;
    }
    return out;
}

namespace {

/* Brent's variant of Pollard rho; returns a nontrivial factor or 0. */
mpz_class pollard_rho(mpz_class const & n, unsigned long c, unsigned long budget)
{
    mpz_class y = 2, x, ys, q = 1, g = 1, t;
    unsigned long r = 1, iters = 0;
    constexpr unsigned long m = 128;
    auto f = [&](mpz_class & v) {
        v = v * v + c;
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (unsigned long i = 0; i < r; ++i)
            f(y);
        unsigned long k = 0;
        do {
            ys = y;
            for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                f(y);
                t = x - y;
                q = q * abs(t) % n;
            }
            g = gcd(q, n);
            k += m;
            iters += m;
        } while (k < r && g == 1 && iters < budget);
        r *= 2;
    } while (g == 1 && iters < budget);
    if (g == n) {
        do {
            f(ys);
            t = x - ys;
            g = gcd(abs(t), n);
        } while (g == 1);
    }
    if (g == 1 || g == n)
        return 0;
    return g;
}

void split_composite(mpz_class const & n, std::map<mpz_class, unsigned> & found,
                     mpz_class & cofactor)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++found[n];
        return;
    }
    constexpr unsigned long budget = 1ul << 20;
    for (unsigned long c = 1; c <= 8; ++c) {
        mpz_class d = pollard_rho(n, c, budget);
        if (d != 0) {
            split_composite(d, found, cofactor);
            split_composite(n / d, found, cofactor);
            return;
        }
    }
    cofactor *= n;
}

} // namespace

factorization factorize(mpz_class const & n, std::uint64_t bound)
{
    if (n == 0)
        throw invalid_argument("factorize: n must be nonzero");
    if (bound < 2)
        throw invalid_argument("factorize: bound must be >= 2");

    std::map<mpz_class, unsigned> found;
    mpz_class r = abs(n);

    auto strip = [&](std::uint64_t p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
            mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
            ++e;
        }
        if (e)
            found[mpz_class(static_cast<unsigned long>(p))] += e;
    };

    strip(2);
    for (std::uint64_t p = 3; p <= bound && r > 1; p += 2) {
        if (mpz_cmp_ui(r.get_mpz_t(), p * p) < 0)
            break; // r is prime
        strip(p);
    }

    factorization out;
    if (r > 1)
        split_composite(r, found, out.cofactor);
    for (auto & [p, e] : found)
        out.factors.emplace_back(p, e);
    return out;
}

bool is_squarefree(std::uint64_t n)
{
    if (n == 0)
        return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return false;
    }
    return true;
}

bool is_discriminant(std::int64_t D)
{
    if (D >= 0)
        return false;
    auto r = ((D % 4) + 4) % 4;
    return r == 0 || r == 1;
}

bool is_fundamental_discriminant(std::int64_t D)
{
    if (!is_discriminant(D))
        return false;
    auto const m = static_cast<std::uint64_t>(-D);
    if (((D % 4) + 4) % 4 == 1)
        return is_squarefree(m);
    /* D = 4d with d = D/4 squarefree and d = 2, 3 mod 4 */
    std::int64_t d = D / 4;
    auto r = ((d % 4) + 4) % 4;
    return (r == 2 || r == 3) && is_squarefree(m / 4);
}

std::vector<std::uint64_t> divisors(std::uint64_t n)
{
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        small.push_back(d);
        if (d != n / d)
            large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        while (n % p == 0)
            n /= p;
        r -= r / p;
    }
    if (n > 1)
        r -= r / n;
    return r;
}

int moebius(std::uint64_t n)
{
    int m = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        m = -m;
    }
    return n > 1 ? -m : m;
}

std::uint64_t multiplicative_order(mpz_class const & a, std::uint64_t p)
{
    std::uint64_t r = mod_ui(a, p);
    if (r == 0)
        throw invalid_argument("multiplicative_order: p divides a");
    std::uint64_t k = p - 1;
    auto f = factorize(mpz_class(static_cast<unsigned long>(k)), 1u << 16);
    for (auto const & [q, e] : f.factors) {
        auto qq = q.get_ui();
        for (unsigned i = 0; i < e; ++i) {
            if (powmod(r, k / qq, p) != 1)
                break;
            k /= qq;
        }
    }
    return k;
}

bool support_subset_int(mpz_class const & x, mpz_class const & y)
{
    if (x == 0)
        return y == 0;
    mpz_class z = abs(x);
    mpz_class const ay = abs(y);
    for (;;) {
        mpz_class g = gcd(z, ay);
        if (g == 1)
            break;
        /* y == 0: g == z, z collapses to 1 */
        mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    }
    return z == 1;
}

} // namespace hcpkit
