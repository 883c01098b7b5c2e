#include "hcpkit/classpoly.hpp"

#include <boost/crc.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "hcpkit/arith.hpp"
#include "hcpkit/bigfloat.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/finitefield.hpp"
#include "hcpkit/modfunc.hpp"
#include "hcpkit/quadforms.hpp"

namespace hcpkit {

namespace {

using complex_poly = std::vector<big_complex>; // constant term first

complex_poly multiply(complex_poly const & a, complex_poly const & b, mpfr_prec_t w)
{
    complex_poly r(a.size() + b.size() - 1, big_complex(w));
    big_complex t(w);
    big_float t1(w), t2(w);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            mul_into(t, a[i], b[j], t1, t2);
            r[i + j] += t;
        }
    return r;
}

/* balanced product tree over [lo, hi) */
complex_poly product_tree(std::vector<complex_poly> const & leaves, std::size_t lo, std::size_t hi,
                          mpfr_prec_t w)
{
    if (hi - lo == 1)
        return leaves[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    return multiply(product_tree(leaves, lo, mid, w), product_tree(leaves, mid, hi, w), w);
}

} // namespace

class_poly_attempt hilbert_class_polynomial_at(std::int64_t D, long prec_bits)
{
    auto const forms = reduced_forms(D);
    auto const w = static_cast<mpfr_prec_t>(prec_bits + 32);

    big_float sqrt_absD = sqrt(big_float(w, static_cast<long>(-D)));
    std::vector<complex_poly> leaves;
    leaves.reserve(forms.size());
    for (auto const & f : forms) {
        big_complex tau(w);
        big_float two_a(w, static_cast<long>(2 * f.a));
        tau.re = big_float(w, static_cast<long>(-f.b)) / two_a;
        tau.im = sqrt_absD / two_a;
        big_complex j = j_tau(tau, prec_bits);
        big_complex one(w);
        mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
        leaves.push_back({-j, one});
    }
    complex_poly prod = product_tree(leaves, 0, leaves.size(), w);

    class_poly_attempt out;
    out.ok = true;
    out.max_imag_log2 = -std::numeric_limits<double>::infinity();
    std::vector<mpz_class> coeffs;
    coeffs.reserve(prod.size());
    for (auto const & c : prod) {
        big_float residual(w);
        coeffs.push_back(c.re.round(&residual));
        double res = residual.to_double();
        out.max_residual = std::max(out.max_residual, res);
        out.max_imag_log2 = std::max(out.max_imag_log2, c.im.log2_abs());
    }
    if (!(out.max_residual < 0.25) || !(out.max_imag_log2 < -2))
        out.ok = false;
    out.poly = int_polynomial(std::move(coeffs));
    if (!out.poly.is_monic() || out.poly.degree() != static_cast<int>(forms.size()))
        out.ok = false;
    return out;
}

int_polynomial hilbert_class_polynomial(std::int64_t D)
{
    if (!is_discriminant(D))
        throw invalid_argument("hilbert_class_polynomial: not a negative discriminant");
    long const base = required_precision(D);
    long const margin = 64 + 8 * static_cast<long>(class_number(D));
    for (int attempt = 0; attempt <= 3; ++attempt) {
        long prec = base + margin * ((1L << attempt) - 1);
        auto r = hilbert_class_polynomial_at(D, prec);
        if (r.ok)
            return std::move(r.poly);
    }
    throw precision_exhausted("hilbert_class_polynomial: rounding failed for D = " +
                              std::to_string(D));
}

/* ---- disk cache ---- */

std::uint64_t crc64_xz(std::string const & bytes)
{
    boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, ~0ULL, ~0ULL, true, true> crc;
    crc.process_bytes(bytes.data(), bytes.size());
    return crc.checksum();
}

std::string serialize_class_poly(std::int64_t D, int_polynomial const & H)
{
    std::ostringstream os;
    os << "HDPOLY 1\n" << D << '\n' << H.degree() << '\n';
    for (auto const & c : H.coeffs())
        os << c.get_str() << '\n';
    std::string body = os.str();
    char tail[32];
    std::snprintf(tail, sizeof tail, "CRC64 %016llx\n",
                  static_cast<unsigned long long>(crc64_xz(body)));
    return body + tail;
}

int_polynomial parse_class_poly(std::int64_t D, std::string const & text)
{
    auto fail = [&](char const * why) -> corrupt_cache {
        return corrupt_cache("class polynomial cache for D = " + std::to_string(D) + ": " + why);
    };
    auto const crc_pos = text.rfind("CRC64 ");
    if (crc_pos == std::string::npos || (crc_pos > 0 && text[crc_pos - 1] != '\n'))
        throw fail("missing checksum line");
    std::string body = text.substr(0, crc_pos);
    std::string crc_line = text.substr(crc_pos + 6);
    if (!crc_line.empty() && crc_line.back() == '\n')
        crc_line.pop_back();
    char expected[32];
    std::snprintf(expected, sizeof expected, "%016llx",
                  static_cast<unsigned long long>(crc64_xz(body)));
    if (crc_line != expected)
        throw fail("checksum mismatch");

    std::istringstream is(body);
    std::string line;
    if (!std::getline(is, line) || line != "HDPOLY 1")
        throw fail("bad header");
    if (!std::getline(is, line) || line != std::to_string(D))
        throw fail("discriminant mismatch");
    if (!std::getline(is, line))
        throw fail("missing degree");
    long h = 0;
    try {
        h = std::stol(line);
    } catch (std::exception const &) {
        throw fail("bad degree");
    }
    if (h < 0 || static_cast<std::uint64_t>(h) != class_number(D))
        throw fail("degree is not h(D)");
    std::vector<mpz_class> coeffs;
    while (std::getline(is, line)) {
        mpz_class c;
        if (c.set_str(line, 10) != 0)
            throw fail("bad coefficient");
        coeffs.push_back(std::move(c));
    }
    int_polynomial H(std::move(coeffs));
    if (H.degree() != h || !H.is_monic())
        throw fail("polynomial is not monic of degree h(D)");
    return H;
}

class_poly_cache::class_poly_cache(std::filesystem::path directory) : dir(std::move(directory))
{
}

std::filesystem::path class_poly_cache::file_for(std::int64_t D) const
{
    return dir / ("hd_" + std::to_string(D < 0 ? -D : D) + ".txt");
}

void class_poly_cache::store(std::int64_t D, int_polynomial const & H) const
{
    static std::atomic<unsigned long> counter{0};
    std::filesystem::create_directories(dir);
    auto const target = file_for(D);
    std::ostringstream tmpname;
    tmpname << target.filename().string() << ".tmp." << std::this_thread::get_id() << '.'
            << counter++;
    auto const tmp = dir / tmpname.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << serialize_class_poly(D, H);
        if (!out)
            throw error("class_poly_cache: cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

std::optional<int_polynomial> class_poly_cache::load(std::int64_t D) const
{
    auto const path = file_for(D);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_class_poly(D, ss.str());
}

/* ---- memoising source ---- */

class_polynomials::class_polynomials(std::optional<std::filesystem::path> cache_dir,
                                     std::uint64_t h_cap)
    : cap(h_cap)
{
    if (cache_dir)
        disk.emplace(*cache_dir);
}

int_polynomial const & class_polynomials::get(std::int64_t D)
{
    {
        std::lock_guard lock(mutex);
        if (auto it = memo.find(D); it != memo.end())
            return *it->second;
    }
    if (!is_discriminant(D))
        throw invalid_argument("class polynomial requested for non-discriminant " +
                               std::to_string(D));
    auto const h = class_number(D);
    if (h > cap)
        throw cap_exceeded("h(" + std::to_string(D) + ") = " + std::to_string(h) +
                           " exceeds cap " + std::to_string(cap));

    std::optional<int_polynomial> H;
    if (disk) {
        try {
            H = disk->load(D);
        } catch (corrupt_cache const &) {
            H.reset();
        }
    }
    if (!H) {
        H = hilbert_class_polynomial(D);
        if (disk)
            disk->store(D, *H);
    }
    std::lock_guard lock(mutex);
    auto [it, inserted] =
        memo.emplace(D, std::make_shared<int_polynomial const>(std::move(*H)));
    return *it->second;
}

/* ---- H_{Dp^{2n}} = H_D^k mod p ---- */

prop23_report verify_prop23(std::int64_t D, std::uint64_t p, std::uint64_t n,
                            class_polynomials & source)
{
    if (!is_discriminant(D))
        throw invalid_argument("verify_prop23: not a negative discriminant");
    if (!is_prime(p) || n < 1)
        throw invalid_argument("verify_prop23: need p prime and n >= 1");

    prop23_report r;
    r.D = D;
    r.p = p;
    r.n = n;
    std::int64_t Dn = D;
    for (std::uint64_t i = 0; i < 2 * n; ++i) {
        if (Dn < std::numeric_limits<std::int64_t>::min() / static_cast<std::int64_t>(p))
            throw cap_exceeded("verify_prop23: D p^{2n} overflows");
        Dn *= static_cast<std::int64_t>(p);
    }
    r.h_D = class_number(D);
    r.h_Dp = class_number(Dn);
    if (r.h_Dp > source.h_cap())
        throw cap_exceeded("verify_prop23: h(" + std::to_string(Dn) + ") = " +
                           std::to_string(r.h_Dp) + " exceeds cap");

    mpz_class pn1 = 1;
    for (std::uint64_t i = 1; i < n; ++i)
        pn1 *= static_cast<unsigned long>(p);
    mpz_class numer = 2 * pn1 * (static_cast<long>(p) - kronecker(D, static_cast<std::int64_t>(p)));
    r.k_formula = mpq_class(numer, unit_group_order(D));
    r.k_formula.canonicalize();
    mpq_class ratio(static_cast<unsigned long>(r.h_Dp), static_cast<unsigned long>(r.h_D));
    ratio.canonicalize();
    r.k_consistent = (r.k_formula == ratio);

    if (r.k_formula.get_den() == 1 && r.k_formula > 0) {
        auto Fp = finite_field::make(p, 1);
        fq_poly lhs = fq_poly::from_int(Fp, source.get(Dn));
        fq_poly rhs = pow(fq_poly::from_int(Fp, source.get(D)), r.k_formula.get_num().get_ui());
        r.congruence_holds = (lhs == rhs);
    }
    return r;
}

} // namespace hcpkit
