#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/finitefield.hpp"
#include "hcpkit/modfunc.hpp"
#include "hcpkit/quadforms.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace hcpkit;

namespace {

class_polynomials & shared_source()
{
    static class_polynomials s;
    return s;
}

int_polynomial from_longs(std::vector<long long> const & v)
{
    std::vector<mpz_class> c;
    for (auto x : v)
        c.emplace_back(static_cast<long>(x));
    return int_polynomial(c);
}

} // namespace

TEST_CASE("class polynomials of small discriminants")
{
    CHECK(hilbert_class_polynomial(-3) == int_polynomial{0, 1});
    CHECK(hilbert_class_polynomial(-4) == int_polynomial{-1728, 1});
    CHECK(hilbert_class_polynomial(-7) == int_polynomial{3375, 1});
    CHECK(hilbert_class_polynomial(-8) == int_polynomial{-8000, 1});
    CHECK(hilbert_class_polynomial(-11) == int_polynomial{32768, 1});
    CHECK(hilbert_class_polynomial(-12) == int_polynomial{-54000, 1});
    CHECK(hilbert_class_polynomial(-15) == int_polynomial{-121287375, 191025, 1});
    CHECK(hilbert_class_polynomial(-23) ==
          int_polynomial(std::vector<mpz_class>{mpz_class("12771880859375"),
                                                mpz_class("-5151296875"), 3491750, 1}));
    CHECK_THROWS_AS(hilbert_class_polynomial(-5), invalid_argument);
}

TEST_CASE("class polynomials match the long double oracle")
{
    for (std::int64_t D = -3; D >= -40; --D) {
        if (!is_discriminant(D) || class_number(D) > 2)
            continue;
        CAPTURE(D);
        CHECK(hilbert_class_polynomial(D) == from_longs(oracle::small_class_polynomial(D)));
    }
}

TEST_CASE("the class polynomial is stable under more precision")
{
    for (std::int64_t D : {-15, -23, -71, -299, -420}) {
        auto const base = required_precision(D);
        auto const a = hilbert_class_polynomial_at(D, base);
        auto const b = hilbert_class_polynomial_at(D, 2 * base);
        REQUIRE(a.ok);
        REQUIRE(b.ok);
        CHECK(a.poly == b.poly);
        CHECK(a.max_residual < 0.25);
    }
    /* far too little precision cannot round correctly */
    CHECK_FALSE(hilbert_class_polynomial_at(-299, 64).ok);
}

TEST_CASE("class polynomials are monic, squarefree and pairwise coprime")
{
    std::vector<std::int64_t> Ds;
    for (std::int64_t D = -3; D >= -2000; D -= 37)
        for (std::int64_t d = D; d > D - 4; --d)
            if (is_discriminant(d)) {
                Ds.push_back(d);
                break;
            }
    for (auto D : Ds) {
        auto const & H = shared_source().get(D);
        REQUIRE(H.is_monic());
        REQUIRE(H.degree() == static_cast<int>(class_number(D)));
        REQUIRE(gcd(H, H.derivative()).degree() == 0);
    }
    for (std::size_t i = 0; i + 1 < Ds.size(); i += 3)
        CHECK(gcd(shared_source().get(Ds[i]), shared_source().get(Ds[i + 1])).degree() == 0);
}

TEST_CASE("roots mod an inert prime are supersingular")
{
    for (std::int64_t D = -3; D >= -300; --D) {
        if (!is_fundamental_discriminant(D))
            continue;
        for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
            if (kronecker(D, static_cast<std::int64_t>(p)) != -1)
                continue;
            auto const F = finite_field::make(p, 2);
            fq_poly const ss(F, supersingular_polynomial(p).coeffs());
            for (auto const & [r, mult] : roots_in(fq_poly::from_int(F, shared_source().get(D)), 2))
                REQUIRE(ss(r.value) == 0);
        }
    }
}

TEST_CASE("cache file format")
{
    int_polynomial const H{-121287375, 191025, 1};
    std::string const text = serialize_class_poly(-15, H);
    std::string const body = "HDPOLY 1\n-15\n2\n-121287375\n191025\n1\n";
    CHECK(text.substr(0, body.size()) == body);
    char crc[32];
    std::snprintf(crc, sizeof crc, "CRC64 %016llx\n",
                  static_cast<unsigned long long>(crc64_xz(body)));
    CHECK(text == body + crc);
    CHECK(parse_class_poly(-15, text) == H);
    CHECK(crc64_xz("123456789") == 0x995dc9bbdf1939faULL);
    CHECK_THROWS_AS(parse_class_poly(-15, body + "CRC64 0000000000000000\n"), corrupt_cache);
    CHECK_THROWS_AS(parse_class_poly(-23, text), corrupt_cache);
}

TEST_CASE("cache round trip, absence and truncation")
{
    temp_dir tmp;
    class_poly_cache cache(tmp.path / "hd");
    CHECK_FALSE(cache.load(-15).has_value());
    int_polynomial const H = hilbert_class_polynomial(-15);
    cache.store(-15, H);
    CHECK(cache.file_for(-15).filename() == "hd_15.txt");
    auto const back = cache.load(-15);
    REQUIRE(back.has_value());
    CHECK(*back == H);

    std::string content;
    {
        std::ifstream in(cache.file_for(-15), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    {
        std::ofstream out(cache.file_for(-15), std::ios::binary | std::ios::trunc);
        out << content.substr(0, content.size() / 2);
    }
    CHECK_THROWS_AS(cache.load(-15), corrupt_cache);

    /* the memoizing source recomputes a corrupt entry */
    class_polynomials source(tmp.path / "hd");
    CHECK(source.get(-15) == H);
    CHECK(*cache.load(-15) == H);
}

TEST_CASE("class number cap")
{
    class_polynomials small(std::nullopt, 2);
    CHECK(small.get(-15).degree() == 2);
    CHECK_THROWS_AS(small.get(-23), cap_exceeded);
}

TEST_CASE("class polynomial congruence examples")
{
    auto r = verify_prop23(-3, 2, 1, shared_source());
    CHECK(r.k_formula == 1);
    CHECK(r.congruence_holds);
    CHECK(r.k_consistent);

    r = verify_prop23(-7, 3, 1, shared_source());
    CHECK(r.k_formula == 4);
    CHECK(r.h_Dp == 4);
    CHECK(r.congruence_holds);

    r = verify_prop23(-4, 3, 1, shared_source());
    CHECK(r.k_formula == 2);
    CHECK(r.congruence_holds);

    class_polynomials small(std::nullopt, 3);
    CHECK_THROWS_AS(verify_prop23(-7, 3, 1, small), cap_exceeded);
}
