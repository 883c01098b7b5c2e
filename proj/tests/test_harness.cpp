#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/harness.hpp"

using namespace hcpkit;

namespace {

class_polynomials & source()
{
    static class_polynomials s;
    return s;
}

struct collector
{
    std::vector<experiment_record> rows;
    record_sink sink()
    {
        return [this](experiment_record const & r) { rows.push_back(r); };
    }
};

} // namespace

TEST_CASE("csv and json writers")
{
    std::ostringstream csv;
    {
        auto w = make_writer(output_format::csv, csv);
        w->write({"x", -15, 2, "a,b", "q\"t", "1.5", true});
        w->write({"y", std::nullopt, std::nullopt, "", "", "v", std::nullopt});
        w->finish();
    }
    CHECK(csv.str() == "experiment,D,h,param1,param2,value,pass\n"
                       "x,-15,2,\"a,b\",\"q\"\"t\",1.5,true\n"
                       "y,,,,,v,\n");

    std::ostringstream js;
    {
        auto w = make_writer(output_format::json, js);
        w->write({"x", -15, 2, "p", "q", "1", false});
        w->write({"y", std::nullopt, std::nullopt, "", "", "v", std::nullopt});
        w->finish();
    }
    auto const parsed = nlohmann::json::parse(js.str());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["D"] == -15);
    CHECK(parsed[0]["pass"] == false);
    CHECK(parsed[1]["D"].is_null());

    std::ostringstream empty;
    make_writer(output_format::json, empty)->finish();
    CHECK(nlohmann::json::parse(empty.str()).empty());
}

TEST_CASE("parsing")
{
    auto f = parse_fq_poly("F2:1,1,1");
    CHECK(f.F().size() == 2);
    CHECK(f.coeffs() == std::vector<std::uint64_t>{1, 1, 1});
    f = parse_fq_poly("F3^2:4,1");
    CHECK(f.F().size() == 9);
    CHECK(f.coeffs() == std::vector<std::uint64_t>{4, 1});
    f = parse_fq_poly("F5:-1,0,6");
    CHECK(f.coeffs() == std::vector<std::uint64_t>{4, 0, 1});
    CHECK(parse_fq_poly("0,1", 7).F().size() == 7);
    CHECK_THROWS_AS(parse_fq_poly("F4:1,1"), invalid_argument);
    CHECK_THROWS_AS(parse_fq_poly("G2:1"), invalid_argument);
    CHECK_THROWS_AS(parse_fq_poly("F2:1,,1"), invalid_argument);
    CHECK_THROWS_AS(parse_fq_poly("F3^2:9"), invalid_argument);
    CHECK_THROWS_AS(parse_fq_poly("F3:1,1", 2), field_mismatch);
    CHECK_THROWS_AS(parse_fq_poly("1,1"), invalid_argument);

    CHECK(parse_rational("1/2") == mpq_class(1, 2));
    CHECK(parse_rational("-6/4") == mpq_class(-3, 2));
    CHECK_THROWS_AS(parse_rational("x"), invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), invalid_argument);
}

TEST_CASE("ordered parallel map keeps input order")
{
    std::vector<int> items(37);
    for (int i = 0; i < 37; ++i)
        items[i] = i;
    std::vector<int> out;
    ordered_parallel_for(items, 4, [](int x) { return x * x; }, [&](int y) { out.push_back(y); });
    REQUIRE(out.size() == 37);
    for (int i = 0; i < 37; ++i)
        CHECK(out[i] == i * i);
    CHECK_THROWS_AS(ordered_parallel_for(
                        items, 3,
                        [](int x) {
                            if (x == 5)
                                throw not_found("x");
                            return x;
                        },
                        [](int) {}),
                    not_found);
}

TEST_CASE("integer singular moduli")
{
    auto const & l = integer_singular_moduli(source());
    CHECK(l.size() == 13);
    CHECK(is_integer_singular_modulus(0, source()));
    CHECK(is_integer_singular_modulus(1728, source()));
    CHECK(is_integer_singular_modulus(mpz_class("-262537412640768000"), source()));
    CHECK_FALSE(is_integer_singular_modulus(2, source()));
}

TEST_CASE("gcd growth over the rationals")
{
    CHECK_THROWS_AS(gcd_growth_rational(2, 4, 5, 100, source()), precondition_failed);
    CHECK_THROWS_AS(gcd_growth_rational(0, 2, 2, 100, source()), precondition_failed);
    CHECK_THROWS_AS(gcd_growth_rational(2, 3, 2, 100, source()), precondition_failed);

    collector c;
    auto const s = gcd_growth_rational(2, 4, 2, 300, source(), c.sink());
    REQUIRE(c.rows.size() == s.rows + 1);
    CHECK(c.rows.back().experiment == "gcd_growth_rational_summary");
    CHECK(std::abs(s.target - std::log(2.0)) < 1e-12);
    for (std::size_t i = 0; i + 1 < c.rows.size(); ++i) {
        auto const D = *c.rows[i].D;
        CHECK(is_fundamental_discriminant(D));
        CHECK(kronecker(D, 2) == -1);
    }

    double prev = 0;
    for (std::int64_t cap : {100, 200, 400}) {
        auto const t = gcd_growth_rational(2, 4, 2, cap, source());
        CHECK(t.max_r >= prev);
        prev = t.max_r;
    }

    /* a = b: r_D = log|H_D(a)| / h(D) */
    collector same;
    gcd_growth_rational(2, 2, 2, 60, source(), same.sink());
    for (std::size_t i = 0; i + 1 < same.rows.size(); ++i) {
        auto const & H = source().get(*same.rows[i].D);
        mpz_class const v = abs(H(2));
        double const expect = std::log(v.get_d()) / H.degree();
        CHECK(std::abs(std::stod(same.rows[i].value) - expect) < 1e-5);
    }
}

TEST_CASE("modular support scans")
{
    CHECK(support_scan_modular(7, 7, 300, source()).empty());
    auto const v = support_scan_modular(0, 1728, 12, source());
    REQUIRE_FALSE(v.empty());
    CHECK(v.front().index == -3);
    CHECK(v.front().witness == "5");
    CHECK_FALSE(support_scan_modular(2, 4, 200, source()).empty());

    /* p | H_D(j) with p not dividing D forces p | H_{Dp^2}(j) */
    for (std::int64_t D = -3; D >= -60; --D) {
        if (!is_discriminant(D))
            continue;
        mpz_class const x = source().get(D)(2);
        for (std::int64_t p : {3, 5, 7}) {
            if (D % p == 0 || x % p != 0)
                continue;
            CHECK(source().get(D * p * p)(2) % p == 0);
        }
    }
}

TEST_CASE("support witnesses")
{
    CHECK(support_witness(15, 3) == "5");
    CHECK(support_witness(0, 6) == "5");
    CHECK(support_witness(8, 2) == "");
    mpz_class const big = mpz_class("1000000000039") * mpz_class("1000000000061");
    auto const w = support_witness(big, 1, 100);
    CHECK((w == "1000000000039" || w == "1000000000061" ||
           w == "composite residue " + big.get_str()));
}

TEST_CASE("cyclotomic and multiplicative scans")
{
    auto v = support_scan_cyclotomic(2, 4, 50, {});
    bool found = false;
    for (auto const & x : v)
        if (x.index == 4) {
            found = true;
            CHECK(x.witness == "5");
        }
    CHECK(found);
    CHECK(support_scan_cyclotomic(2, 2, 50, {}).empty());
    CHECK(support_scan_cyclotomic(2, mpq_class(1, 2), 50, {2}).empty());
    CHECK_THROWS_AS(support_scan_cyclotomic(0, 2, 5, {}), precondition_failed);

    CHECK(support_scan_multiplicative(2, 8, 200, {}).empty());
    v = support_scan_multiplicative(2, 3, 20, {});
    REQUIRE_FALSE(v.empty());
    bool seven = false;
    for (auto const & x : v)
        seven = seven || (x.index == 3 && x.witness == "7");
    CHECK(seven);
    CHECK_FALSE(support_scan_multiplicative(4, 2, 5, {}).empty());
}

TEST_CASE("polynomial support")
{
    CHECK_FALSE(support_subset_poly({-1, 0, 1}, {-1, 1}));
    CHECK(support_subset_poly(int_polynomial{-1, 1}.pow(3), {-1, 1}));
    CHECK(support_subset_poly(int_polynomial::monomial(3) - int_polynomial{1},
                              int_polynomial::monomial(6) - int_polynomial{1}));
    CHECK(support_subset_poly({3}, {-1, 1}));
    CHECK(support_subset_poly({-1, 1}, {}));
    CHECK_FALSE(support_subset_poly({}, {-1, 1}));
}

TEST_CASE("ordinary primes")
{
    CHECK_THROWS_AS(ordinary_scan(0, 50, 0, source()), precondition_failed);
    auto const hits = ordinary_scan(2, 50, 0, source());
    bool five = false;
    for (auto const & h : hits) {
        CHECK(h.q != 2); // 2 = 0 mod 2 is supersingular
        REQUIRE(h.D != 0);
        CHECK(h.verified);
        CHECK(source().get(h.D)(2) % h.q == 0);
        five = five || h.q == 5;
    }
    CHECK(five);

    std::uint64_t max50 = 0, max500 = 0;
    for (auto const & h : hits)
        if (h.verified)
            max50 = std::max(max50, h.q);
    for (auto const & h : ordinary_scan(2, 500, 0, source()))
        if (h.verified)
            max500 = std::max(max500, h.q);
    CHECK(max500 > max50);
}

TEST_CASE("verification drivers")
{
    collector c;
    CHECK(prop23_grid({-3, -4, -7}, {2, 3}, {1, 2}, source(), c.sink(), 2));
    CHECK(kronecker_congruence_grid({2, 3}));
    CHECK(michel_scan(200, {2, 3, 5}, source(), c.sink(), 3));
    CHECK(thm54_scan(150, source(), c.sink(), 2));
    CHECK(supersingular_scan(100));

    auto const F2 = finite_field::make(2);
    auto const A = parse_fq_poly("F2:0,1"), B = parse_fq_poly("F2:0,0,1");
    auto const r = ff_find(A, B, 4, 8, source(), c.sink());
    CHECK(ff_growth(A, B, r.D, 3, source(), c.sink()));
}

TEST_CASE("rows are reproducible")
{
    collector a, b;
    support_scan_modular(2, 4, 120, source(), a.sink(), 1);
    support_scan_modular(2, 4, 120, source(), b.sink(), 4);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].D == b.rows[i].D);
        CHECK(a.rows[i].value == b.rows[i].value);
        CHECK(a.rows[i].pass == b.rows[i].pass);
    }
}
