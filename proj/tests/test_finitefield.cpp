#include <doctest.h>

#include <cmath>
#include <random>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/finitefield.hpp"
#include "oracles.hpp"

using namespace hcpkit;

namespace {

class_polynomials & source()
{
    static class_polynomials s;
    return s;
}

fq_poly P(field_ptr const & F, std::initializer_list<long> c)
{
    return fq_poly::from_int(F, int_polynomial(c));
}

} // namespace

TEST_CASE("field construction")
{
    auto const F4 = finite_field::make(2, 2);
    CHECK(F4->size() == 4);
    CHECK(F4->modulus() == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(finite_field::make(2, 3)->modulus() == std::vector<std::uint64_t>{1, 1, 0, 1});
    CHECK(finite_field::make(3, 2)->modulus() == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(finite_field::make(2, 2) == F4);
    CHECK_THROWS_AS(finite_field::make(4, 1), invalid_argument);
    CHECK_THROWS_AS(finite_field::make(3, 40), field_too_large);
}

TEST_CASE("field axioms in small fields")
{
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}, {7, 1}, {2, 4}}) {
        auto const F = finite_field::make(p, m);
        auto const q = F->size();
        for (std::uint64_t a = 1; a < q; ++a) {
            REQUIRE(F->mul(a, F->inv(a)) == 1);
            REQUIRE(F->pow(a, q - 1) == 1);
            REQUIRE(F->add(a, F->neg(a)) == 0);
            for (std::uint64_t b = 0; b < q; b += 3)
                REQUIRE(F->frobenius(F->mul(a, b)) ==
                        F->mul(F->frobenius(a), F->frobenius(b)));
        }
        CHECK_THROWS(F->inv(0));
    }
}

TEST_CASE("gcd and roots")
{
    auto const F5 = finite_field::make(5);
    CHECK(poly_gcd(P(F5, {-1, 0, 1}), P(F5, {-1, 1})) == P(F5, {-1, 1}));
    CHECK(poly_gcd(P(F5, {2, 0, 3}), fq_poly(F5)) == make_monic(P(F5, {2, 0, 3})));
    CHECK_THROWS_AS(poly_gcd(P(F5, {1, 1}), P(finite_field::make(7), {1, 1})), field_mismatch);

    auto const F2 = finite_field::make(2);
    auto const r = roots_in(P(F2, {1, 1, 1}), 2);
    REQUIRE(r.size() == 2);
    for (auto const & [x, mult] : r) {
        CHECK(mult == 1);
        CHECK_FALSE(x.field->in_prime_field(x.value));
        CHECK(x.field->size() == 4);
    }
    CHECK(roots_in(P(F2, {1, 1, 1}), 1).empty());

    auto const m = roots_in(P(F5, {-1, 1}) * P(F5, {-1, 1}) * P(F5, {2, 1}), 1);
    REQUIRE(m.size() == 2);
    CHECK(m[0].first.value == 1);
    CHECK(m[0].second == 2);
    CHECK(m[1].first.value == 3);
}

TEST_CASE("splitting and exhaustive root finding agree")
{
    std::mt19937_64 rng(4);
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 6}, {3, 4}, {5, 3}, {31, 2}, {101, 1}}) {
        auto const F = finite_field::make(p, m);
        std::uniform_int_distribution<std::uint64_t> d(0, F->size() - 1);
        for (int t = 0; t < 10; ++t) {
            std::vector<std::uint64_t> c(2 + t % 6);
            for (auto & x : c)
                x = d(rng);
            c.back() = 1;
            fq_poly const f(F, c);
            fq_poly const g = f * f * fq_poly(F, {d(rng), 1});
            auto const a = roots_in(g, static_cast<std::uint64_t>(m), root_method::exhaustive);
            auto const b = roots_in(g, static_cast<std::uint64_t>(m), root_method::splitting);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                REQUIRE(a[i].first == b[i].first);
                REQUIRE(a[i].second == b[i].second);
            }
        }
    }
}

TEST_CASE("supersingular polynomials")
{
    auto const ss = [](std::uint64_t p) { return supersingular_polynomial(p); };
    for (std::uint64_t p : {2, 3, 5})
        CHECK(ss(p) == P(finite_field::make(p), {0, 1}));
    CHECK(ss(13) == P(finite_field::make(13), {-5, 1}));
    CHECK(ss(11) == P(finite_field::make(11), {0, -1, 1}));
    CHECK(ss(7) == P(finite_field::make(7), {-6, 1}));
    for (std::uint64_t p : primes_up_to(200)) {
        auto const n = static_cast<std::uint64_t>(ss(p).degree());
        REQUIRE(12 * n <= p + 13);
    }
}

TEST_CASE("point counts")
{
    auto const F5 = finite_field::make(5);
    CHECK(frobenius_trace({F5, 0}) == 0);
    auto const F13 = finite_field::make(13);
    CHECK(frobenius_trace({F13, 5}) % 13 == 0);
    auto const F11 = finite_field::make(11);
    CHECK(frobenius_trace({F11, 1}) % 11 == 0);
    CHECK_THROWS_AS(count_points(curve_from_j({finite_field::make(2, 21), 1})), field_too_large);

    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 29, 31}) {
        auto const F = finite_field::make(p);
        for (std::uint64_t j = 0; j < p; ++j) {
            auto const E = curve_from_j({F, j});
            auto const n = count_points(E);
            REQUIRE(n == oracle::count_points_prime(p, E.a1, E.a2, E.a3, E.a4, E.a6));
            auto const t = frobenius_trace({F, j});
            REQUIRE(static_cast<double>(t * t) <= 4.0 * static_cast<double>(p));
        }
    }
    for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 5}, {3, 3}, {5, 2}, {7, 2}}) {
        auto const F = finite_field::make(p, m);
        for (std::uint64_t j = 0; j < F->size(); ++j) {
            auto const t = frobenius_trace({F, j});
            REQUIRE(static_cast<double>(t * t) <= 4.0 * static_cast<double>(F->size()));
        }
    }
}

TEST_CASE("supersingularity by trace matches the supersingular polynomial")
{
    for (std::uint64_t p : primes_up_to(50)) {
        if (p <= 3)
            continue;
        auto const F = finite_field::make(p);
        auto const ss = supersingular_polynomial(p);
        for (std::uint64_t j = 0; j < p; ++j)
            REQUIRE((frobenius_trace({F, j}) % static_cast<std::int64_t>(p) == 0) ==
                    (ss(j) == 0));
    }
}

TEST_CASE("Deuring discriminants")
{
    auto const F5 = finite_field::make(5);
    auto const Ds = deuring_discriminants({F5, 3}, source());
    REQUIRE_FALSE(Ds.empty());
    auto const t = frobenius_trace({F5, 3});
    for (auto D : Ds) {
        CHECK((t * t - 20) % D == 0);
        CHECK(fq_poly::from_int(F5, source().get(D))(3) == 0);
    }

    auto const F7 = finite_field::make(7);
    for (std::uint64_t j = 0; j < 7; ++j) {
        auto const tj = frobenius_trace({F7, j});
        if (tj == 1 || tj == -1) {
            for (auto D : deuring_discriminants({F7, j}, source()))
                CHECK((D == -27 || D == -3));
        }
    }
    CHECK_THROWS_AS(deuring_discriminants({F7, 6}, source()), supersingular_input);
}

TEST_CASE("root counts mod inert primes")
{
    auto const a = michel_counts(-8, 7, source());
    REQUIRE(a.size() == 1);
    CHECK(a[0].first.value == 6);
    CHECK(a[0].second == 1);
    auto const b = michel_counts(-3, 2, source());
    REQUIRE(b.size() == 1);
    CHECK(b[0].first.value == 0);
    CHECK_THROWS_AS(michel_counts(-7, 2, source()), not_inert);
}

TEST_CASE("Frobenius compatibility of composition")
{
    for (std::uint64_t p : {2, 3, 5}) {
        auto const F = finite_field::make(p);
        for (std::int64_t D : {-3, -4, -7, -15, -23}) {
            fq_poly const H = fq_poly::from_int(F, source().get(D));
            for (auto const & A : {P(F, {0, 1}), P(F, {1, 1, 1}), P(F, {2, 0, 1, 1})})
                REQUIRE(pow(compose(H, A), p) == compose(H, pow(A, p)));
        }
    }
}
