#include <doctest.h>

#include <random>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/qfield.hpp"
#include "oracles.hpp"

using namespace hcpkit;

namespace {

class_polynomials & source()
{
    static class_polynomials s;
    return s;
}

quad_int random_element(std::mt19937_64 & rng, std::int64_t bound)
{
    std::uniform_int_distribution<std::int64_t> d(-bound, bound);
    std::int64_t u = d(rng), v = d(rng);
    if ((u - v) % 2 != 0)
        ++u;
    return quad_int(u, v);
}

} // namespace

TEST_CASE("ring arithmetic")
{
    quad_int const phi = quad_int::phi();
    CHECK(phi.norm() == -1);
    CHECK(phi.is_unit());
    CHECK(phi * phi == phi + quad_int::from_int(1));
    CHECK_THROWS_AS(quad_int(1, 2), invalid_argument);

    auto const [j1, j2] = discriminant_minus15_roots();
    CHECK(j1 == quad_int(-191025, -85995));
    CHECK(j2 == j1.conjugate());
    CHECK(j1.norm() == -121287375);
    CHECK(j1 + j2 == quad_int::from_int(-191025));
    CHECK(j1 * j2 == quad_int::from_int(-121287375));
    CHECK((j1 + quad_int::from_int(3375)).norm() == -754606125);
}

TEST_CASE("euclidean gcd")
{
    quad_int const two = quad_int::from_int(2);
    quad_int const g = euclidean_gcd(two, two * quad_int::phi());
    CHECK(abs(g.norm()) == 4);
    CHECK(divides(g, two));
    quad_int const x(7, 3);
    CHECK(euclidean_gcd(x, quad_int::from_int(0)) == x);
    CHECK_THROWS_AS(euclidean_gcd(quad_int::from_int(0), quad_int::from_int(0)), invalid_argument);

    auto const [j1, j2] = discriminant_minus15_roots();
    quad_int const a = j1 + quad_int::from_int(3375);
    CHECK_FALSE(euclidean_gcd(a, a.conjugate()).is_unit());
}

TEST_CASE("each division step shrinks the norm")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10000; ++i) {
        quad_int const a = random_element(rng, 1000000);
        quad_int b = random_element(rng, 1000);
        if (b.is_zero())
            continue;
        quad_int const r = a - round_div(a, b) * b;
        REQUIRE(abs(r.norm()) < abs(b.norm()));
    }
    for (int i = 0; i < 500; ++i) {
        quad_int const a = random_element(rng, 100000), b = random_element(rng, 100000);
        if (a.is_zero() && b.is_zero())
            continue;
        quad_int const g = euclidean_gcd(a, b);
        REQUIRE(divides(g, a));
        REQUIRE(divides(g, b));
    }
}

TEST_CASE("support_subset examples")
{
    quad_int const phi = quad_int::phi();
    CHECK(support_subset(quad_int::from_int(2) * phi, quad_int::from_int(4)));
    CHECK_FALSE(support_subset(quad_int::from_int(3), phi));
    CHECK(support_subset(quad_int::from_int(0), quad_int::from_int(0)));
    CHECK_FALSE(support_subset(quad_int::from_int(0), quad_int::from_int(5)));
    CHECK(support_subset(quad_int::from_int(5), quad_int::from_int(0)));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        quad_int const x = random_element(rng, 100000);
        if (!x.is_zero())
            REQUIRE(support_subset(x, x));
    }
}

TEST_CASE("support_subset agrees with the residue oracle")
{
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 1000) {
        quad_int x = random_element(rng, 40000), y = random_element(rng, 40000);
        if (checked % 3 == 0)
            y = x * random_element(rng, 6); // make containment likely
        if (abs(x.norm()) > 1000000000 || abs(y.norm()) > 1000000000)
            continue;
        ++checked;
        oracle::quad const ox{x.u().get_si(), x.v().get_si()}, oy{y.u().get_si(), y.v().get_si()};
        REQUIRE(support_subset(x, y) == oracle::support_subset_quad(ox, oy));
    }
}

TEST_CASE("conjugation symmetry for inert and ramified norms")
{
    /* 2, 3, 7, 13 are inert in Q(sqrt5); 5 is ramified */
    auto const [j1, j2] = discriminant_minus15_roots();
    quad_int const a = j1 + quad_int::from_int(3375);
    CHECK(support_subset(a, a.conjugate()) == support_subset(a.conjugate(), a));
    CHECK(support_subset(a, a.conjugate()));
}

TEST_CASE("golden support verifier at roots of H_-15")
{
    auto r = verify_thm54(-15, source());
    CHECK(r.forward);
    CHECK(r.backward);
    r = verify_thm54(-7, source());
    CHECK(r.required);
    CHECK(r.forward);
    CHECK(r.backward);
    for (std::int64_t D = -7; D >= -300; D -= 8) {
        if (!is_discriminant(D))
            continue;
        auto const rr = verify_thm54(D, source());
        REQUIRE(rr.required);
        REQUIRE(rr.forward);
        REQUIRE(rr.backward);
    }
    class_polynomials small(std::nullopt, 1);
    CHECK_THROWS_AS(verify_thm54(-15, small), cap_exceeded);
}
