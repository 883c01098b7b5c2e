#include <doctest.h>

#include "hcpkit/errors.hpp"
#include "hcpkit/int_polynomial.hpp"

using namespace hcpkit;

TEST_CASE("int_polynomial basics")
{
    int_polynomial const f{-1, 0, 1}; // T^2 - 1
    int_polynomial const g{-1, 1};
    CHECK(f.degree() == 2);
    CHECK(int_polynomial().degree() == -1);
    CHECK(int_polynomial{0, 0, 0}.is_zero());
    CHECK(f.is_monic());
    CHECK(f(mpz_class(3)) == 8);
    CHECK(f.eval_homogeneous(1, 2) == -3); // 4 (1/4 - 1)
    CHECK(g * int_polynomial{1, 1} == f);
    CHECK(f - f == int_polynomial());
    CHECK(g.pow(3) == int_polynomial{-1, 3, -3, 1});
    CHECK(f.derivative() == int_polynomial{0, 2});
    CHECK(f.compose(g) == int_polynomial{0, -2, 1});
    CHECK(int_polynomial{6, 4, -2}.content() == 2);
    CHECK(int_polynomial{6, 4, -2}.primitive_part() == int_polynomial{-3, -2, 1});
    CHECK(int_polynomial{-121287375, 191025, 1}.to_string() == "T^2 + 191025T - 121287375");
    CHECK(int_polynomial{0, 1}.to_string() == "T");
    CHECK(int_polynomial().to_string() == "0");
}

TEST_CASE("division and gcd")
{
    int_polynomial const a{-1, 0, 0, 1}, b{-1, 1};
    int_polynomial q, r;
    divrem_monic(a, b, q, r);
    CHECK(q == int_polynomial{1, 1, 1});
    CHECK(r.is_zero());
    CHECK(div_exact(a, b) == int_polynomial{1, 1, 1});
    CHECK_THROWS_AS(div_exact(a, int_polynomial{1, 1}), invalid_argument);
    CHECK_THROWS_AS(divrem_monic(a, int_polynomial{1, 2}, q, r), invalid_argument);

    CHECK(gcd(int_polynomial{-1, 0, 1}, int_polynomial{-1, 0, 0, 1}) == int_polynomial{-1, 1});
    CHECK(gcd(int_polynomial{0, 1}, int_polynomial{1, 1}) == int_polynomial{1});
    CHECK(gcd(int_polynomial(), int_polynomial()).is_zero());
    CHECK(gcd(int_polynomial{2, 2}, int_polynomial()) == int_polynomial{1, 1});

    int_polynomial const c = int_polynomial{-1, 1}.pow(3) * int_polynomial{2, 0, 1};
    CHECK(squarefree_part(c) == int_polynomial{-2, 2, -1, 1});
}
