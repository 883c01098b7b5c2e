#include <doctest.h>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/ffexperiments.hpp"
#include "hcpkit/quadforms.hpp"

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

TEST_CASE("p-th power extraction")
{
    auto const F2 = finite_field::make(2);
    auto s = extract_pth_power(P(F2, {0, 0, 1}));
    CHECK(s.base == P(F2, {0, 1}));
    CHECK(s.exponent == 1);
    s = extract_pth_power(P(F2, {1, 0, 0, 0, 1}));
    CHECK(s.base == P(F2, {1, 1}));
    CHECK(s.exponent == 2);
    CHECK(extract_pth_power(P(F2, {1, 1, 1})).exponent == 0);
    CHECK_THROWS_AS(extract_pth_power(P(F2, {1})), precondition_failed);

    auto const F9 = finite_field::make(3, 2);
    fq_poly const A(F9, {F9->generator(), 0, 0, 1});
    s = extract_pth_power(A);
    CHECK(s.exponent == 1);
    CHECK(pow(s.base, 3) == A);
}

TEST_CASE("common CM points")
{
    auto const F2 = finite_field::make(2);
    auto r = find_common_cm_point(P(F2, {0, 1}), P(F2, {0, 0, 1}), 4, 8, source());
    CHECK(r.alpha.value == 0);
    CHECK(r.k == 1);
    CHECK(r.D == -3);

    fq_poly const A = P(F2, {0, 1}), B = P(F2, {1, 1});
    r = find_common_cm_point(A, B, 4, 8, source());
    auto const & F = r.alpha.field;
    fq_poly const Am(F, A.coeffs()), Bm(F, B.coeffs());
    CHECK(Am(r.alpha.value) == F->pow(Bm(r.alpha.value), mpz_class(1) << static_cast<unsigned>(r.k)));
    CHECK(fq_poly::from_int(F, source().get(r.D))(r.j.value) == 0);
    CHECK(r.m <= 8);

    r = find_common_cm_point(P(F2, {0, 0, 1}), P(F2, {0, 1}), 4, 8, source());
    CHECK(r.k == r.n + 1);

    CHECK_THROWS_AS(find_common_cm_point(P(F2, {1}), B, 4, 8, source()), precondition_failed);
    CHECK_THROWS_AS(find_common_cm_point(A, P(finite_field::make(3), {0, 1}), 4, 8, source()),
                    field_mismatch);
    /* A = B + 1 never meets B^{2^n} inside F_2 */
    CHECK_THROWS_AS(find_common_cm_point(P(F2, {1, 0, 1}), P(F2, {0, 0, 1}), 2, 1, source()),
                    not_found);
}

TEST_CASE("gcd degree growth")
{
    auto const F2 = finite_field::make(2);
    fq_poly const A = P(F2, {0, 1}), B = P(F2, {0, 0, 1});
    auto const rows = gcd_degree_growth(A, B, -3, 3, source());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].deg_gcd == 1);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].bound_holds);
        CHECK(rows[k].deg_gcd == rows[k].h);
        if (k > 0) {
            CHECK(rows[k].ratio >= rows[k - 1].ratio);
            std::int64_t const D = rows[k - 1].D;
            mpq_class step(2 * (2 - kronecker(D, 2)), unit_group_order(D));
            mpq_class ratio(rows[k].h, rows[k - 1].h);
            step.canonicalize();
            ratio.canonicalize();
            CHECK(ratio == step);
        }
    }
    CHECK_THROWS_AS(gcd_degree_growth(P(F2, {0, 1}), P(F2, {1, 1}), -3, 1, source()),
                    precondition_failed);
    class_polynomials small(std::nullopt, 2);
    CHECK_THROWS_AS(gcd_degree_growth(A, B, -3, 3, small), cap_exceeded);
}

TEST_CASE("characteristic zero gcds")
{
    int_polynomial const X{0, 1}, X1{1, 1};
    CHECK(gcd_ffchar0(X, X1, -3, -3, source()) == int_polynomial{1});
    CHECK(gcd_ffchar0(X, X, -15, -15, source()) == source().get(-15));
    std::vector<std::int64_t> const Ds{-3, -4, -7, -8, -11};
    for (auto D1 : Ds)
        for (auto D2 : Ds) {
            CHECK(gcd_ffchar0(X, X1, D1, D2, source()) == int_polynomial{1});
            if (D1 != D2)
                CHECK(gcd_ffchar0(X1, X1, D1, D2, source()) == int_polynomial{1});
        }
}
