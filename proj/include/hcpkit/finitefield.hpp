#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "hcpkit/int_polynomial.hpp"

namespace hcpkit {

class finite_field;
using field_ptr = std::shared_ptr<finite_field const>;

/* F_{p^m} = F_p[X]/(modulus) where modulus is the lexicographically least
 * monic irreducible of degree m: candidates X^m + sum c_i X^i are ordered by
 * the integer sum c_i p^i.  Elements are encoded as that same base-p integer
 * over the power basis, so q = p^m must stay below 2^62. */
class finite_field
{
    std::uint64_t p_, m_, q_;
    std::vector<std::uint64_t> modulus_; // monic, constant term first

    finite_field(std::uint64_t p, std::uint64_t m);

  public:
    using elem = std::uint64_t;

    static field_ptr make(std::uint64_t p, std::uint64_t m = 1);

    std::uint64_t characteristic() const { return p_; }
    std::uint64_t degree() const { return m_; }
    std::uint64_t size() const { return q_; }
    std::vector<std::uint64_t> const & modulus() const { return modulus_; }

    std::vector<std::uint64_t> coords(elem a) const;
    elem from_coords(std::vector<std::uint64_t> const & c) const;
    elem from_int(mpz_class const & n) const;
    elem from_int(std::int64_t n) const;
    /* the class of X in F_p[X]/(modulus) */
    elem generator() const;

    elem add(elem a, elem b) const;
    elem sub(elem a, elem b) const;
    elem neg(elem a) const;
    elem mul(elem a, elem b) const;
    elem pow(elem a, mpz_class const & e) const;
    elem pow(elem a, std::uint64_t e) const;
    elem inv(elem a) const;
    elem div(elem a, elem b) const { return mul(a, inv(b)); }
    elem frobenius(elem a) const { return pow(a, p_); }
    /* the F_p value when a lies in the prime field, throws otherwise */
    std::uint64_t to_prime_field(elem a) const;
    bool in_prime_field(elem a) const { return a < p_; }

    std::string to_string(elem a) const;
};

bool same_field(finite_field const & a, finite_field const & b);

/* An element together with its field. */
struct fq_element
{
    field_ptr field;
    finite_field::elem value = 0;

    std::vector<std::uint64_t> coords() const { return field->coords(value); }
    std::string to_string() const { return field->to_string(value); }
    friend bool operator==(fq_element const & a, fq_element const & b)
    {
        return same_field(*a.field, *b.field) && a.value == b.value;
    }
};

/* Polynomial over a finite field, constant term first, no trailing zeros. */
class fq_poly
{
    field_ptr f;
    std::vector<finite_field::elem> c;

  public:
    using elem = finite_field::elem;

    explicit fq_poly(field_ptr field, std::vector<elem> coeffs = {});
    static fq_poly monomial(field_ptr field, unsigned degree, elem coeff = 1);
    /* reduce integer coefficients into the prime field of `field` */
    static fq_poly from_int(field_ptr field, int_polynomial const & g);
    static fq_poly from_int(field_ptr field, std::vector<mpz_class> const & coeffs);

    field_ptr const & field() const { return f; }
    finite_field const & F() const { return *f; }
    std::vector<elem> const & coeffs() const { return c; }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    elem lead() const { return c.back(); }
    elem coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }
    void normalize();

    elem operator()(elem x) const;

    friend bool operator==(fq_poly const & a, fq_poly const & b)
    {
        return same_field(*a.f, *b.f) && a.c == b.c;
    }

    std::string to_string(char var = 'X') const;
};

fq_poly operator+(fq_poly const & a, fq_poly const & b);
fq_poly operator-(fq_poly const & a, fq_poly const & b);
fq_poly operator*(fq_poly const & a, fq_poly const & b);
fq_poly scale(fq_poly const & a, finite_field::elem s);
fq_poly make_monic(fq_poly const & a);
void divrem(fq_poly const & a, fq_poly const & b, fq_poly & q, fq_poly & r);
fq_poly operator%(fq_poly const & a, fq_poly const & b);
fq_poly operator/(fq_poly const & a, fq_poly const & b);
fq_poly pow(fq_poly const & a, std::uint64_t e);
fq_poly powmod(fq_poly const & a, mpz_class const & e, fq_poly const & mod);
fq_poly derivative(fq_poly const & a);
/* a(b(X)) by Horner */
fq_poly compose(fq_poly const & a, fq_poly const & b);
finite_field::elem resultant(fq_poly const & a, fq_poly const & b);
fq_poly squarefree_part(fq_poly const & a);

/* Monic gcd; gcd(f, 0) is the monic associate of f.  Throws field_mismatch. */
fq_poly poly_gcd(fq_poly const & a, fq_poly const & b);

/* Roots of f in F_{p^m} with multiplicities, sorted by encoded value.  f must
 * be defined over F_p or over a field of degree exactly m; the roots are
 * returned as elements of F_{p^m} (the field make(p, m)). */
enum class root_method { automatic, exhaustive, splitting };

std::vector<std::pair<fq_element, unsigned>> roots_in(fq_poly const & f, std::uint64_t m,
                                                      root_method method = root_method::automatic);

/* Monic squarefree polynomial over F_p whose roots (all in F_{p^2}) are the
 * supersingular j-invariants in characteristic p. */
fq_poly supersingular_polynomial(std::uint64_t p);

/* Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6. */
struct weierstrass_curve
{
    field_ptr field;
    finite_field::elem a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

/* The fixed model with invariant j0 used for point counting:
 *   p >= 5: y^2 = x^3 + 1 (j0 = 0), y^2 = x^3 + x (j0 = 1728),
 *           else y^2 = x^3 + 3k x + 2k with k = j0 / (1728 - j0);
 *   p = 3:  y^2 = x^3 + x (j0 = 0), else y^2 = x^3 + x^2 - 1/j0;
 *   p = 2:  y^2 + y = x^3 (j0 = 0), else y^2 + xy = x^3 + 1/j0. */
weierstrass_curve curve_from_j(fq_element const & j0);

constexpr std::uint64_t max_point_count_field = 1u << 20;

/* #E(F_q) by exhaustive enumeration; q <= 2^20 else field_too_large. */
std::uint64_t count_points(weierstrass_curve const & E);

/* t = q + 1 - #E(F_q) for curve_from_j(j0). */
std::int64_t frobenius_trace(fq_element const & j0);

class class_polynomials;

/* Discriminants D = (t^2 - 4q)/f^2 whose H_D mod p vanishes at j0.  Only
 * candidates with h(D) within the source's cap and, when max_abs_D > 0,
 * |D| <= max_abs_D are tried.  Throws supersingular_input when p | t and
 * not_found when no tried candidate vanishes. */
std::vector<std::int64_t> deuring_discriminants(fq_element const & j0, class_polynomials & source,
                                                std::int64_t max_abs_D = 0);

/* Histogram of the roots of H_D mod p over F_{p^2}; requires (D/p) = -1
 * (else not_inert). */
std::vector<std::pair<fq_element, unsigned>> michel_counts(std::int64_t D, std::uint64_t p,
                                                           class_polynomials & source);

} // namespace hcpkit
