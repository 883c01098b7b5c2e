#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/cyclomult.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/ffexperiments.hpp"
#include "hcpkit/finitefield.hpp"
#include "hcpkit/harness.hpp"
#include "hcpkit/modfunc.hpp"
#include "hcpkit/modpoly.hpp"
#include "hcpkit/qfield.hpp"
#include "hcpkit/quadforms.hpp"

namespace py = pybind11;
using namespace hcpkit;

namespace {

py::int_ to_py(mpz_class const & z)
{
    std::string const s = z.get_str(16);
    return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 16));
}

mpz_class to_mpz(py::int_ const & x)
{
    return mpz_class(py::str(x).cast<std::string>());
}

py::list to_py(int_polynomial const & f)
{
    py::list out;
    for (auto const & c : f.coeffs())
        out.append(to_py(c));
    return out;
}

int_polynomial to_poly(std::vector<py::int_> const & c)
{
    std::vector<mpz_class> v;
    for (auto const & x : c)
        v.push_back(to_mpz(x));
    return int_polynomial(v);
}

mpq_class to_mpq(py::object const & x)
{
    return parse_rational(py::str(x).cast<std::string>());
}

// One process-wide source; the cache directory and cap are set with configure().
std::unique_ptr<class_polynomials> & source_slot()
{
    static std::unique_ptr<class_polynomials> s = std::make_unique<class_polynomials>();
    return s;
}

class_polynomials & source()
{
    return *source_slot();
}

py::dict record_dict(experiment_record const & r)
{
    py::dict d;
    d["experiment"] = r.experiment;
    d["D"] = r.D ? py::object(py::int_(*r.D)) : py::none();
    d["h"] = r.h ? py::object(py::int_(*r.h)) : py::none();
    d["param1"] = r.param1;
    d["param2"] = r.param2;
    d["value"] = r.value;
    d["pass"] = r.pass ? py::object(py::bool_(*r.pass)) : py::none();
    return d;
}

template <class F>
py::list collect(F run)
{
    py::list rows;
    run([&](experiment_record const & r) { rows.append(record_dict(r)); });
    return rows;
}

py::list violations(std::vector<support_violation> const & v)
{
    py::list out;
    for (auto const & x : v)
        out.append(py::make_tuple(x.index, x.witness));
    return out;
}

} // namespace

PYBIND11_MODULE(_hcpkit, m)
{
    m.doc() = "Class polynomials, modular polynomials and support experiments";

    auto base = py::register_exception<error>(m, "HcpkitError", PyExc_RuntimeError);
    py::register_exception<invalid_argument>(m, "InvalidArgument", base.ptr());
    py::register_exception<precision_exhausted>(m, "PrecisionExhausted", base.ptr());
    py::register_exception<cap_exceeded>(m, "CapExceeded", base.ptr());
    py::register_exception<corrupt_cache>(m, "CorruptCache", base.ptr());
    py::register_exception<unsupported_level>(m, "UnsupportedLevel", base.ptr());
    py::register_exception<field_mismatch>(m, "FieldMismatch", base.ptr());
    py::register_exception<field_too_large>(m, "FieldTooLarge", base.ptr());
    py::register_exception<supersingular_input>(m, "SupersingularInput", base.ptr());
    py::register_exception<not_inert>(m, "NotInert", base.ptr());
    py::register_exception<not_found>(m, "NotFound", base.ptr());
    py::register_exception<precondition_failed>(m, "PreconditionFailed", base.ptr());

    m.def(
        "configure",
        [](std::optional<std::string> cache_dir, std::uint64_t h_cap) {
            source_slot() = std::make_unique<class_polynomials>(
                cache_dir ? std::optional<std::filesystem::path>(*cache_dir) : std::nullopt,
                h_cap);
        },
        py::arg("cache_dir") = py::none(), py::arg("h_cap") = 2000,
        "Set the class polynomial cache directory (None: memory only) and class number cap.");

    // arith
    m.def("kronecker", [](py::int_ D, py::int_ n) { return kronecker(to_mpz(D), to_mpz(n)); });
    m.def("is_prime", [](py::int_ n) { return is_prime(to_mpz(n)); });
    m.def(
        "factorize",
        [](py::int_ n, std::uint64_t bound) {
            auto const f = factorize(to_mpz(n), bound);
            py::list fs;
            for (auto const & [p, e] : f.factors)
                fs.append(py::make_tuple(to_py(p), e));
            return py::make_tuple(fs, to_py(f.cofactor));
        },
        py::arg("n"), py::arg("bound") = 1000000);
    m.def("is_discriminant", &is_discriminant);
    m.def("is_fundamental_discriminant", &is_fundamental_discriminant);
    m.def("support_subset_int",
          [](py::int_ x, py::int_ y) { return support_subset_int(to_mpz(x), to_mpz(y)); });

    // quadforms
    m.def("class_number", &class_number);
    m.def("reduced_forms", [](std::int64_t D) {
        py::list out;
        for (auto const & f : reduced_forms(D))
            out.append(py::make_tuple(f.a, f.b, f.c));
        return out;
    });

    // modfunc
    m.def(
        "j_invariant",
        [](std::string const & re, std::string const & im, long prec) {
            big_complex const tau{big_float(prec, re), big_float(prec, im)};
            auto const j = j_tau(tau, prec);
            return py::make_tuple(j.re.to_string(prec / 4), j.im.to_string(prec / 4));
        },
        py::arg("re"), py::arg("im"), py::arg("prec_bits") = 128,
        "j(tau) as decimal strings (real, imaginary) for tau given as decimal strings.");
    m.def("required_precision", &required_precision);

    // classpoly
    m.def(
        "hilbert_class_polynomial",
        [](std::int64_t D) { return to_py(source().get(D)); },
        "Coefficients of H_D, constant term first.");
    m.def("verify_prop23", [](std::int64_t D, std::uint64_t p, std::uint64_t n) {
        auto const r = verify_prop23(D, p, n, source());
        py::dict d;
        d["k"] = r.k_formula.get_str();
        d["h_D"] = r.h_D;
        d["h_Dp"] = r.h_Dp;
        d["k_consistent"] = r.k_consistent;
        d["congruence_holds"] = r.congruence_holds;
        return d;
    });

    // modpoly
    m.def(
        "modular_polynomial",
        [](unsigned N) {
            py::dict out;
            for (auto const & [deg, c] : modular_polynomial(N).terms())
                out[py::make_tuple(deg.first, deg.second)] = to_py(c);
            return out;
        },
        "Phi_N as {(i, j): coefficient of X^i Y^j}.");
    m.def("kronecker_congruence_check", &kronecker_congruence_check);

    // finitefield
    m.def("supersingular_polynomial",
          [](std::uint64_t p) { return supersingular_polynomial(p).coeffs(); });
    m.def("michel_counts", [](std::int64_t D, std::uint64_t p) {
        py::list out;
        for (auto const & [r, mult] : michel_counts(D, p, source()))
            out.append(py::make_tuple(r.coords(), mult));
        return out;
    });
    m.def("frobenius_trace", [](std::uint64_t p, std::uint64_t m, std::uint64_t j) {
        auto const F = finite_field::make(p, m);
        return frobenius_trace({F, F->from_int(static_cast<std::int64_t>(j % F->size()))});
    });

    // qfield
    m.def(
        "verify_thm54",
        [](std::int64_t D) {
            auto const r = verify_thm54(D, source());
            py::dict d;
            d["h"] = r.h;
            d["forward"] = r.forward;
            d["backward"] = r.backward;
            d["required"] = r.required;
            return d;
        },
        "Support check at the two roots of H_{-15} in Z[(1+sqrt5)/2].");
    m.def(
        "support_subset_golden",
        [](py::int_ xu, py::int_ xv, py::int_ yu, py::int_ yv) {
            return support_subset(quad_int(to_mpz(xu), to_mpz(xv)),
                                  quad_int(to_mpz(yu), to_mpz(yv)));
        },
        "Support containment for x = (xu + xv sqrt5)/2 and y = (yu + yv sqrt5)/2.");

    // cyclomult
    m.def("cyclotomic_polynomial", [](std::uint64_t n) { return to_py(cyclotomic_polynomial(n)); });
    m.def("lemma44_check", [](py::int_ a, std::uint64_t p, std::uint64_t k, std::uint64_t l) {
        return lemma44_check(to_mpz(a), p, k, l);
    });
    m.def("cyclotomic_congruence_check", &cyclotomic_congruence_check);

    // ffexperiments
    m.def(
        "find_common_cm_point",
        [](std::string const & A, std::string const & B, std::uint64_t n_max, std::uint64_t m_max) {
            auto const r = find_common_cm_point(parse_fq_poly(A), parse_fq_poly(B), n_max, m_max,
                                                source());
            py::dict d;
            d["alpha"] = r.alpha.coords();
            d["j"] = r.j.coords();
            d["k"] = r.k;
            d["m"] = r.m;
            d["D"] = r.D;
            return d;
        },
        py::arg("A"), py::arg("B"), py::arg("n_max") = 4, py::arg("m_max") = 8,
        "A and B as 'F<p>:c0,c1,...' strings.");
    m.def("gcd_degree_growth", [](std::string const & A, std::string const & B, std::int64_t D0,
                                  std::uint64_t k_max) {
        py::list out;
        for (auto const & r : gcd_degree_growth(parse_fq_poly(A), parse_fq_poly(B), D0, k_max,
                                                source())) {
            py::dict d;
            d["k"] = r.k;
            d["D"] = r.D;
            d["h"] = r.h;
            d["deg_gcd"] = r.deg_gcd;
            d["ratio"] = r.ratio;
            d["bound_holds"] = r.bound_holds;
            out.append(d);
        }
        return out;
    });
    m.def("gcd_ffchar0",
          [](std::vector<py::int_> const & A, std::vector<py::int_> const & B, std::int64_t D1,
             std::int64_t D2) { return to_py(gcd_ffchar0(to_poly(A), to_poly(B), D1, D2, source())); });

    // harness
    m.def(
        "gcd_growth_rational",
        [](py::int_ a, py::int_ b, std::uint64_t p, std::int64_t D_cap) {
            gcd_growth_summary s;
            py::list rows = collect([&](record_sink const & sink) {
                s = gcd_growth_rational(to_mpz(a), to_mpz(b), p, D_cap, source(), sink);
            });
            py::dict d;
            d["max_r"] = s.max_r;
            d["argmax_D"] = s.argmax_D;
            d["target"] = s.target;
            d["rows"] = rows;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("p"), py::arg("D_cap"));
    m.def("support_scan_modular", [](py::int_ j, py::int_ j2, std::int64_t D_cap) {
        return violations(support_scan_modular(to_mpz(j), to_mpz(j2), D_cap, source()));
    });
    m.def(
        "support_scan_cyclotomic",
        [](py::object a, py::object b, std::uint64_t n_max, std::vector<std::uint64_t> S) {
            return violations(support_scan_cyclotomic(to_mpq(a), to_mpq(b), n_max, S));
        },
        py::arg("a"), py::arg("b"), py::arg("n_max"), py::arg("S") = std::vector<std::uint64_t>{},
        "a and b may be ints or 'p/q' strings.");
    m.def(
        "support_scan_multiplicative",
        [](py::object a, py::object b, std::uint64_t n_max, std::vector<std::uint64_t> S) {
            return violations(support_scan_multiplicative(to_mpq(a), to_mpq(b), n_max, S));
        },
        py::arg("a"), py::arg("b"), py::arg("n_max"), py::arg("S") = std::vector<std::uint64_t>{});
    m.def("support_subset_poly",
          [](std::vector<py::int_> const & A, std::vector<py::int_> const & B) {
              return support_subset_poly(to_poly(A), to_poly(B));
          });
    m.def(
        "ordinary_scan",
        [](py::int_ j, std::uint64_t q_max, std::int64_t D_cap) {
            py::list out;
            for (auto const & h : ordinary_scan(to_mpz(j), q_max, D_cap, source()))
                out.append(py::make_tuple(h.q, h.D, h.verified));
            return out;
        },
        py::arg("j"), py::arg("q_max"), py::arg("D_cap") = 0);
}
