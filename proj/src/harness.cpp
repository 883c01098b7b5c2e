#include "hcpkit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/cyclomult.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/modpoly.hpp"
#include "hcpkit/qfield.hpp"
#include "hcpkit/quadforms.hpp"

namespace hcpkit {

/* ---- writers ---- */

std::string csv_escape(std::string const & field)
{
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

namespace {

class csv_writer final : public record_writer
{
    std::ostream & out;
    std::mutex mutex;

  public:
    explicit csv_writer(std::ostream & o) : out(o)
    {
        out << "experiment,D,h,param1,param2,value,pass\n";
    }
    void write(experiment_record const & r) override
    {
        std::lock_guard lock(mutex);
        out << csv_escape(r.experiment) << ',' << (r.D ? std::to_string(*r.D) : "") << ','
            << (r.h ? std::to_string(*r.h) : "") << ',' << csv_escape(r.param1) << ','
            << csv_escape(r.param2) << ',' << csv_escape(r.value) << ','
            << (r.pass ? (*r.pass ? "true" : "false") : "") << '\n';
        out.flush();
    }
};

class json_writer final : public record_writer
{
    std::ostream & out;
    std::mutex mutex;
    bool first = true;
    bool done = false;

  public:
    explicit json_writer(std::ostream & o) : out(o) { out << "[\n"; }
    ~json_writer() override { finish(); }
    void write(experiment_record const & r) override
    {
        nlohmann::ordered_json j;
        j["experiment"] = r.experiment;
        j["D"] = r.D ? nlohmann::ordered_json(*r.D) : nlohmann::ordered_json(nullptr);
        j["h"] = r.h ? nlohmann::ordered_json(*r.h) : nlohmann::ordered_json(nullptr);
        j["param1"] = r.param1;
        j["param2"] = r.param2;
        j["value"] = r.value;
        j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json(nullptr);
        std::lock_guard lock(mutex);
        out << (first ? "  " : ",\n  ") << j.dump();
        first = false;
        out.flush();
    }
    void finish() override
    {
        std::lock_guard lock(mutex);
        if (done)
            return;
        done = true;
        out << (first ? "]\n" : "\n]\n");
        out.flush();
    }
};

std::string fmt_double(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

double log_abs(mpz_class const & x)
{
    long e = 0;
    double const m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

std::string join(std::vector<std::uint64_t> const & v)
{
    std::string s;
    for (auto x : v)
        s += (s.empty() ? "" : ";") + std::to_string(x);
    return s;
}

std::vector<std::int64_t> discriminants_up_to(std::int64_t D_cap, bool fundamental_only)
{
    std::vector<std::int64_t> out;
    for (std::int64_t a = 3; a <= D_cap; ++a) {
        std::int64_t const D = -a;
        if (fundamental_only ? is_fundamental_discriminant(D) : is_discriminant(D))
            out.push_back(D);
    }
    return out;
}

} // namespace

std::unique_ptr<record_writer> make_writer(output_format fmt, std::ostream & out)
{
    if (fmt == output_format::json)
        return std::make_unique<json_writer>(out);
    return std::make_unique<csv_writer>(out);
}

/* ---- parsing ---- */

mpq_class parse_rational(std::string const & text)
{
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw invalid_argument("not a rational number: '" + text + "'");
    if (q.get_den() == 0)
        throw invalid_argument("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

fq_poly parse_fq_poly(std::string const & text, std::uint64_t default_p)
{
    std::uint64_t p = default_p, m = 1;
    std::string body = text;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        body = text.substr(colon + 1);
        if (head.size() < 2 || head[0] != 'F')
            throw invalid_argument("bad field prefix in '" + text + "'");
        auto caret = head.find('^');
        try {
            p = std::stoull(head.substr(1, caret == std::string::npos ? std::string::npos
                                                                       : caret - 1));
            if (caret != std::string::npos)
                m = std::stoull(head.substr(caret + 1));
        } catch (std::exception const &) {
            throw invalid_argument("bad field prefix in '" + text + "'");
        }
        if (default_p != 0 && p != default_p)
            throw field_mismatch("polynomial '" + text + "' is not over F" +
                                 std::to_string(default_p));
    }
    if (p == 0)
        throw invalid_argument("no field given for '" + text + "'");
    if (!is_prime(p) || m == 0)
        throw invalid_argument("bad field size in '" + text + "'");
    auto const F = finite_field::make(p, m);
    std::vector<finite_field::elem> c;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            throw invalid_argument("empty coefficient in '" + text + "'");
        mpz_class v;
        if (v.set_str(tok, 10) != 0)
            throw invalid_argument("bad coefficient '" + tok + "'");
        if (m == 1)
            c.push_back(F->from_int(v));
        else {
            if (v < 0 || v >= F->size())
                throw invalid_argument("coefficient '" + tok + "' out of range for field");
            c.push_back(v.get_ui());
        }
    }
    return fq_poly(F, std::move(c));
}

/* ---- singular moduli ---- */

std::vector<mpz_class> const & integer_singular_moduli(class_polynomials & source)
{
    static std::once_flag once;
    static std::vector<mpz_class> list;
    std::call_once(once, [&] {
        for (std::int64_t D : discriminants_up_to(200, false))
            if (class_number(D) == 1)
                list.push_back(-source.get(D).coeff(0));
    });
    return list;
}

bool is_integer_singular_modulus(mpz_class const & j, class_polynomials & source)
{
    auto const & l = integer_singular_moduli(source);
    return std::find(l.begin(), l.end(), j) != l.end();
}

/* ---- gcd growth ---- */

gcd_growth_summary gcd_growth_rational(mpz_class const & a, mpz_class const & b, std::uint64_t p,
                                       std::int64_t D_cap, class_polynomials & source,
                                       record_sink const & sink, unsigned threads)
{
    if (!is_prime(p))
        throw precondition_failed("gcd_growth_rational: p is not prime");
    auto const Fp = finite_field::make(p);
    fq_poly const ss = supersingular_polynomial(p);
    if (ss(Fp->from_int(a)) != 0)
        throw precondition_failed("gcd_growth_rational: a mod p is not supersingular");
    if (ss(Fp->from_int(b)) != 0)
        throw precondition_failed("gcd_growth_rational: b mod p is not supersingular");
    if (mod_ui(a, p) != mod_ui(b, p))
        throw precondition_failed("gcd_growth_rational: a and b differ mod p");
    if (is_integer_singular_modulus(a, source) || is_integer_singular_modulus(b, source))
        throw precondition_failed("gcd_growth_rational: a or b is a singular modulus");

    std::vector<std::int64_t> Ds;
    for (std::int64_t D : discriminants_up_to(D_cap, true))
        if (kronecker(D, static_cast<std::int64_t>(p)) == -1 && class_number(D) <= source.h_cap())
            Ds.push_back(D);

    gcd_growth_summary s;
    s.target = std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    std::string const pa = a.get_str(), pb = b.get_str();
    struct row { std::int64_t D; std::uint64_t h; double r; };
    ordered_parallel_for(
        Ds, threads,
        [&](std::int64_t D) {
            int_polynomial const & H = source.get(D);
            mpz_class const g = gcd(H(a), H(b));
            auto const h = static_cast<std::uint64_t>(H.degree());
            return row{D, h, g == 0 ? 0.0 : log_abs(g) / static_cast<double>(h)};
        },
        [&](row const & r) {
            ++s.rows;
            if (s.rows == 1 || r.r > s.max_r) {
                s.max_r = r.r;
                s.argmax_D = r.D;
            }
            sink({"gcd_growth_rational", r.D, r.h, pa, pb, fmt_double(r.r), std::nullopt});
        });
    sink({"gcd_growth_rational_summary", s.argmax_D, std::nullopt, "max_r",
          "target=" + fmt_double(s.target), fmt_double(s.max_r), s.max_r >= 0.5 * s.target});
    return s;
}

/* ---- support scans ---- */

std::string support_witness(mpz_class const & x, mpz_class const & y, std::uint64_t factor_bound)
{
    if (x == 0) {
        /* every prime divides 0 */
        for (std::uint64_t q = 2;; ++q)
            if (is_prime(q) && mod_ui(y, q) != 0)
                return std::to_string(q);
    }
    mpz_class r = abs(x);
    mpz_class const ay = abs(y);
    for (;;) {
        mpz_class g = gcd(r, ay);
        if (g == 1)
            break;
        r /= g;
    }
    if (r == 1)
        return "";
    if (is_prime(r))
        return r.get_str();
    auto const f = factorize(r, factor_bound);
    if (!f.factors.empty()) {
        mpz_class best = f.factors.front().first;
        for (auto const & [q, e] : f.factors)
            best = std::min(best, q);
        return best.get_str();
    }
    return "composite residue " + r.get_str();
}

std::vector<support_violation> support_scan_modular(mpz_class const & j, mpz_class const & j2,
                                                    std::int64_t D_cap,
                                                    class_polynomials & source,
                                                    record_sink const & sink, unsigned threads)
{
    std::vector<std::int64_t> Ds;
    for (std::int64_t D : discriminants_up_to(D_cap, false))
        if (class_number(D) <= source.h_cap())
            Ds.push_back(D);
    struct row { std::int64_t D; std::uint64_t h; bool ok; std::string w; };
    std::vector<support_violation> out;
    std::string const pj = j.get_str(), pj2 = j2.get_str();
    ordered_parallel_for(
        Ds, threads,
        [&](std::int64_t D) {
            int_polynomial const & H = source.get(D);
            mpz_class const x = H(j), y = H(j2);
            bool const ok = support_subset_int(x, y);
            return row{D, static_cast<std::uint64_t>(H.degree()), ok,
                       ok ? std::string() : support_witness(x, y)};
        },
        [&](row const & r) {
            if (!r.ok)
                out.push_back({r.D, r.w});
            sink({"support_modular", r.D, r.h, pj, pj2, r.w, r.ok});
        });
    return out;
}

namespace {

mpz_class strip_primes(mpz_class x, std::vector<std::uint64_t> const & S)
{
    if (x == 0)
        return x;
    for (auto q : S)
        if (q > 1)
            while (mpz_divisible_ui_p(x.get_mpz_t(), q))
                mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), q);
    return x;
}

template <class Value>
std::vector<support_violation> support_scan(char const * name, mpq_class const & a,
                                            mpq_class const & b, std::uint64_t n_max,
                                            std::vector<std::uint64_t> const & S,
                                            record_sink const & sink, Value value)
{
    if (a == 0 || b == 0)
        throw precondition_failed(std::string(name) + ": a and b must be nonzero");
    std::vector<support_violation> out;
    std::string const pa = a.get_str(), pb = b.get_str(), ps = join(S);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        /* numerators of the values; denominators are coprime to them */
        mpz_class const x = strip_primes(value(n, a), S);
        mpz_class const y = strip_primes(value(n, b), S);
        bool const ok = support_subset_int(x, y);
        std::string w = ok ? "" : support_witness(x, y);
        if (!ok)
            out.push_back({static_cast<std::int64_t>(n), w});
        sink({name, std::nullopt, std::nullopt, pa + "|" + pb, "n=" + std::to_string(n) +
              (ps.empty() ? "" : ";S=" + ps), w, ok});
    }
    return out;
}

} // namespace

std::vector<support_violation> support_scan_cyclotomic(mpq_class const & a, mpq_class const & b,
                                                       std::uint64_t n_max,
                                                       std::vector<std::uint64_t> const & S,
                                                       record_sink const & sink)
{
    return support_scan("support_cyclotomic", a, b, n_max, S, sink,
                        [](std::uint64_t n, mpq_class const & t) {
                            return cyclotomic_polynomial(n).eval_homogeneous(t.get_num(),
                                                                             t.get_den());
                        });
}

std::vector<support_violation>
support_scan_multiplicative(mpq_class const & a, mpq_class const & b, std::uint64_t n_max,
                            std::vector<std::uint64_t> const & S, record_sink const & sink)
{
    return support_scan("support_multiplicative", a, b, n_max, S, sink,
                        [](std::uint64_t n, mpq_class const & t) {
                            mpz_class u, v;
                            mpz_pow_ui(u.get_mpz_t(), t.get_num_mpz_t(), n);
                            mpz_pow_ui(v.get_mpz_t(), t.get_den_mpz_t(), n);
                            return mpz_class(u - v);
                        });
}

bool support_subset_poly(int_polynomial const & A, int_polynomial const & B)
{
    if (A.is_zero())
        return B.is_zero();
    if (B.is_zero())
        return true;
    int_polynomial z = A.primitive_part();
    int_polynomial const b = B.primitive_part();
    while (z.degree() > 0) {
        int_polynomial g = gcd(z, b);
        if (g.degree() < 1)
            break;
        z = div_exact(z, g);
    }
    return z.degree() == 0;
}

/* ---- ordinary primes ---- */

std::vector<ordinary_hit> ordinary_scan(mpz_class const & j, std::uint64_t q_max,
                                        std::int64_t per_prime_D_cap,
                                        class_polynomials & source, record_sink const & sink)
{
    if (is_integer_singular_modulus(j, source))
        throw precondition_failed("ordinary_scan: j is a singular modulus");
    std::vector<ordinary_hit> out;
    for (std::uint64_t q : primes_up_to(q_max)) {
        auto const F = finite_field::make(q);
        fq_element const j0{F, F->from_int(j)};
        if (supersingular_polynomial(q)(j0.value) == 0)
            continue;
        ordinary_hit hit{q, 0, false};
        std::string note;
        try {
            hit.D = deuring_discriminants(j0, source, per_prime_D_cap).front();
            hit.verified = mpz_divisible_ui_p(mpz_class(source.get(hit.D)(j)).get_mpz_t(), q);
        } catch (not_found const &) {
            note = "not found";
        }
        out.push_back(hit);
        sink({"ordinary_scan", hit.D ? std::optional<std::int64_t>(hit.D) : std::nullopt,
              hit.D ? std::optional<std::uint64_t>(class_number(hit.D)) : std::nullopt,
              j.get_str(), "q=" + std::to_string(q), note.empty() ? std::to_string(q) : note,
              hit.verified});
    }
    return out;
}

/* ---- verification drivers ---- */

bool prop23_grid(std::vector<std::int64_t> const & Ds, std::vector<std::uint64_t> const & ps,
                 std::vector<std::uint64_t> const & ns, class_polynomials & source,
                 record_sink const & sink, unsigned threads)
{
    struct job { std::int64_t D; std::uint64_t p, n; };
    std::vector<job> jobs;
    for (auto D : Ds)
        for (auto p : ps)
            for (auto n : ns) {
                if (!is_discriminant(D) || !is_prime(p) || n == 0)
                    throw invalid_argument("prop23: bad grid entry");
                if (D % static_cast<std::int64_t>(p * p) == 0)
                    continue;
                jobs.push_back({D, p, n});
            }
    struct row { job j; std::optional<prop23_report> r; };
    bool all = true;
    ordered_parallel_for(
        jobs, threads,
        [&](job const & jb) {
            try {
                return row{jb, verify_prop23(jb.D, jb.p, jb.n, source)};
            } catch (cap_exceeded const &) {
                return row{jb, std::nullopt};
            }
        },
        [&](row const & r) {
            std::string const p1 = "p=" + std::to_string(r.j.p), p2 = "n=" + std::to_string(r.j.n);
            if (!r.r) {
                sink({"prop23", r.j.D, class_number(r.j.D), p1, p2, "skipped: h cap",
                      std::nullopt});
                return;
            }
            bool const ok = r.r->k_consistent && r.r->congruence_holds;
            all = all && ok;
            sink({"prop23", r.j.D, r.r->h_D, p1, p2, "k=" + r.r->k_formula.get_str(), ok});
        });
    return all;
}

bool kronecker_congruence_grid(std::vector<std::uint64_t> const & ps, record_sink const & sink)
{
    bool all = true;
    for (auto p : ps) {
        bool const ok = kronecker_congruence_check(static_cast<unsigned>(p));
        all = all && ok;
        sink({"kronecker_congruence", std::nullopt, std::nullopt, "p=" + std::to_string(p), "",
              std::to_string(modular_polynomial(static_cast<unsigned>(p)).degree_x()), ok});
    }
    return all;
}

bool michel_scan(std::int64_t D_cap, std::vector<std::uint64_t> const & ps,
                 class_polynomials & source, record_sink const & sink, unsigned threads)
{
    struct job { std::int64_t D; std::uint64_t p; };
    std::vector<job> jobs;
    for (auto D : discriminants_up_to(D_cap, true))
        for (auto p : ps)
            if (kronecker(D, static_cast<std::int64_t>(p)) == -1 &&
                class_number(D) <= source.h_cap())
                jobs.push_back({D, p});
    struct row { job j; std::uint64_t h, distinct; bool ok; };
    bool all = true;
    ordered_parallel_for(
        jobs, threads,
        [&](job const & jb) {
            auto const roots = michel_counts(jb.D, jb.p, source);
            auto const F2 = finite_field::make(jb.p, 2);
            fq_poly const ss(F2, supersingular_polynomial(jb.p).coeffs());
            std::uint64_t total = 0;
            bool ok = true;
            for (auto const & [r, mult] : roots) {
                total += mult;
                ok = ok && ss(r.value) == 0;
            }
            auto const h = class_number(jb.D);
            return row{jb, h, roots.size(), ok && total == h};
        },
        [&](row const & r) {
            all = all && r.ok;
            sink({"michel", r.j.D, r.h, "p=" + std::to_string(r.j.p), "",
                  std::to_string(r.distinct), r.ok});
        });
    return all;
}

bool thm54_scan(std::int64_t D_cap, class_polynomials & source, record_sink const & sink,
                unsigned threads)
{
    std::vector<std::int64_t> Ds;
    for (auto D : discriminants_up_to(D_cap, false))
        if (((D % 4) + 4) % 4 == 1 && class_number(D) <= source.h_cap())
            Ds.push_back(D);
    bool all = true;
    ordered_parallel_for(
        Ds, threads, [&](std::int64_t D) { return verify_thm54(D, source); },
        [&](thm54_report const & r) {
            bool const both = r.forward && r.backward;
            if (r.required)
                all = all && both;
            sink({"thm54", r.D, r.h, std::string("forward=") + (r.forward ? "1" : "0"),
                  std::string("backward=") + (r.backward ? "1" : "0"),
                  r.required ? "required" : "explore",
                  r.required ? std::optional<bool>(both) : std::nullopt});
        });
    return all;
}

bool supersingular_scan(std::uint64_t p_max, record_sink const & sink)
{
    bool all = true;
    for (auto p : primes_up_to(p_max)) {
        auto const n = static_cast<std::uint64_t>(supersingular_polynomial(p).degree());
        bool ok = 12 * n <= p + 13;
        if (p <= 5)
            ok = ok && n == 1;
        all = all && ok;
        sink({"supersingular_count", std::nullopt, std::nullopt, "p=" + std::to_string(p), "",
              std::to_string(n), ok});
    }
    return all;
}

common_cm_point ff_find(fq_poly const & A, fq_poly const & B, std::uint64_t n_max,
                        std::uint64_t m_max, class_polynomials & source, record_sink const & sink)
{
    auto const r = find_common_cm_point(A, B, n_max, m_max, source);
    sink({"ff_find", r.D, class_number(r.D), "alpha=" + r.alpha.to_string(),
          "k=" + std::to_string(r.k) + ";m=" + std::to_string(r.m), "j=" + r.j.to_string(),
          true});
    return r;
}

bool ff_growth(fq_poly const & A, fq_poly const & B, std::int64_t D0, std::uint64_t k_max,
               class_polynomials & source, record_sink const & sink)
{
    bool all = true;
    for (auto const & row : gcd_degree_growth(A, B, D0, k_max, source)) {
        all = all && row.bound_holds;
        sink({"ff_growth", row.D, row.h, "k=" + std::to_string(row.k),
              "deg_gcd=" + std::to_string(row.deg_gcd), fmt_double(row.ratio), row.bound_holds});
    }
    return all;
}

} // namespace hcpkit
