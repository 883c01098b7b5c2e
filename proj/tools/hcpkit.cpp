#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hcpkit/arith.hpp"
#include "hcpkit/classpoly.hpp"
#include "hcpkit/errors.hpp"
#include "hcpkit/finitefield.hpp"
#include "hcpkit/harness.hpp"
#include "hcpkit/modpoly.hpp"
#include "hcpkit/quadforms.hpp"

using namespace hcpkit;

namespace {

enum exit_code { ok = 0, usage = 1, verification = 2, cap = 3 };

struct globals
{
    std::string out = "csv";
    std::string cache_dir;
    bool no_cache = false;
    std::uint64_t h_cap = 2000;
    unsigned threads = 0;
};

std::string default_cache_dir()
{
    if (char const * env = std::getenv("HCPKIT_CACHE"); env && *env)
        return env;
    return "./hd_cache";
}

std::vector<std::uint64_t> parse_primes(std::string const & list)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(std::stoull(tok));
    return out;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Class polynomials, modular polynomials and support experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    globals g;
    g.cache_dir = default_cache_dir();
    app.add_option("--out", g.out, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cache-dir", g.cache_dir, "Directory for cached class polynomials");
    app.add_flag("--no-cache", g.no_cache, "Do not read or write the cache");
    app.add_option("--h-cap", g.h_cap, "Largest class number computed")->check(CLI::PositiveNumber);
    app.add_option("--threads", g.threads, "Worker threads (0: all available)");

    std::int64_t D = 0, D0 = 0, D_cap = 0;
    unsigned N = 0;
    std::uint64_t p = 0, n_max = 0, m_max = 8, k_max = 0, q_max = 0;
    std::vector<std::int64_t> D_list;
    std::vector<std::uint64_t> p_list, n_list;
    std::string a_str, b_str, j_str, j2_str, A_str, B_str, S_str;

    auto * classnum = app.add_subcommand("classnum", "Class number h(D)");
    classnum->add_option("D", D)->required();

    auto * hpoly = app.add_subcommand("hpoly", "Hilbert class polynomial H_D");
    hpoly->add_option("D", D)->required();

    auto * modpoly = app.add_subcommand("modpoly", "Classical modular polynomial Phi_N");
    modpoly->add_option("N", N)->required();

    auto * ss = app.add_subcommand("ss", "Supersingular polynomial mod p");
    ss->add_option("p", p)->required();

    auto * prop23 = app.add_subcommand("prop23", "H_{Dp^2n} = H_D^k mod p grid");
    prop23->add_option("--D", D_list)->required()->delimiter(',');
    prop23->add_option("--p", p_list)->required()->delimiter(',');
    prop23->add_option("--n", n_list)->required()->delimiter(',');

    auto * kc = app.add_subcommand("kronecker-congruence", "Phi_p = (X - Y^p)(X^p - Y) mod p");
    kc->add_option("--p", p_list)->required()->delimiter(',');

    auto * michel = app.add_subcommand("michel", "Roots of H_D mod inert p are supersingular");
    michel->add_option("--D-cap", D_cap)->required();
    michel->add_option("--p", p_list)->required()->delimiter(',');

    auto * growth = app.add_subcommand("gcd-growth", "log gcd(H_D(a), H_D(b)) / h(D) scan");
    growth->add_option("--a", a_str)->required();
    growth->add_option("--b", b_str)->required();
    growth->add_option("--p", p)->required();
    growth->add_option("--D-cap", D_cap)->required();

    auto * smod = app.add_subcommand("support-modular", "Support of H_D(j) in H_D(j2)");
    smod->add_option("--j", j_str)->required();
    smod->add_option("--j2", j2_str)->required();
    smod->add_option("--D-cap", D_cap)->required();

    auto * scyc = app.add_subcommand("support-cyclotomic", "Support of Psi_n(a) in Psi_n(b)");
    auto * smul = app.add_subcommand("support-multiplicative", "Support of a^n - 1 in b^n - 1");
    for (auto * sc : {scyc, smul}) {
        sc->add_option("--a", a_str)->required();
        sc->add_option("--b", b_str)->required();
        sc->add_option("--n-max", n_max)->required();
        sc->add_option("--S", S_str, "Comma-separated primes to ignore");
    }

    auto * thm54 = app.add_subcommand("thm54", "Support over Z[phi] for D = 1 mod 8");
    thm54->add_option("--D-cap", D_cap)->required();

    auto * fffind = app.add_subcommand("ff-find", "Common CM point of A and B^{p^k}");
    auto * ffgrowth = app.add_subcommand("ff-growth", "gcd degree growth over F_q");
    for (auto * sc : {fffind, ffgrowth}) {
        sc->add_option("--p", p)->required();
        sc->add_option("--A", A_str)->required();
        sc->add_option("--B", B_str)->required();
    }
    fffind->add_option("--n-max", n_max = 4);
    fffind->add_option("--m-max", m_max);
    ffgrowth->add_option("--D0", D0)->required();
    ffgrowth->add_option("--k-max", k_max)->required();

    auto * oscan = app.add_subcommand("ordinary-scan", "Ordinary primes q dividing H_{D_q}(j)");
    oscan->add_option("--j", j_str)->required();
    oscan->add_option("--q-max", q_max)->required();
    oscan->add_option("--D-cap", D_cap, "Per-prime discriminant bound (0: none)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const & e) {
        int const rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    unsigned const threads =
        g.threads ? g.threads : std::max(1u, std::thread::hardware_concurrency());
    auto writer =
        make_writer(g.out == "json" ? output_format::json : output_format::csv, std::cout);
    auto const sink = writer->sink();

    try {
        class_polynomials source(g.no_cache ? std::nullopt
                                            : std::optional<std::filesystem::path>(g.cache_dir),
                                 g.h_cap);
        bool pass = true;

        if (*classnum) {
            if (!is_discriminant(D))
                throw invalid_argument("not a negative discriminant");
            auto const h = class_number(D);
            sink({"classnum", D, h, "", "", std::to_string(h), std::nullopt});
        } else if (*hpoly) {
            auto const & H = source.get(D);
            sink({"hpoly", D, static_cast<std::uint64_t>(H.degree()), "", "", H.to_string(),
                  std::nullopt});
        } else if (*modpoly) {
            auto const & P = modular_polynomial(N);
            for (auto const & [deg, c] : P.terms())
                sink({"modpoly", std::nullopt, std::nullopt, "X^" + std::to_string(deg.first),
                      "Y^" + std::to_string(deg.second), c.get_str(), std::nullopt});
        } else if (*ss) {
            if (!is_prime(p))
                throw invalid_argument("p must be prime");
            auto const P = supersingular_polynomial(p);
            sink({"ss", std::nullopt, std::nullopt, "p=" + std::to_string(p),
                  "n=" + std::to_string(P.degree()), P.to_string(), std::nullopt});
        } else if (*prop23) {
            pass = prop23_grid(D_list, p_list, n_list, source, sink, threads);
        } else if (*kc) {
            pass = kronecker_congruence_grid(p_list, sink);
        } else if (*michel) {
            pass = michel_scan(D_cap, p_list, source, sink, threads);
        } else if (*growth) {
            gcd_growth_rational(mpz_class(a_str), mpz_class(b_str), p, D_cap, source, sink,
                                threads);
        } else if (*smod) {
            support_scan_modular(mpz_class(j_str), mpz_class(j2_str), D_cap, source, sink,
                                 threads);
        } else if (*scyc) {
            support_scan_cyclotomic(parse_rational(a_str), parse_rational(b_str), n_max,
                                    parse_primes(S_str), sink);
        } else if (*smul) {
            support_scan_multiplicative(parse_rational(a_str), parse_rational(b_str), n_max,
                                        parse_primes(S_str), sink);
        } else if (*thm54) {
            pass = thm54_scan(D_cap, source, sink, threads);
        } else if (*fffind) {
            ff_find(parse_fq_poly(A_str, p), parse_fq_poly(B_str, p), n_max, m_max, source, sink);
        } else if (*ffgrowth) {
            pass = ff_growth(parse_fq_poly(A_str, p), parse_fq_poly(B_str, p), D0, k_max, source,
                             sink);
        } else if (*oscan) {
            auto const hits = ordinary_scan(mpz_class(j_str), q_max, D_cap, source, sink);
            for (auto const & h : hits)
                pass = pass && (h.D == 0 || h.verified);
        }
        writer->finish();
        return pass ? ok : verification;
    } catch (cap_exceeded const & e) {
        writer->finish();
        std::cerr << "hcpkit: " << e.what() << '\n';
        return cap;
    } catch (not_found const & e) {
        writer->finish();
        std::cerr << "hcpkit: " << e.what() << '\n';
        return verification;
    } catch (std::invalid_argument const & e) {
        // mpz_class string constructor
        writer->finish();
        std::cerr << "hcpkit: bad integer argument\n";
        return usage;
    } catch (std::exception const & e) {
        writer->finish();
        std::cerr << "hcpkit: " << e.what() << '\n';
        return usage;
    }
}
