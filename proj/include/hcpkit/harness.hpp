#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <gmpxx.h>

#include "hcpkit/ffexperiments.hpp"
#include "hcpkit/finitefield.hpp"
#include "hcpkit/int_polynomial.hpp"

namespace hcpkit {

class class_polynomials;

struct experiment_record
{
    std::string experiment;
    std::optional<std::int64_t> D;
    std::optional<std::uint64_t> h;
    std::string param1, param2;
    std::string value;
    std::optional<bool> pass;
};

using record_sink = std::function<void(experiment_record const &)>;

inline void discard_record(experiment_record const &) {}

class record_writer
{
  public:
    virtual ~record_writer() = default;
    virtual void write(experiment_record const & r) = 0;
    virtual void finish() {}
    record_sink sink()
    {
        return [this](experiment_record const & r) { write(r); };
    }
};

enum class output_format { csv, json };

/* Writers serialize concurrent calls. */
std::unique_ptr<record_writer> make_writer(output_format fmt, std::ostream & out);

std::string csv_escape(std::string const & field);

/* Runs work(item) on up to `threads` workers, calling emit(result) in input
 * order.  At most `threads` results are held at a time. */
template <class Item, class Work, class Emit>
void ordered_parallel_for(std::vector<Item> const & items, unsigned threads, Work work, Emit emit)
{
    if (threads <= 1 || items.size() <= 1) {
        for (auto const & it : items)
            emit(work(it));
        return;
    }
    using result = decltype(work(items.front()));
    for (std::size_t start = 0; start < items.size(); start += threads) {
        std::size_t const stop = std::min(items.size(), start + threads);
        std::vector<std::optional<result>> slot(stop - start);
        std::vector<std::exception_ptr> err(stop - start);
        std::vector<std::thread> pool;
        for (std::size_t i = start; i < stop; ++i)
            pool.emplace_back([&, i] {
                try {
                    slot[i - start].emplace(work(items[i]));
                } catch (...) {
                    err[i - start] = std::current_exception();
                }
            });
        for (auto & t : pool)
            t.join();
        for (std::size_t i = 0; i < slot.size(); ++i) {
            if (err[i])
                std::rethrow_exception(err[i]);
            emit(std::move(*slot[i]));
        }
    }
}

/* ---- parsing ---- */

mpq_class parse_rational(std::string const & text);

/* "F2:1,0,1", "F3^2:4,1" or a bare list over F_{default_p}. */
fq_poly parse_fq_poly(std::string const & text, std::uint64_t default_p = 0);

/* ---- singular moduli ---- */

/* Integer singular moduli: roots of H_D for the h(D) = 1 discriminants with |D| <= 200. */
std::vector<mpz_class> const & integer_singular_moduli(class_polynomials & source);
bool is_integer_singular_modulus(mpz_class const & j, class_polynomials & source);

/* ---- experiments ---- */

struct gcd_growth_summary
{
    double max_r = 0;
    std::int64_t argmax_D = 0;
    double target = 0; // log p / (p - 1)
    std::uint64_t rows = 0;
};

/* r_D = log gcd(|H_D(a)|, |H_D(b)|) / h(D) over fundamental D, |D| <= D_cap,
 * (D/p) = -1, h(D) <= cap. */
gcd_growth_summary gcd_growth_rational(mpz_class const & a, mpz_class const & b, std::uint64_t p,
                                       std::int64_t D_cap, class_polynomials & source,
                                       record_sink const & sink = discard_record,
                                       unsigned threads = 1);

struct support_violation
{
    std::int64_t index = 0;  // D or n
    std::string witness;     // a prime, or "composite residue r"
};

/* Witness for a failed support_subset_int(x, y): a prime dividing x but not y. */
std::string support_witness(mpz_class const & x, mpz_class const & y,
                            std::uint64_t factor_bound = 1000000);

std::vector<support_violation> support_scan_modular(mpz_class const & j, mpz_class const & j2,
                                                    std::int64_t D_cap,
                                                    class_polynomials & source,
                                                    record_sink const & sink = discard_record,
                                                    unsigned threads = 1);

std::vector<support_violation> support_scan_cyclotomic(mpq_class const & a, mpq_class const & b,
                                                       std::uint64_t n_max,
                                                       std::vector<std::uint64_t> const & S,
                                                       record_sink const & sink = discard_record);

std::vector<support_violation>
support_scan_multiplicative(mpq_class const & a, mpq_class const & b, std::uint64_t n_max,
                            std::vector<std::uint64_t> const & S,
                            record_sink const & sink = discard_record);

/* True iff every irreducible factor of A over Q divides B. */
bool support_subset_poly(int_polynomial const & A, int_polynomial const & B);

struct ordinary_hit
{
    std::uint64_t q = 0;
    std::int64_t D = 0; // 0 when the search failed for this q
    bool verified = false;
};

/* per_prime_D_cap = 0 leaves |D| bounded only by 4q and the class number cap. */
std::vector<ordinary_hit> ordinary_scan(mpz_class const & j, std::uint64_t q_max,
                                        std::int64_t per_prime_D_cap,
                                        class_polynomials & source,
                                        record_sink const & sink = discard_record);

/* ---- verification drivers; each returns true when every checked row passes ---- */

bool prop23_grid(std::vector<std::int64_t> const & Ds, std::vector<std::uint64_t> const & ps,
                 std::vector<std::uint64_t> const & ns, class_polynomials & source,
                 record_sink const & sink = discard_record, unsigned threads = 1);

bool kronecker_congruence_grid(std::vector<std::uint64_t> const & ps,
                               record_sink const & sink = discard_record);

/* Fundamental D with |D| <= D_cap and (D/p) = -1. */
bool michel_scan(std::int64_t D_cap, std::vector<std::uint64_t> const & ps,
                 class_polynomials & source, record_sink const & sink = discard_record,
                 unsigned threads = 1);

/* Discriminants D = 1 mod 4 with |D| <= D_cap; only D = 1 mod 8 count toward the result. */
bool thm54_scan(std::int64_t D_cap, class_polynomials & source,
                record_sink const & sink = discard_record, unsigned threads = 1);

/* Supersingular count n(p) and the bound n(p) <= (p + 13) / 12. */
bool supersingular_scan(std::uint64_t p_max, record_sink const & sink = discard_record);

common_cm_point ff_find(fq_poly const & A, fq_poly const & B, std::uint64_t n_max,
                        std::uint64_t m_max, class_polynomials & source,
                        record_sink const & sink = discard_record);

bool ff_growth(fq_poly const & A, fq_poly const & B, std::int64_t D0, std::uint64_t k_max,
               class_polynomials & source, record_sink const & sink = discard_record);

} // namespace hcpkit
