#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "hcpkit/int_polynomial.hpp"

namespace hcpkit {

/* One evaluation of H_D at a fixed working precision.  `ok` is set when
 * every coefficient rounded with residual below 0.25. */
struct class_poly_attempt
{
    int_polynomial poly;
    bool ok = false;
    double max_residual = 0;  // worst |c - round(c)| over real parts
    double max_imag_log2 = 0; // log2 of the worst |Im c|
};

class_poly_attempt hilbert_class_polynomial_at(std::int64_t D, long prec_bits);

/* H_D from the complex-analytic product over reduced forms, at
 * required_precision(D), retrying with the guard margin doubled up to three
 * times; throws precision_exhausted if rounding never becomes clean. */
int_polynomial hilbert_class_polynomial(std::int64_t D);

/* On-disk store of class polynomials, one text file per discriminant:
 *
 *     HDPOLY 1
 *     <D>
 *     <h(D)>
 *     <c_0>
 *     ...
 *     <c_h>
 *     CRC64 <16 lowercase hex digits, CRC-64/XZ of all preceding bytes>
 *
 * named hd_<|D|>.txt.  Writes go through a temporary file and rename. */
class class_poly_cache
{
    std::filesystem::path dir;

  public:
    explicit class_poly_cache(std::filesystem::path directory);

    std::filesystem::path const & directory() const { return dir; }
    std::filesystem::path file_for(std::int64_t D) const;

    void store(std::int64_t D, int_polynomial const & H) const;
    /* absent file -> nullopt; malformed or inconsistent file -> corrupt_cache */
    std::optional<int_polynomial> load(std::int64_t D) const;
};

std::string serialize_class_poly(std::int64_t D, int_polynomial const & H);
int_polynomial parse_class_poly(std::int64_t D, std::string const & text);
std::uint64_t crc64_xz(std::string const & bytes);

/* Memoising source of H_D used by every experiment: memory first, then the
 * disk cache (if any), then computation.  A corrupt cache file is recomputed
 * and overwritten.  Requests with h(D) above the cap throw cap_exceeded. */
class class_polynomials
{
    std::optional<class_poly_cache> disk;
    std::uint64_t cap;
    mutable std::mutex mutex;
    std::map<std::int64_t, std::shared_ptr<int_polynomial const>> memo;

  public:
    explicit class_polynomials(std::optional<std::filesystem::path> cache_dir = std::nullopt,
                               std::uint64_t h_cap = 2000);

    std::uint64_t h_cap() const { return cap; }
    int_polynomial const & get(std::int64_t D);
};

struct prop23_report
{
    std::int64_t D = 0;
    std::uint64_t p = 0, n = 0;
    mpq_class k_formula;        // (2 p^{n-1} / |O*|) (p - (D/p))
    std::uint64_t h_D = 0, h_Dp = 0;
    bool k_consistent = false;  // k_formula == h(Dp^{2n}) / h(D)
    bool congruence_holds = false;
};

/* Checks H_{Dp^{2n}} = H_D^k mod p with k from the closed formula.
 * cap_exceeded when h(Dp^{2n}) is above the source's cap. */
prop23_report verify_prop23(std::int64_t D, std::uint64_t p, std::uint64_t n,
                            class_polynomials & source);

} // namespace hcpkit
