#include "taylorseq/kernel.hpp"

#include <cmath>
#include <limits>

#include "taylorseq/numeric_util.hpp"

namespace taylorseq {

namespace {

constexpr long kTailIterationCap = 20'000'000;

long double seed_pow(long double base, long exponent) {
    return std::pow(base, static_cast<long double>(exponent));
}

bool seed_in_range(long double seed) {
    return std::isfinite(seed) && std::fabs(seed) >= std::numeric_limits<long double>::min();
}

}  // namespace

TaylorRow::TaylorRow(const TaylorParams& params, long n)
    : n_(n), k_(n), r_(params.r()), value_(seed_pow(1.0L - params.r(), n + 1)) {
    if (n < 0) throw std::invalid_argument("TaylorRow: row index must be >= 0");
}

double taylor_entry_direct(const TaylorParams& params, long n, long k) {
    if (n < 0 || k < 0) throw std::invalid_argument("taylor_entry: indices must be >= 0");
    if (k < n) return 0.0;
    const long double r = params.r();
    if (r == 0.0L) return k == n ? 1.0 : 0.0;
    // log |t_nk| = lgamma(k+1) - lgamma(n+1) - lgamma(k-n+1)
    //            + (n+1) log|1-r| + (k-n) log|r|, signs tracked separately.
    const long double log_binom = std::lgamma(static_cast<long double>(k + 1)) -
                                  std::lgamma(static_cast<long double>(n + 1)) -
                                  std::lgamma(static_cast<long double>(k - n + 1));
    const long double log_mag = log_binom + (n + 1) * std::log(std::fabs(1.0L - r)) +
                                (k - n) * std::log(std::fabs(r));
    int sign = 1;
    if (r < 0.0L && ((k - n) & 1L)) sign = -sign;
    if (r > 1.0L && ((n + 1) & 1L)) sign = -sign;
    return static_cast<double>(sign * std::exp(log_mag));
}

double taylor_entry(const TaylorParams& params, long n, long k) {
    if (n < 0 || k < 0) throw std::invalid_argument("taylor_entry: indices must be >= 0");
    if (k < n) return 0.0;
    const long double seed = seed_pow(1.0L - params.r(), n + 1);
    if (!seed_in_range(seed)) return taylor_entry_direct(params, n, k);
    TaylorRow row(params, n);
    while (row.k() < k) row.advance();
    const long double v = row.value();
    if (!std::isfinite(v)) return taylor_entry_direct(params, n, k);
    return static_cast<double>(v);
}

double euler_entry(const TaylorParams& params, long n, long k) {
    if (n < 0 || k < 0) throw std::invalid_argument("euler_entry: indices must be >= 0");
    if (k > n) return 0.0;
    const long double r = params.r();
    long double binom = 1.0L;
    for (long i = 1; i <= k; ++i)
        binom *= static_cast<long double>(n - k + i) / static_cast<long double>(i);
    const long double a = (k == n) ? 1.0L : seed_pow(1.0L - r, n - k);
    const long double b = (k == 0) ? 1.0L : seed_pow(r, k);
    return static_cast<double>(binom * a * b);
}

double inverse_taylor_entry(const TaylorParams& params, long n, long k) {
    return taylor_entry(params.inverse_params(), n, k);
}

double row_tail_mass(const TaylorParams& params, long n, long cutoff) {
    const double r = params.r();
    if (!(r > 0.0) || !(r < 1.0))
        throw std::invalid_argument("row_tail_mass: requires 0 < r < 1");
    if (n < 0 || cutoff < n)
        throw std::invalid_argument("row_tail_mass: requires cutoff >= n >= 0");

    TaylorRow row(params, n);
    while (row.k() <= cutoff) row.advance();

    CompensatedSum tail;
    long iterations = 0;
    while (true) {
        tail.add(row.value());
        const long double ratio = row.next_abs_ratio();
        if (ratio < 1.0L) {
            const long double remainder = row.value() * ratio / (1.0L - ratio);
            if (remainder <= 1e-19L * std::max(1.0L, tail.value())) break;
        }
        if (++iterations > kTailIterationCap)
            throw std::runtime_error("row_tail_mass: tail did not close within iteration cap");
        row.advance();
    }
    const double mass = static_cast<double>(tail.value());
    if (mass < 0.0) return 0.0;
    if (mass > 1.0) return 1.0;
    return mass;
}

std::optional<double> abs_row_tail_bound(const TaylorParams& params, long n, long cutoff) {
    const double r = params.r();
    if (n < 0) throw std::invalid_argument("abs_row_tail_bound: row index must be >= 0");
    if (cutoff < n) cutoff = n - 1;  // whole row counts as tail
    if (std::fabs(r) >= 1.0) return std::nullopt;
    if (r == 0.0) return cutoff >= n ? 0.0 : std::fabs(taylor_entry(params, n, n));

    TaylorRow row(params, n);
    while (row.k() <= cutoff) row.advance();

    CompensatedSum tail;
    long iterations = 0;
    while (true) {
        tail.add(std::fabs(static_cast<double>(row.value())));
        const long double ratio = row.next_abs_ratio();
        if (ratio < 1.0L) {
            const long double remainder =
                std::fabs(row.value()) * ratio / (1.0L - ratio);
            if (remainder <= 1e-19L * std::max(1.0L, tail.value())) {
                return static_cast<double>(tail.value() + remainder);
            }
        }
        if (++iterations > kTailIterationCap) return std::nullopt;
        row.advance();
    }
}

}  // namespace taylorseq
