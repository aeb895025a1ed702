#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace taylorseq {

/// Parameter of the circle method T(r).
///
/// Regular instances require 0 <= r < 1 (the range in which T(r) is a regular
/// summability method). Extended instances allow any real r != 1; they exist
/// because the inverse matrix is T(-r/(1-r)), whose parameter leaves the
/// regular range as soon as r > 0.
class TaylorParams {
public:
    explicit TaylorParams(double r) : r_(r), regular_(true) {
        if (!(r >= 0.0) || !(r < 1.0))
            throw std::invalid_argument("TaylorParams: regular mode requires 0 <= r < 1");
    }

    static TaylorParams extended(double r) {
        if (r == 1.0)
            throw std::invalid_argument("TaylorParams: r = 1 is not invertible");
        TaylorParams p;
        p.r_ = r;
        p.regular_ = false;
        return p;
    }

    double r() const { return r_; }
    bool regular_mode() const { return regular_; }

    /// Parameter of the inverse matrix; applying it twice returns r exactly.
    TaylorParams inverse_params() const {
        if (r_ == 1.0) throw std::invalid_argument("TaylorParams: r = 1 has no inverse");
        return extended(-r_ / (1.0 - r_));
    }

private:
    TaylorParams() = default;
    double r_ = 0.0;
    bool regular_ = true;
};

/// Entry t_{nk} = C(k,n) (1-r)^{n+1} r^{k-n} for k >= n, else 0.
/// Computed by the row recurrence t_{n,k+1} = t_{n,k} * r (k+1)/(k+1-n) seeded
/// at t_{n,n} = (1-r)^{n+1}; falls back to a log-gamma evaluation with
/// separate sign tracking when the seed leaves long double range.
double taylor_entry(const TaylorParams& params, long n, long k);

/// Direct log-gamma route for the same entry; the independent check against
/// the recurrence.
double taylor_entry_direct(const TaylorParams& params, long n, long k);

/// Euler mean entry e_{nk} = C(n,k) (1-r)^{n-k} r^k for 0 <= k <= n, else 0.
double euler_entry(const TaylorParams& params, long n, long k);

/// Entry of T(r)^{-1} = T(-r/(1-r)); requires r != 1. Equals
/// C(k,n) (-r)^{k-n} (1-r)^{-(k+1)} for k >= n.
double inverse_taylor_entry(const TaylorParams& params, long n, long k);

/// Mass of row n beyond `cutoff`: 1 - sum_{k<=cutoff} t_{nk}. Requires
/// 0 < r < 1 and cutoff >= n. The tail is summed directly with a certified
/// geometric-majorant remainder, so comparing it against an independently
/// computed partial sum is a genuine two-route check.
double row_tail_mass(const TaylorParams& params, long n, long cutoff);

/// Certified upper bound on sum_{k>cutoff} |t_{nk}| for |r| < 1 (any sign).
/// Returns nullopt when the majorant cannot be closed within the iteration
/// cap, which is how "uncertifiable at this budget" propagates.
std::optional<double> abs_row_tail_bound(const TaylorParams& params, long n, long cutoff);

/// Streaming access to row n of T(r): yields t_{n,n}, t_{n,n+1}, ... in O(1)
/// per step via the multiplicative recurrence, in long double.
class TaylorRow {
public:
    TaylorRow(const TaylorParams& params, long n);

    long k() const { return k_; }
    long double value() const { return value_; }

    void advance() {
        ++k_;
        value_ *= r_ * static_cast<long double>(k_) / static_cast<long double>(k_ - n_);
    }

    /// |t_{n,k+1} / t_{n,k}| at the current position.
    long double next_abs_ratio() const {
        return std::abs(r_) * static_cast<long double>(k_ + 1) / static_cast<long double>(k_ + 1 - n_);
    }

private:
    long n_;
    long k_;
    long double r_;
    long double value_;
};

}  // namespace taylorseq
