#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taylorseq/kernel.hpp"
#include "taylorseq/sequence.hpp"

namespace taylorseq {

/// Result of applying a band matrix to a sequence. `values` tabulates
/// y_0..y_{rows-1}; per_row_error[n] bounds |computed y_n - true y_n| and is
/// +infinity on rows the budget could not certify (then `certified` is
/// false). Tail metadata on `values` carries a sup bound for rows beyond the
/// tabulation when one is available.
struct TransformResult {
    SequenceSpec values;  // Tabulated
    std::vector<double> per_row_error;
    bool certified = true;
    std::string notes;

    const std::vector<double>& rows() const;
    double row(long n) const;
};

/// y_n = sum_{k>=n} t_{nk} x_k, rows 0..budget.max_row. Finite-support input
/// is exact; geometric input is summed per row with a certified
/// geometric-majorant stopping rule (columns capped at budget.max_col);
/// tabulated input sums the supplied values and certifies the tail through
/// the sup bound.
TransformResult apply_taylor(const TaylorParams& params, const SequenceSpec& x,
                             const TruncationBudget& budget = TruncationBudget{});

/// x_n = sum_{k>=n} (T(r)^{-1})_{nk} y_k = (T(-r/(1-r)) y)_n. The inverse
/// rows alternate in sign and are absolutely summable only for r < 1/2, so
/// certification of sup-bounded tails fails honestly above that.
TransformResult apply_inverse(const TaylorParams& params, const SequenceSpec& y,
                              const TruncationBudget& budget = TruncationBudget{});

/// Closed form of T(r) applied to x_k = a s^k: the image is c rho^n with
/// c = a(1-r)/(1-rs), rho = s(1-r)/(1-rs). Requires |r s| < 1.
struct GeometricImage {
    double c = 0.0;
    double rho = 0.0;
};
GeometricImage transform_geometric(const TaylorParams& params, double a, double s);

/// sup_k |(T^{-1}(T x))_k - x_k| over the certified rows.
double roundtrip_defect(const TaylorParams& params, const SequenceSpec& x,
                        const TruncationBudget& budget = TruncationBudget{});

/// Max entrywise deviation on a grid between T(r)T(s) and (i) T(r+s-rs),
/// (ii) the transpose of (1-r)(1-s) E^{(1-r)(1-s)}. Both are reported;
/// only the first is asserted anywhere.
struct ComposeDefect {
    double vs_composed = 0.0;
    double vs_transpose_claim = 0.0;
    long grid = 0;
};
ComposeDefect compose_defect(double r, double s,
                             const TruncationBudget& budget = TruncationBudget{});

/// ||x||_{t_p^r} = ||T(r)x||_{ell_p}. `space` must be taylor_p or taylor_inf.
/// Geometric input evaluates through the closed-form image (error 0).
NormResult space_norm(const SequenceSpec& x, const SpaceId& space,
                      const TruncationBudget& budget = TruncationBudget{});

/// <x,y> in t_2^r coordinates: sum_n (Tx)_n (Ty)_n, with the certification
/// rules of the transforms propagated.
struct InnerProductResult {
    double value = 0.0;
    std::optional<double> error_bound;
    bool certified() const { return error_bound.has_value(); }
    std::string notes;
};
InnerProductResult inner_product_t2(const SequenceSpec& x, const SequenceSpec& y,
                                    const TaylorParams& params,
                                    const TruncationBudget& budget = TruncationBudget{});

/// | ||x+y||^2 + ||x-y||^2 - 2||x||^2 - 2||y||^2 | in the t_p^r norm.
/// Zero (to rounding) exactly when p = 2.
double parallelogram_defect(const SequenceSpec& x, const SequenceSpec& y,
                            const SpaceId& space,
                            const TruncationBudget& budget = TruncationBudget{});

/// The k-th basis sequence b^(k)(r): finitely supported on 0..k with entries
/// C(k,n)(1-r)^{-(k+1)}(-r)^{k-n}; its Taylor image is e^(k).
SequenceSpec basis_vector(const TaylorParams& params, long k);

/// Expansion x = sum_k lambda_k b^(k) with lambda_k = (T x)_k.
/// reconstruction_error[j] is ||x - sum_{k<=j} lambda_k b^(k)||_{t_p^r}, the
/// ell_p tail of the transform beyond j (equal by linearity of T).
struct BasisExpansion {
    std::vector<double> coefficients;
    std::vector<double> reconstruction_error;
    bool certified = true;
    std::string notes;
};
BasisExpansion basis_expand(const TaylorParams& params, const SequenceSpec& x, long K,
                            double p, const TruncationBudget& budget = TruncationBudget{});

}  // namespace taylorseq
