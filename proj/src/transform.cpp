#include "taylorseq/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "taylorseq/numeric_util.hpp"

namespace taylorseq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Tabulated& as_tabulated(const SequenceSpec& s) {
    if (!s.is_tabulated())
        throw std::logic_error("TransformResult: values are not tabulated");
    return std::get<Tabulated>(s.value());
}

// Exact row sum against explicitly known terms x_n..x_last.
long double row_dot(const TaylorParams& params, long n, const SequenceSpec& x, long last) {
    if (n > last) return 0.0L;
    TaylorRow row(params, n);
    CompensatedSum s;
    for (long k = n; k <= last; ++k) {
        const double xk = x.evaluate(k);
        if (xk != 0.0) s.add(row.value() * static_cast<long double>(xk));
        if (k < last) row.advance();
    }
    return s.value();
}

struct AdaptiveRow {
    double value = 0.0;
    double error = kInf;  // certified truncation bound; +inf when the majorant is open
};

// Row sum against a geometric input, term recurrence
// term_{k+1} = term_k * (r s) (k+1)/(k+1-n), with a geometric-majorant
// stopping rule. Columns are capped at max_col.
AdaptiveRow geometric_row(const TaylorParams& params, long n, double a, double s,
                          const TruncationBudget& budget) {
    AdaptiveRow out;
    if (a == 0.0) return {0.0, 0.0};
    const long double r = params.r();
    const long double rs = r * static_cast<long double>(s);

    long double term = a;
    for (long i = 0; i < n; ++i) term *= (1.0L - r) * static_cast<long double>(s);
    term *= (1.0L - r);

    CompensatedSum sum;
    long k = n;
    while (true) {
        sum.add(term);
        const long double ratio =
            std::fabs(rs) * static_cast<long double>(k + 1) / static_cast<long double>(k + 1 - n);
        const long double partial = std::fabs(sum.value());
        if (ratio < 1.0L) {
            const long double rem = std::fabs(term) * ratio / (1.0L - ratio);
            const long double target =
                0.5L * std::max<long double>(budget.abs_tol, partial * budget.rel_tol);
            if (rem <= target || k >= budget.max_col) {
                out.value = static_cast<double>(sum.value());
                out.error = static_cast<double>(rem);
                return out;
            }
        } else if (k >= budget.max_col) {
            out.value = static_cast<double>(sum.value());
            out.error = kInf;
            return out;
        }
        term *= rs * static_cast<long double>(k + 1) / static_cast<long double>(k + 1 - n);
        ++k;
    }
}

TransformResult apply_matrix(const TaylorParams& params, const SequenceSpec& x,
                             const TruncationBudget& budget) {
    budget.validate();
    TransformResult out;

    if (x.is_finite_support() || (x.is_tabulated() && x.known_length() >= 0)) {
        const long len = x.known_length();
        const bool exact_tail =
            x.is_finite_support() ||
            (x.tail_sup_bound(len - 1).has_value() && *x.tail_sup_bound(len - 1) == 0.0);
        const long rows = exact_tail ? std::min(budget.max_row, len - 1) : budget.max_row;

        std::vector<double> y(static_cast<std::size_t>(std::max<long>(rows + 1, 0)), 0.0);
        std::vector<double> err(y.size(), 0.0);
        const auto tail_bound = x.tail_sup_bound(len - 1);
        for (long n = 0; n <= rows; ++n) {
            y[static_cast<std::size_t>(n)] =
                static_cast<double>(row_dot(params, n, x, len - 1));
            if (exact_tail) continue;
            if (!tail_bound) {
                err[static_cast<std::size_t>(n)] = kInf;
                continue;
            }
            const auto mass = abs_row_tail_bound(params, n, len - 1);
            err[static_cast<std::size_t>(n)] = mass ? *mass * *tail_bound : kInf;
        }

        std::optional<double> out_tail;
        if (exact_tail && rows >= len - 1) {
            out_tail = 0.0;
        } else if (params.r() >= 0.0 && params.r() < 1.0) {
            // nonnegative rows of total mass 1: |y_n| <= sup |x_k|
            out_tail = x.sup_bound();
        }
        out.certified = true;
        for (double e : err)
            if (!std::isfinite(e)) out.certified = false;
        if (!out.certified)
            out.notes = "uncertified rows: input tail not absolutely summable against these rows";
        out.values = SequenceSpec::tabulated(std::move(y), out_tail);
        out.per_row_error = std::move(err);
        return out;
    }

    const auto& g = std::get<Geometric>(x.value());
    const long rows = budget.max_row;
    std::vector<double> y(static_cast<std::size_t>(rows + 1), 0.0);
    std::vector<double> err(y.size(), 0.0);
    for (long n = 0; n <= rows; ++n) {
        const AdaptiveRow row = geometric_row(params, n, g.scale, g.ratio, budget);
        y[static_cast<std::size_t>(n)] = row.value;
        err[static_cast<std::size_t>(n)] = row.error;
    }
    out.certified = true;
    for (double e : err)
        if (!std::isfinite(e)) out.certified = false;

    std::optional<double> out_tail;
    if (g.scale == 0.0) {
        out_tail = 0.0;
    } else if (std::fabs(params.r() * g.ratio) < 1.0) {
        const GeometricImage img = transform_geometric(params, g.scale, g.ratio);
        if (std::fabs(img.rho) <= 1.0)
            out_tail = std::fabs(img.c) *
                       std::pow(std::fabs(img.rho), static_cast<double>(rows + 1));
    } else {
        out.notes = "row series diverge (|r*ratio| >= 1)";
    }
    out.values = SequenceSpec::tabulated(std::move(y), out_tail);
    out.per_row_error = std::move(err);
    return out;
}

double lp_of(const std::vector<double>& v, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::fabs(x));
        return m;
    }
    CompensatedSum s;
    for (double x : v) s.add(std::pow(static_cast<long double>(std::fabs(x)),
                                      static_cast<long double>(p)));
    return static_cast<double>(std::pow(s.value(), 1.0L / static_cast<long double>(p)));
}

}  // namespace

const std::vector<double>& TransformResult::rows() const { return as_tabulated(values).values; }

double TransformResult::row(long n) const { return values.evaluate(n); }

TransformResult apply_taylor(const TaylorParams& params, const SequenceSpec& x,
                             const TruncationBudget& budget) {
    return apply_matrix(params, x, budget);
}

TransformResult apply_inverse(const TaylorParams& params, const SequenceSpec& y,
                              const TruncationBudget& budget) {
    TransformResult out = apply_matrix(params.inverse_params(), y, budget);
    if (!out.certified && out.notes.empty())
        out.notes = "uncertifiable at this budget: inverse rows are not absolutely summable";
    return out;
}

GeometricImage transform_geometric(const TaylorParams& params, double a, double s) {
    const double r = params.r();
    if (!(std::fabs(r * s) < 1.0))
        throw std::domain_error("transform_geometric: requires |r*s| < 1");
    GeometricImage img;
    img.c = a * (1.0 - r) / (1.0 - r * s);
    img.rho = s * (1.0 - r) / (1.0 - r * s);
    return img;
}

double roundtrip_defect(const TaylorParams& params, const SequenceSpec& x,
                        const TruncationBudget& budget) {
    const TransformResult fwd = apply_taylor(params, x, budget);
    const TransformResult back = apply_inverse(params, fwd.values, budget);
    const long rows = static_cast<long>(back.rows().size());
    const auto back_tail = std::get<Tabulated>(back.values.value()).tail_bound;
    const bool tail_exact = back_tail && *back_tail == 0.0;
    const long span = tail_exact ? std::max<long>(rows, x.known_length()) : rows;
    double defect = 0.0;
    for (long n = 0; n < span; ++n) {
        const double err =
            n < rows ? back.per_row_error[static_cast<std::size_t>(n)] : 0.0;
        if (!std::isfinite(err)) continue;  // outside the certified range
        defect = std::max(defect, std::fabs(back.row(n) - x.evaluate(n)));
    }
    return defect;
}

ComposeDefect compose_defect(double r, double s, const TruncationBudget& budget) {
    if (!(r > 0.0 && r < 1.0 && s > 0.0 && s < 1.0))
        throw std::invalid_argument("compose_defect: requires 0 < r, s < 1");
    const long grid = std::min<long>(budget.max_row, 256);
    const TaylorParams pr(r), ps(s);
    const double u = r + s - r * s;
    const double v = (1.0 - r) * (1.0 - s);
    const TaylorParams pu(u), pv(v);

    // Upper-band times upper-band is a finite sum: P_nm = sum_{k=n..m}.
    std::vector<std::vector<long double>> ts(static_cast<std::size_t>(grid));
    for (long k = 0; k < grid; ++k) {
        TaylorRow row(ps, k);
        auto& dst = ts[static_cast<std::size_t>(k)];
        dst.resize(static_cast<std::size_t>(grid - k));
        for (long m = k; m < grid; ++m) {
            dst[static_cast<std::size_t>(m - k)] = row.value();
            if (m + 1 < grid) row.advance();
        }
    }

    ComposeDefect out;
    out.grid = grid;
    for (long n = 0; n < grid; ++n) {
        TaylorRow row_r(pr, n);
        std::vector<long double> tr(static_cast<std::size_t>(grid - n));
        for (long k = n; k < grid; ++k) {
            tr[static_cast<std::size_t>(k - n)] = row_r.value();
            if (k + 1 < grid) row_r.advance();
        }
        for (long m = n; m < grid; ++m) {
            CompensatedSum acc;
            for (long k = n; k <= m; ++k)
                acc.add(tr[static_cast<std::size_t>(k - n)] *
                        ts[static_cast<std::size_t>(k)][static_cast<std::size_t>(m - k)]);
            const double prod = static_cast<double>(acc.value());
            const double composed = taylor_entry(pu, n, m);
            const double claim = v * euler_entry(pv, m, n);
            out.vs_composed = std::max(out.vs_composed, std::fabs(prod - composed));
            out.vs_transpose_claim = std::max(out.vs_transpose_claim, std::fabs(prod - claim));
        }
    }
    return out;
}

NormResult space_norm(const SequenceSpec& x, const SpaceId& space,
                      const TruncationBudget& budget) {
    if (!space.is_taylor())
        throw std::invalid_argument("space_norm: space must be taylor_p or taylor_inf");
    const TaylorParams params(space.r);
    const double p = space.tag == SpaceTag::TaylorInf ? kInfinityExponent : space.p;

    if (x.is_geometric()) {
        const auto& g = std::get<Geometric>(x.value());
        if (g.scale == 0.0) return NormResult{NormVerdict::Finite, 0.0, 0.0, {}};
        if (!(std::fabs(space.r * g.ratio) < 1.0)) {
            NormResult out;
            out.verdict = NormVerdict::Divergent;
            out.notes = "transform rows diverge (|r*ratio| >= 1)";
            return out;
        }
        const GeometricImage img = transform_geometric(params, g.scale, g.ratio);
        return p_norm(SequenceSpec::geometric(img.c, img.rho), p, budget);
    }

    const TransformResult t = apply_taylor(params, x, budget);
    NormResult base = p_norm(t.values, p, budget);
    if (base.divergent()) return base;
    if (!t.certified || !base.error_bound) {
        base.error_bound.reset();
        if (base.notes.empty()) base.notes = t.notes;
        return base;
    }
    base.error_bound = *base.error_bound + lp_of(t.per_row_error, p);
    return base;
}

InnerProductResult inner_product_t2(const SequenceSpec& x, const SequenceSpec& y,
                                    const TaylorParams& params,
                                    const TruncationBudget& budget) {
    InnerProductResult out;

    if (x.is_geometric() && y.is_geometric()) {
        const auto& gx = std::get<Geometric>(x.value());
        const auto& gy = std::get<Geometric>(y.value());
        if (std::fabs(params.r() * gx.ratio) < 1.0 && std::fabs(params.r() * gy.ratio) < 1.0) {
            const GeometricImage ix = transform_geometric(params, gx.scale, gx.ratio);
            const GeometricImage iy = transform_geometric(params, gy.scale, gy.ratio);
            if (std::fabs(ix.rho * iy.rho) < 1.0) {
                out.value = ix.c * iy.c / (1.0 - ix.rho * iy.rho);
                out.error_bound = 0.0;
                return out;
            }
        }
        out.notes = "transforms not certified square-summable";
        return out;
    }

    const TransformResult tx = apply_taylor(params, x, budget);
    const TransformResult ty = apply_taylor(params, y, budget);
    const long nx = static_cast<long>(tx.rows().size());
    const long ny = static_cast<long>(ty.rows().size());
    const long n = std::max(nx, ny);

    CompensatedSum sum;
    CompensatedSum err;
    bool certified = tx.certified && ty.certified;
    for (long i = 0; i < n; ++i) {
        const double u = tx.row(i);
        const double v = ty.row(i);
        const double du = i < nx ? tx.per_row_error[static_cast<std::size_t>(i)] : 0.0;
        const double dv = i < ny ? ty.per_row_error[static_cast<std::size_t>(i)] : 0.0;
        sum.add(static_cast<long double>(u) * v);
        err.add(std::fabs(u) * dv + std::fabs(v) * du + du * dv);
    }
    out.value = static_cast<double>(sum.value());

    const auto tailx = as_tabulated(tx.values).tail_bound;
    const auto taily = as_tabulated(ty.values).tail_bound;
    const bool tails_vanish = tailx && *tailx == 0.0 && taily && *taily == 0.0;
    if (certified && tails_vanish && std::isfinite(static_cast<double>(err.value()))) {
        out.error_bound = static_cast<double>(err.value());
    } else {
        out.notes = "uncertified: transform tails not exactly finite-support";
    }
    return out;
}

double parallelogram_defect(const SequenceSpec& x, const SequenceSpec& y,
                            const SpaceId& space, const TruncationBudget& budget) {
    if (space.tag != SpaceTag::TaylorP)
        throw std::invalid_argument("parallelogram_defect: space must be taylor_p");
    const long count = budget.max_col;
    const SequenceSpec sum = add_tabulated(x, y, count);
    const SequenceSpec diff = subtract_tabulated(x, y, count);
    const NormResult nx = space_norm(x, space, budget);
    const NormResult ny = space_norm(y, space, budget);
    const NormResult ns = space_norm(sum, space, budget);
    const NormResult nd = space_norm(diff, space, budget);
    for (const NormResult* r : {&nx, &ny, &ns, &nd})
        if (r->divergent())
            throw std::domain_error("parallelogram_defect: norms must be finite");
    return std::fabs(ns.value * ns.value + nd.value * nd.value - 2.0 * nx.value * nx.value -
                     2.0 * ny.value * ny.value);
}

SequenceSpec basis_vector(const TaylorParams& params, long k) {
    if (k < 0) throw std::invalid_argument("basis_vector: index must be >= 0");
    const long double r = params.r();
    std::vector<double> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
    long double v = std::pow(1.0L - r, static_cast<long double>(-(k + 1)));
    coeffs[static_cast<std::size_t>(k)] = static_cast<double>(v);
    for (long n = k; n > 0; --n) {
        v *= (-r) * static_cast<long double>(n) / static_cast<long double>(k - n + 1);
        coeffs[static_cast<std::size_t>(n - 1)] = static_cast<double>(v);
    }
    return SequenceSpec::finite(std::move(coeffs));
}

BasisExpansion basis_expand(const TaylorParams& params, const SequenceSpec& x, long K,
                            double p, const TruncationBudget& budget) {
    if (K < 0) throw std::invalid_argument("basis_expand: order must be >= 0");
    if (std::isinf(p))
        throw std::invalid_argument("basis_expand: t_inf has no basis; p must be finite");
    if (!(p >= 1.0)) throw std::invalid_argument("basis_expand: requires p >= 1");

    BasisExpansion out;
    out.coefficients.resize(static_cast<std::size_t>(K) + 1, 0.0);
    out.reconstruction_error.resize(static_cast<std::size_t>(K) + 1, 0.0);

    if (x.is_geometric()) {
        const auto& g = std::get<Geometric>(x.value());
        if (g.scale == 0.0) return out;
        if (!(std::fabs(params.r() * g.ratio) < 1.0))
            throw std::domain_error("basis_expand: transform rows diverge");
        const GeometricImage img = transform_geometric(params, g.scale, g.ratio);
        if (!(std::fabs(img.rho) < 1.0))
            throw std::domain_error("basis_expand: x is not in t_p^r (|rho| >= 1)");
        for (long j = 0; j <= K; ++j)
            out.coefficients[static_cast<std::size_t>(j)] =
                img.c * std::pow(img.rho, static_cast<double>(j));
        const double tail_factor =
            std::pow(1.0 - std::pow(std::fabs(img.rho), p), -1.0 / p);
        for (long j = 0; j <= K; ++j)
            out.reconstruction_error[static_cast<std::size_t>(j)] =
                std::fabs(img.c) * std::pow(std::fabs(img.rho), static_cast<double>(j + 1)) *
                tail_factor;
        return out;
    }

    TruncationBudget b = budget;
    b.max_row = std::max(b.max_row, K + 1);
    const TransformResult t = apply_taylor(params, x, b);
    const auto& tab = as_tabulated(t.values);
    const long rows = static_cast<long>(tab.values.size());
    for (long j = 0; j <= K && j < rows; ++j)
        out.coefficients[static_cast<std::size_t>(j)] = tab.values[static_cast<std::size_t>(j)];

    out.certified = t.certified && tab.tail_bound && *tab.tail_bound == 0.0;
    if (!out.certified)
        out.notes = "reconstruction error computed from tabulated rows only";

    // ell_p tail of the transform beyond each order, accumulated backwards.
    long double acc = 0.0L;
    std::vector<long double> suffix(static_cast<std::size_t>(rows) + 1, 0.0L);
    for (long i = rows - 1; i >= 0; --i) {
        acc += std::pow(static_cast<long double>(std::fabs(tab.values[static_cast<std::size_t>(i)])),
                        static_cast<long double>(p));
        suffix[static_cast<std::size_t>(i)] = acc;
    }
    for (long j = 0; j <= K; ++j) {
        const long double tail =
            (j + 1 < rows) ? suffix[static_cast<std::size_t>(j + 1)] : 0.0L;
        out.reconstruction_error[static_cast<std::size_t>(j)] = static_cast<double>(
            std::pow(tail, 1.0L / static_cast<long double>(p)));
    }
    return out;
}

}  // namespace taylorseq
