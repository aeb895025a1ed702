#include "taylorseq/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "taylorseq/numeric_util.hpp"

namespace taylorseq {

namespace {

void strip_trailing_zeros(std::vector<double>& coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
}

bool is_inf(double p) { return std::isinf(p); }

void check_exponent(double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("p_norm: exponent must satisfy p >= 1 (or infinity)");
}

}  // namespace

SequenceSpec SequenceSpec::finite(std::vector<double> coeffs) {
    for (double c : coeffs)
        if (!std::isfinite(c))
            throw std::invalid_argument("SequenceSpec: finite-support coefficients must be finite");
    strip_trailing_zeros(coeffs);
    return SequenceSpec(FiniteSupport{std::move(coeffs)});
}

SequenceSpec SequenceSpec::geometric(double scale, double ratio) {
    if (!std::isfinite(scale) || !std::isfinite(ratio))
        throw std::invalid_argument("SequenceSpec: geometric parameters must be finite");
    return SequenceSpec(Geometric{scale, ratio});
}

SequenceSpec SequenceSpec::tabulated(std::vector<double> values,
                                     std::optional<double> tail_bound) {
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("SequenceSpec: tabulated values must be finite");
    if (tail_bound && !(*tail_bound >= 0.0))
        throw std::invalid_argument("SequenceSpec: tail bound must be >= 0");
    return SequenceSpec(Tabulated{std::move(values), tail_bound});
}

SequenceSpec SequenceSpec::unit(long k) {
    if (k < 0) throw std::invalid_argument("SequenceSpec::unit: index must be >= 0");
    std::vector<double> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
    coeffs.back() = 1.0;
    return finite(std::move(coeffs));
}

bool SequenceSpec::is_zero() const {
    if (const auto* f = std::get_if<FiniteSupport>(&v_)) return f->coeffs.empty();
    if (const auto* g = std::get_if<Geometric>(&v_)) return g->scale == 0.0;
    const auto& t = std::get<Tabulated>(v_);
    if (t.tail_bound && *t.tail_bound > 0.0) return false;
    if (!t.tail_bound) return false;  // unknown tail, cannot certify zero
    return std::all_of(t.values.begin(), t.values.end(), [](double v) { return v == 0.0; });
}

double SequenceSpec::evaluate(long k) const {
    if (k < 0) throw std::invalid_argument("SequenceSpec::evaluate: index must be >= 0");
    if (const auto* f = std::get_if<FiniteSupport>(&v_)) {
        return k < static_cast<long>(f->coeffs.size()) ? f->coeffs[static_cast<std::size_t>(k)]
                                                       : 0.0;
    }
    if (const auto* g = std::get_if<Geometric>(&v_)) {
        if (g->scale == 0.0) return 0.0;
        return g->scale * std::pow(g->ratio, static_cast<double>(k));
    }
    const auto& t = std::get<Tabulated>(v_);
    return k < static_cast<long>(t.values.size()) ? t.values[static_cast<std::size_t>(k)] : 0.0;
}

long SequenceSpec::known_length() const {
    if (const auto* f = std::get_if<FiniteSupport>(&v_)) return static_cast<long>(f->coeffs.size());
    if (std::holds_alternative<Geometric>(v_)) return -1;
    return static_cast<long>(std::get<Tabulated>(v_).values.size());
}

std::optional<double> SequenceSpec::tail_sup_bound(long K) const {
    if (const auto* f = std::get_if<FiniteSupport>(&v_)) {
        double m = 0.0;
        for (long k = K + 1; k < static_cast<long>(f->coeffs.size()); ++k)
            m = std::max(m, std::fabs(f->coeffs[static_cast<std::size_t>(k)]));
        return m;
    }
    if (const auto* g = std::get_if<Geometric>(&v_)) {
        if (g->scale == 0.0) return 0.0;
        if (std::fabs(g->ratio) > 1.0) return std::nullopt;  // unbounded tail
        return std::fabs(g->scale) * std::pow(std::fabs(g->ratio), static_cast<double>(K + 1));
    }
    const auto& t = std::get<Tabulated>(v_);
    if (!t.tail_bound) return std::nullopt;
    double m = *t.tail_bound;
    for (long k = K + 1; k < static_cast<long>(t.values.size()); ++k)
        m = std::max(m, std::fabs(t.values[static_cast<std::size_t>(k)]));
    return m;
}

std::optional<double> SequenceSpec::sup_bound() const { return tail_sup_bound(-1); }

SequenceSpec SequenceSpec::scaled(double factor) const {
    if (!std::isfinite(factor))
        throw std::invalid_argument("SequenceSpec::scaled: factor must be finite");
    if (const auto* f = std::get_if<FiniteSupport>(&v_)) {
        std::vector<double> c = f->coeffs;
        for (double& x : c) x *= factor;
        return finite(std::move(c));
    }
    if (const auto* g = std::get_if<Geometric>(&v_))
        return geometric(g->scale * factor, g->ratio);
    const auto& t = std::get<Tabulated>(v_);
    std::vector<double> vals = t.values;
    for (double& x : vals) x *= factor;
    std::optional<double> tb;
    if (t.tail_bound) tb = *t.tail_bound * std::fabs(factor);
    return tabulated(std::move(vals), tb);
}

SequenceSpec SequenceSpec::tabulate(long count) const {
    if (count < 0) throw std::invalid_argument("SequenceSpec::tabulate: count must be >= 0");
    std::vector<double> vals(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) vals[static_cast<std::size_t>(k)] = evaluate(k);
    return tabulated(std::move(vals), tail_sup_bound(count - 1));
}

namespace {

SequenceSpec add_impl(const SequenceSpec& x, const SequenceSpec& y) {
    if (x.is_geometric() || y.is_geometric())
        throw std::invalid_argument(
            "add: geometric sequences leave the family; tabulate first (add_tabulated)");
    if (x.is_finite_support() && y.is_finite_support()) {
        const auto& a = std::get<FiniteSupport>(x.value()).coeffs;
        const auto& b = std::get<FiniteSupport>(y.value()).coeffs;
        std::vector<double> c(std::max(a.size(), b.size()), 0.0);
        for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
        return SequenceSpec::finite(std::move(c));
    }
    const long n = std::max(x.known_length(), y.known_length());
    std::vector<double> vals(static_cast<std::size_t>(n), 0.0);
    for (long k = 0; k < n; ++k)
        vals[static_cast<std::size_t>(k)] = x.evaluate(k) + y.evaluate(k);
    const auto tx = x.tail_sup_bound(n - 1);
    const auto ty = y.tail_sup_bound(n - 1);
    std::optional<double> tb;
    if (tx && ty) tb = *tx + *ty;
    return SequenceSpec::tabulated(std::move(vals), tb);
}

}  // namespace

SequenceSpec add(const SequenceSpec& x, const SequenceSpec& y) { return add_impl(x, y); }

SequenceSpec subtract(const SequenceSpec& x, const SequenceSpec& y) {
    return add_impl(x, y.scaled(-1.0));
}

SequenceSpec add_tabulated(const SequenceSpec& x, const SequenceSpec& y, long count) {
    const SequenceSpec xs = x.is_geometric() ? x.tabulate(count) : x;
    const SequenceSpec ys = y.is_geometric() ? y.tabulate(count) : y;
    return add_impl(xs, ys);
}

SequenceSpec subtract_tabulated(const SequenceSpec& x, const SequenceSpec& y, long count) {
    return add_tabulated(x, y.scaled(-1.0), count);
}

NormResult p_norm(const SequenceSpec& x, double p, const TruncationBudget& budget) {
    check_exponent(p);
    (void)budget;
    NormResult out;

    if (const auto* f = std::get_if<FiniteSupport>(&x.value())) {
        if (is_inf(p)) {
            double m = 0.0;
            for (double c : f->coeffs) m = std::max(m, std::fabs(c));
            out.value = m;
        } else {
            CompensatedSum s;
            for (double c : f->coeffs)
                s.add(std::pow(static_cast<long double>(std::fabs(c)), static_cast<long double>(p)));
            out.value = static_cast<double>(
                std::pow(s.value(), 1.0L / static_cast<long double>(p)));
        }
        out.error_bound = 0.0;
        return out;
    }

    if (const auto* g = std::get_if<Geometric>(&x.value())) {
        if (g->scale == 0.0) {
            out.value = 0.0;
            out.error_bound = 0.0;
            return out;
        }
        const double q = std::fabs(g->ratio);
        if (is_inf(p)) {
            if (q > 1.0) {
                out.verdict = NormVerdict::Divergent;
                out.notes = "geometric terms are unbounded (|ratio| > 1)";
                return out;
            }
            out.value = std::fabs(g->scale);  // attained at k = 0
            out.error_bound = 0.0;
            return out;
        }
        if (q >= 1.0) {
            out.verdict = NormVerdict::Divergent;
            out.notes = "geometric p-th power series diverges (|ratio| >= 1)";
            return out;
        }
        out.value = std::fabs(g->scale) * std::pow(1.0 - std::pow(q, p), -1.0 / p);
        out.error_bound = 0.0;
        return out;
    }

    const auto& t = std::get<Tabulated>(x.value());
    if (is_inf(p)) {
        double m = 0.0;
        for (double v : t.values) m = std::max(m, std::fabs(v));
        out.value = m;
        if (t.tail_bound)
            out.error_bound = std::max(0.0, *t.tail_bound - m);
        else
            out.notes = "tabulated sequence without tail bound: sup norm uncertified";
        return out;
    }
    CompensatedSum s;
    for (double v : t.values)
        s.add(std::pow(static_cast<long double>(std::fabs(v)), static_cast<long double>(p)));
    out.value = static_cast<double>(std::pow(s.value(), 1.0L / static_cast<long double>(p)));
    if (t.tail_bound && *t.tail_bound == 0.0) {
        out.error_bound = 0.0;
    } else if (t.tail_bound) {
        out.notes = "sup-only tail bound cannot certify an ell_p tail";
    } else {
        out.notes = "tabulated sequence without tail bound: partial norm only";
    }
    return out;
}

SpaceId SpaceId::ell_p(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("SpaceId: p must satisfy p >= 1");
    if (std::isinf(p)) return ell_inf();
    return {SpaceTag::EllP, p, 0.0};
}

SpaceId SpaceId::taylor_p(double p, double r) {
    if (!(p >= 1.0)) throw std::invalid_argument("SpaceId: p must satisfy p >= 1");
    if (std::isinf(p)) return taylor_inf(r);
    return {SpaceTag::TaylorP, p, r};
}

double SpaceId::conjugate_q() const {
    const double pe = (tag == SpaceTag::EllInf || tag == SpaceTag::TaylorInf)
                          ? kInfinityExponent
                          : p;
    if (std::isinf(pe)) return 1.0;
    if (pe == 1.0) return kInfinityExponent;
    return pe / (pe - 1.0);
}

std::string SpaceId::name() const {
    switch (tag) {
        case SpaceTag::EllP: return p == 1.0 ? "l1" : "lp(" + std::to_string(p) + ")";
        case SpaceTag::EllInf: return "linf";
        case SpaceTag::C: return "c";
        case SpaceTag::C0: return "c0";
        case SpaceTag::BS: return "bs";
        case SpaceTag::CS: return "cs";
        case SpaceTag::C0S: return "c0s";
        case SpaceTag::TaylorP:
            return (p == 1.0 ? std::string("t1") : "tp(" + std::to_string(p) + ")") +
                   "[r=" + std::to_string(r) + "]";
        case SpaceTag::TaylorInf: return "tinf[r=" + std::to_string(r) + "]";
    }
    return "?";
}

}  // namespace taylorseq
