#pragma once

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "taylorseq/report.hpp"

namespace taylorseq {

struct FiniteSupport {
    std::vector<double> coeffs;  // normalized: no trailing zeros
};

struct Geometric {
    double scale = 0.0;  // x_k = scale * ratio^k
    double ratio = 0.0;
};

struct Tabulated {
    std::vector<double> values;
    // Certified bound on sup |x_k| beyond the tabulated range. Absent means
    // every tail-dependent result downstream is uncertified.
    std::optional<double> tail_bound;
};

/// A real sequence with enough structure for exact oracles and certified
/// truncation. Immutable value type.
class SequenceSpec {
public:
    using Variant = std::variant<FiniteSupport, Geometric, Tabulated>;

    SequenceSpec() : v_(FiniteSupport{}) {}

    static SequenceSpec finite(std::vector<double> coeffs);
    static SequenceSpec geometric(double scale, double ratio);
    static SequenceSpec tabulated(std::vector<double> values,
                                  std::optional<double> tail_bound = std::nullopt);
    static SequenceSpec unit(long k);  // e^(k)

    const Variant& value() const { return v_; }
    bool is_finite_support() const { return std::holds_alternative<FiniteSupport>(v_); }
    bool is_geometric() const { return std::holds_alternative<Geometric>(v_); }
    bool is_tabulated() const { return std::holds_alternative<Tabulated>(v_); }
    bool is_zero() const;

    double evaluate(long k) const;

    /// Number of explicitly known leading terms; -1 for geometric (closed
    /// form, all terms known).
    long known_length() const;

    /// Certified sup of |x_k| over k > K, when one exists.
    std::optional<double> tail_sup_bound(long K) const;

    /// Certified sup of |x_k| over all k, when one exists.
    std::optional<double> sup_bound() const;

    SequenceSpec scaled(double factor) const;

    /// Explicit conversion to a tabulation of `count` leading terms, carrying
    /// whatever tail bound the variant supports.
    SequenceSpec tabulate(long count) const;

private:
    explicit SequenceSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

/// Coordinatewise sum. Defined for FiniteSupport and Tabulated operands;
/// geometric operands must be tabulated first (sums leave the family).
SequenceSpec add(const SequenceSpec& x, const SequenceSpec& y);
SequenceSpec subtract(const SequenceSpec& x, const SequenceSpec& y);

/// add/subtract after tabulating geometric operands to `count` terms.
SequenceSpec add_tabulated(const SequenceSpec& x, const SequenceSpec& y, long count);
SequenceSpec subtract_tabulated(const SequenceSpec& x, const SequenceSpec& y, long count);

enum class NormVerdict { Finite, Divergent };

struct NormResult {
    NormVerdict verdict = NormVerdict::Finite;
    double value = 0.0;
    std::optional<double> error_bound;  // absent = uncertified
    std::string notes;

    bool certified() const { return verdict == NormVerdict::Finite && error_bound.has_value(); }
    bool divergent() const { return verdict == NormVerdict::Divergent; }
};

inline constexpr double kInfinityExponent = std::numeric_limits<double>::infinity();

/// ell_p norm (p >= 1, or infinity for the sup norm). Geometric and
/// FiniteSupport evaluate in closed form with error 0; Tabulated reports the
/// partial norm plus whatever the tail bound certifies.
NormResult p_norm(const SequenceSpec& x, double p,
                  const TruncationBudget& budget = TruncationBudget{});

enum class SpaceTag { EllP, EllInf, C, C0, BS, CS, C0S, TaylorP, TaylorInf };

/// Identifier of a sequence space; p and r are meaningful only for the tags
/// that carry them. p = 1 encodes ell_1 / taylor_1.
struct SpaceId {
    SpaceTag tag = SpaceTag::EllP;
    double p = 2.0;
    double r = 0.0;

    static SpaceId ell_p(double p);
    static SpaceId ell_inf() { return {SpaceTag::EllInf, kInfinityExponent, 0.0}; }
    static SpaceId c() { return {SpaceTag::C, 0.0, 0.0}; }
    static SpaceId c0() { return {SpaceTag::C0, 0.0, 0.0}; }
    static SpaceId bs() { return {SpaceTag::BS, 0.0, 0.0}; }
    static SpaceId cs() { return {SpaceTag::CS, 0.0, 0.0}; }
    static SpaceId c0s() { return {SpaceTag::C0S, 0.0, 0.0}; }
    static SpaceId taylor_p(double p, double r);
    static SpaceId taylor_inf(double r) { return {SpaceTag::TaylorInf, kInfinityExponent, r}; }

    bool is_taylor() const { return tag == SpaceTag::TaylorP || tag == SpaceTag::TaylorInf; }
    bool carries_p() const {
        return tag == SpaceTag::EllP || tag == SpaceTag::TaylorP;
    }

    /// Conjugate exponent: 1/p + 1/q = 1; q = infinity when p = 1, q = 1 for
    /// the sup-norm spaces.
    double conjugate_q() const;

    std::string name() const;
};

}  // namespace taylorseq
