#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace taylorseq {

/// Row/column cutoffs and tolerances for every semi-infinite computation.
struct TruncationBudget {
    long max_row = 128;
    long max_col = 512;
    std::vector<long> ladder = {32, 64, 128, 256, 512};
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int stabilization_window = 3;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol > 0))
            throw std::invalid_argument("TruncationBudget: tolerances must be positive");
        if (ladder.empty())
            throw std::invalid_argument("TruncationBudget: ladder must be nonempty");
        for (std::size_t i = 1; i < ladder.size(); ++i)
            if (ladder[i] <= ladder[i - 1])
                throw std::invalid_argument("TruncationBudget: ladder must be strictly increasing");
        if (ladder.back() > max_col)
            throw std::invalid_argument("TruncationBudget: last ladder rung exceeds max_col");
        if (stabilization_window < 2)
            throw std::invalid_argument("TruncationBudget: stabilization window must be >= 2");
    }

    /// Budget whose ladder tops out at `cap` (useful for CLI --trunc).
    static TruncationBudget capped(long cap) {
        TruncationBudget b;
        b.max_col = cap;
        b.max_row = std::min<long>(b.max_row, cap);
        b.ladder.clear();
        for (long rung = 32; rung < cap; rung *= 2) b.ladder.push_back(rung);
        if (b.ladder.empty() || b.ladder.back() != cap) b.ladder.push_back(cap);
        return b;
    }
};

enum class Verdict { HoldsUpToBudget, FailsAt, DivergenceSuspected };

std::string to_string(Verdict v);

/// Budget-bounded judgment on a condition quantified over an infinite index
/// set. `statistic` is always the last ladder value; `growth_exponent` is
/// present exactly when divergence is suspected (log-log slope of the
/// ladder); `fail_index`/`fail_value` are populated for FailsAt.
struct CheckReport {
    Verdict verdict = Verdict::HoldsUpToBudget;
    double statistic = 0.0;
    std::optional<double> growth_exponent;
    long fail_index = -1;
    double fail_value = 0.0;
    std::vector<std::pair<long, double>> ladder_values;
    std::string notes;

    bool holds() const { return verdict == Verdict::HoldsUpToBudget; }
};

/// Exhaustive/heuristic effort for finite-subset suprema (the F-indexed
/// conditions). Enumeration is exact over the first `exact_limit` indices
/// (capped at 16, i.e. 2^16 subsets) and greedy beyond.
struct SubsetBudget {
    int exact_limit = 12;
    int heuristic_iters = 64;

    void validate() const {
        if (exact_limit < 0 || exact_limit > 16)
            throw std::invalid_argument("SubsetBudget: exact_limit must lie in [0,16]");
        if (heuristic_iters < 0)
            throw std::invalid_argument("SubsetBudget: heuristic_iters must be >= 0");
    }
};

namespace detail {

struct LadderOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int window = 3;
};

/// Classify a ladder of sup-type statistics (nondecreasing by construction).
CheckReport classify_sup_ladder(std::vector<std::pair<long, double>> rungs,
                                const LadderOptions& opts,
                                std::string notes = {});

/// Classify a ladder that should converge. When `target` is set, a stabilized
/// ladder must also land within `target_tol` of it, otherwise the verdict is
/// FailsAt with `fail_index`.
CheckReport classify_limit_ladder(std::vector<std::pair<long, double>> rungs,
                                  const LadderOptions& opts,
                                  std::optional<double> target = std::nullopt,
                                  double target_tol = 0.0,
                                  long fail_index = -1,
                                  std::string notes = {});

bool ladder_stabilized(const std::vector<std::pair<long, double>>& rungs,
                       const LadderOptions& opts);

}  // namespace detail

}  // namespace taylorseq
