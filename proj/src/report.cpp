#include "taylorseq/report.hpp"

#include <cmath>

#include "taylorseq/numeric_util.hpp"

namespace taylorseq {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::HoldsUpToBudget: return "HOLDS_UP_TO_BUDGET";
        case Verdict::FailsAt: return "FAILS_AT";
        case Verdict::DivergenceSuspected: return "DIVERGENCE_SUSPECTED";
    }
    return "UNKNOWN";
}

namespace detail {

bool ladder_stabilized(const std::vector<std::pair<long, double>>& rungs,
                       const LadderOptions& opts) {
    if (rungs.empty()) return false;
    const int w = std::min<int>(opts.window, static_cast<int>(rungs.size()));
    const double last = rungs.back().second;
    if (!std::isfinite(last)) return false;
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::fabs(last));
    for (int i = 0; i < w; ++i) {
        const double v = rungs[rungs.size() - 1 - i].second;
        if (!std::isfinite(v) || std::fabs(v - last) > tol) return false;
    }
    return true;
}

namespace {

std::vector<std::pair<long, double>> tail_window(
    const std::vector<std::pair<long, double>>& rungs, int count) {
    const std::size_t n = rungs.size();
    const std::size_t take = std::min<std::size_t>(n, static_cast<std::size_t>(count));
    std::vector<std::pair<long, double>> out(rungs.end() - take, rungs.end());
    for (auto& [cut, val] : out) val = std::fabs(val);
    return out;
}

}  // namespace

CheckReport classify_sup_ladder(std::vector<std::pair<long, double>> rungs,
                                const LadderOptions& opts,
                                std::string notes) {
    CheckReport rep;
    rep.ladder_values = rungs;
    rep.notes = std::move(notes);
    rep.statistic = rungs.empty() ? 0.0 : rungs.back().second;
    if (ladder_stabilized(rungs, opts)) {
        rep.verdict = Verdict::HoldsUpToBudget;
    } else {
        rep.verdict = Verdict::DivergenceSuspected;
        rep.growth_exponent = log_log_slope(tail_window(rungs, opts.window + 2));
    }
    return rep;
}

CheckReport classify_limit_ladder(std::vector<std::pair<long, double>> rungs,
                                  const LadderOptions& opts,
                                  std::optional<double> target,
                                  double target_tol,
                                  long fail_index,
                                  std::string notes) {
    CheckReport rep;
    rep.ladder_values = rungs;
    rep.notes = std::move(notes);
    rep.statistic = rungs.empty() ? 0.0 : rungs.back().second;
    if (!ladder_stabilized(rungs, opts)) {
        rep.verdict = Verdict::DivergenceSuspected;
        rep.growth_exponent = log_log_slope(tail_window(rungs, opts.window + 2));
        return rep;
    }
    if (target && std::fabs(rep.statistic - *target) > target_tol) {
        rep.verdict = Verdict::FailsAt;
        rep.fail_index = fail_index;
        rep.fail_value = rep.statistic;
        return rep;
    }
    rep.verdict = Verdict::HoldsUpToBudget;
    return rep;
}

}  // namespace detail

}  // namespace taylorseq
