#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace taylorseq {

// Neumaier-compensated accumulator. The transform sums cancel badly for the
// alternating inverse matrix (terms up to ~1e10 collapsing onto unit-scale
// results), so every dot product in the kernel runs through this in 80-bit
// long double.
class CompensatedSum {
public:
    void add(long double term) {
        const long double t = sum_ + term;
        if (std::fabs(sum_) >= std::fabs(term)) {
            comp_ += (sum_ - t) + term;
        } else {
            comp_ += (term - t) + sum_;
        }
        sum_ = t;
    }

    long double value() const { return sum_ + comp_; }

private:
    long double sum_ = 0.0L;
    long double comp_ = 0.0L;
};

// Deterministic uniform generator. std::uniform_real_distribution is
// implementation-defined, so the mapping from engine output to [0,1) is
// spelled out here; identical seeds give identical streams on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    long uniform_index(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// Least-squares slope of log(value) against log(cutoff); used to attach a
// growth exponent to diverging ladders.
inline double log_log_slope(const std::vector<std::pair<long, double>>& points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& [cut, val] : points) {
        if (cut <= 0 || !(val > 0) || !std::isfinite(val)) continue;
        const double x = std::log(static_cast<double>(cut));
        const double y = std::log(val);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    const double denom = m * sxx - sx * sx;
    if (denom == 0) return 0.0;
    const double slope = (m * sxy - sx * sy) / denom;
    return std::isfinite(slope) ? slope : 0.0;
}

}  // namespace taylorseq
