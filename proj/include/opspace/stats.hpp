#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace opspace {

// Deterministic pairwise reduction in index order; the result depends only on
// the values, never on how samples were produced or scheduled.
inline double pairwise_sum(std::span<const double> v) {
    if (v.empty()) return 0.0;
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    int64_t n_samples = 0;
    uint64_t seed = 0;
};

inline Estimate make_estimate(const std::vector<double>& values, uint64_t seed) {
    Estimate e;
    e.n_samples = static_cast<int64_t>(values.size());
    e.seed = seed;
    if (values.empty()) return e;
    e.mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() > 1) {
        std::vector<double> sq(values.size());
        for (size_t i = 0; i < values.size(); ++i) {
            double d = values[i] - e.mean;
            sq[i] = d * d;
        }
        double var = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
        e.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return e;
}

}  // namespace opspace
