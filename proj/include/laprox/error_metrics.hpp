#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "laprox/errors.hpp"

namespace laprox {

// max_u |est(u) - ref(u)| / ref(u) and sum_u |est(u) - ref(u)|.
struct VectorMetrics {
    double max_rel = 0.0;
    double l1 = 0.0;
};

inline VectorMetrics vector_error_metrics(std::span<const double> est,
                                          std::span<const double> ref) {
    if (est.size() != ref.size()) throw usage_error("estimate/reference shapes differ");
    if (est.empty()) throw usage_error("empty vectors");
    VectorMetrics out;
    for (std::size_t u = 0; u < est.size(); ++u) {
        const double diff = std::abs(est[u] - ref[u]);
        out.l1 += diff;
        if (ref[u] == 0.0)
            throw input_error("relative error undefined: reference entry " + std::to_string(u) +
                              " is zero");
        out.max_rel = std::max(out.max_rel, diff / std::abs(ref[u]));
    }
    return out;
}

// |est - ref| / ref and |est - ref|.
struct ScalarMetrics {
    double rel = 0.0;
    double abs = 0.0;
};

inline ScalarMetrics scalar_error_metrics(double est, double ref) {
    ScalarMetrics out;
    out.abs = std::abs(est - ref);
    if (ref == 0.0) throw input_error("relative error undefined: reference value is zero");
    out.rel = out.abs / std::abs(ref);
    return out;
}

} // namespace laprox
