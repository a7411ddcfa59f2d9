#pragma once

#include <functional>
#include <vector>

namespace syndyn {

struct QuadratureOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-15;
    unsigned max_depth = 15;
    size_t max_panels = 200000;
};

struct QuadratureResult {
    double value = 0;
    double error = 0;
    /// Integral of |f|, used for the relative criterion.
    double l1 = 0;
    size_t panels = 0;
};

/// Adaptive 15/31-point Gauss-Kronrod over [a, b], split at every cut inside
/// (a, b) and into sub-panels no longer than `period` (ignored when <= 0).
/// Throws NumericalError if the summed error estimate misses the tolerance.
QuadratureResult integrate_panels(const std::function<double(double)> &f, double a, double b,
                                  std::vector<double> cuts, double period, const QuadratureOptions &opts = {});

}  // namespace syndyn
