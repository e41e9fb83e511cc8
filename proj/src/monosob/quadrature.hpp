#pragma once

#include <functional>
#include <span>

namespace monosob {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_floor = 1e-300;
    int max_panels = 4000;
    // Decaying profiles are integrated at least this far out.
    double min_truncation_radius = 0.0;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int panels = 0;
    long evaluations = 0;
    bool converged = false;
};

/// Single 21-point Gauss-Kronrod panel on [a, b]; returns value and the
/// QUADPACK error estimate.
QuadratureResult gauss_kronrod_21(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod integration. `breakpoints` (ascending,
/// at least two) seed the initial panels; the panel with the largest error
/// estimate is bisected until the total error meets
/// max(abs_floor, rel_tol |value|) or the panel budget is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                           const QuadratureOptions& options = {});

} // namespace monosob
