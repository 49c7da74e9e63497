#pragma once

#include <functional>

namespace hardedge::quadrature {

struct Result {
  double value;
  double error_estimate;
};

/// Adaptive 15-point Gauss-Kronrod with recursive bisection.
///
/// An interval is accepted when |K15 - G7| <= max(tolerance, 50 eps |K15|);
/// the tolerance is split between the halves on refinement.
Result gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     double tolerance = 1e-13, int max_depth = 48);

/// Trapezoid rule with `nodes` equispaced points for a periodic integrand on
/// [a, a + period). Spectrally accurate for smooth periodic functions.
double periodic_trapezoid(const std::function<double(double)>& f, double a, double period,
                          int nodes);

}  // namespace hardedge::quadrature
