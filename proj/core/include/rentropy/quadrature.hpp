#pragma once

#include <functional>
#include <span>

namespace rentropy::quadrature {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over the
/// consecutive pieces [breaks[i], breaks[i+1]]. The breaks must be finite and
/// nondecreasing. The interval with the largest error estimate is bisected
/// until the summed estimate meets max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breaks,
                           const QuadratureOptions& options = {});

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

}  // namespace rentropy::quadrature
