#pragma once

#include <vector>

#include "rentropy/laws.hpp"

namespace rentropy {

/// Generalized inverse Q(p) = inf{x : p <= F(x)} for 0 < p < 1. Discrete
/// laws return x_k when p equals the cumulative mass F(x_k) exactly.
double quantile(const Law& law, double p);

/// Interquantile range rho(p) = Q(1 - p) - Q(p) for 0 < p < 1/2.
double iqnr(const Law& law, double p);

/// Interquartile range rho(1/4).
double iqrr(const Law& law);

/// Renormalization scale: the interquartile range of a continuous law, or
/// the smallest nonzero value of rho on (0, 1/4] for a discrete law. Throws
/// DegenerateLawError when rho vanishes identically and StructureError for
/// mixtures (see rho_tilde_mixture).
double rho_tilde(const Law& law);

/// q * rho_d + (1 - q) * rho_c for a two-part mixture of a discrete law
/// (weight q) and a continuous law. A degenerate discrete part contributes
/// rho_d = 0. Throws StructureError for any other mixture shape.
double rho_tilde_mixture(const Law& law);

/// Quantile function of a law together with the probabilities at which it
/// jumps or changes slope.
class QuantileProfile {
 public:
  explicit QuantileProfile(Law law);

  const Law& law() const noexcept { return law_; }
  /// Sorted, in (0, 1).
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  double operator()(double p) const { return quantile(law_, p); }
  double iqnr(double p) const { return rentropy::iqnr(law_, p); }

 private:
  Law law_;
  std::vector<double> breakpoints_;
};

}  // namespace rentropy
