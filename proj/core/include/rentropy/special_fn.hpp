#pragma once

// Special functions behind the law catalog. All functions are pure and
// thread-safe. Accuracy targets are fixed (absolute error <= 1e-12 on the
// documented domains) and are not configurable.

namespace rentropy::special {

/// A scalar together with a bound on its absolute error.
struct SpecialValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

/// ln Γ(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// ψ(x) = Γ'(x)/Γ(x) for x > 0. Throws DomainError otherwise.
double digamma(double x);

/// ln B(a, b) = ln Γ(a) + ln Γ(b) - ln Γ(a + b).
double ln_beta(double a, double b);

/// Standard normal cdf Φ(y). Defined for all real y (and ±inf).
double std_normal_cdf(double y);

/// Φ⁻¹(p) for 0 < p < 1.
double std_normal_quantile(double p);

/// Regularized lower incomplete gamma P(lam, y) = γ(lam, y)/Γ(lam), i.e. the
/// cdf of the unit-scale gamma law with shape lam.
double reg_gamma_cdf(double lam, double y);

/// Density of the unit-scale gamma law with shape lam at y >= 0.
double gamma_density(double lam, double y);

/// Inverse of reg_gamma_cdf in y. Throws ConvergenceError if the bracketed
/// Newton iteration does not reach the residual target.
double reg_gamma_quantile(double lam, double p);
SpecialValue reg_gamma_quantile_detailed(double lam, double p);

/// Regularized incomplete beta I_t(alpha, beta).
double reg_beta_cdf(double alpha, double beta, double t);

/// Inverse of reg_beta_cdf in t.
double reg_beta_quantile(double alpha, double beta, double p);
SpecialValue reg_beta_quantile_detailed(double alpha, double beta, double p);

}  // namespace rentropy::special
