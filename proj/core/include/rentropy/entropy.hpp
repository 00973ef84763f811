#pragma once

#include <optional>
#include <string>

#include "rentropy/laws.hpp"
#include "rentropy/quadrature.hpp"

namespace rentropy {

enum class Provenance { Analytic, Quadrature, Series, Asymptotic };

const char* provenance_name(Provenance provenance) noexcept;

// All entropies are in nats.

/// -sum p_k ln p_k for a discrete law (or an affine map of one).
double shannon_H(const Law& law);

/// Differential entropy -int f ln f from the closed-form catalog, with
/// h(a X + b) = h(X) + ln a. Throws StructureError for non-continuous laws.
double differential_h(const Law& law);

/// The same quantity by adaptive quadrature between Q(1e-12) and
/// Q(1 - 1e-12), split at intermediate quantiles.
quadrature::QuadratureResult differential_h_quadrature(const Law& law);

/// h - ln rho_tilde. Affine invariant.
double h_tilde(const Law& law);

/// ln(sigma sqrt(2 pi e)) - h. Throws NoVarianceError without a variance.
double h_hat(const Law& law);

/// h - ln a, with a the family scale parameter (of the underlying family for
/// affine maps, so the value is constant over a type of laws).
double h_bar(const Law& law);

/// H + sum p_k ln dx_k - ln rho_tilde, with dx_1 = min_{k>=2} dx_k. Throws
/// DegenerateLawError for a single atom.
double H_tilde(const Law& law);

/// lam (1 - ln lam) + e^-lam sum_k lam^k ln k! / k!.
double poisson_H_exact(double lam);
double poisson_H_asymptotic(double lam);
double binomial_H_asymptotic(int n, double p);

/// rho(1/4) / sigma.
double gamma_ratio(const Law& law);

enum class CatalogQuantity { HTilde, HHat, HBar };

/// Closed forms of h_tilde, h_hat and h_bar for a catalog family; they do not
/// depend on the scale. `shape` is required for Gamma and Student.
double catalog_closed_form(Family family, std::optional<double> shape,
                           CatalogQuantity which);

struct Valued {
  double value;
  Provenance provenance;
};

/// Every applicable entropy of one law. Fields that do not apply stay empty;
/// when a quantity fails for a reason intrinsic to the law (degenerate law,
/// missing variance) the error kind and message are recorded.
struct EntropyReport {
  Law law;
  std::optional<Valued> H;
  std::optional<Valued> h;
  std::optional<Valued> H_tilde;
  std::optional<Valued> h_tilde;
  std::optional<Valued> h_hat;
  std::optional<Valued> h_bar;
  std::optional<double> rho_tilde;
  std::optional<std::string> error;
  std::optional<std::string> message;
};

EntropyReport entropy_report(const Law& law);

}  // namespace rentropy
