#include "rentropy/entropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "detail/summation.hpp"
#include "rentropy/errors.hpp"
#include "rentropy/quantiles.hpp"
#include "rentropy/special_fn.hpp"

namespace rentropy {
namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
constexpr double kSeriesRelTol = 1e-16;

const ContinuousFamily& underlying_family(const Law& law) {
  if (const auto* f = law.as_family()) return *f;
  if (const auto* aff = law.as_affine()) {
    if (const auto* f = aff->base.as_family()) return *f;
  }
  throw StructureError("expected a continuous law");
}

double catalog_value(const Law& law, CatalogQuantity which) {
  const auto& f = underlying_family(law);
  return catalog_closed_form(f.family(), f.shape(), which);
}

double masses_entropy(const DiscreteLaw& law) {
  if (const auto* u = std::get_if<DiscreteUniformTag>(&law.tag())) return std::log(u->n);
  detail::CompensatedSum sum;
  for (const double m : law.masses()) {
    if (m > 0.0) sum.add(-m * std::log(m));
  }
  return sum.value();
}

const DiscreteLaw& underlying_discrete(const Law& law) {
  if (const auto* d = law.as_discrete()) return *d;
  if (const auto* aff = law.as_affine()) {
    if (const auto* d = aff->base.as_discrete()) return *d;
  }
  throw StructureError("expected a discrete law");
}

// 2 Q(3/4) for the unit-scale Student law.
double student_unit_iqrr(double lam) {
  return 2.0 * ContinuousFamily::student(lam, 1.0).quantile(0.75);
}

double student_h_bar(double lam) {
  const double half = 0.5 * (lam + 1.0);
  return half * (special::digamma(half) - special::digamma(0.5 * lam)) +
         special::ln_beta(0.5, 0.5 * lam);
}

double gamma_h_bar(double lam) {
  return (1.0 - lam) * special::digamma(lam) + lam + special::ln_gamma(lam);
}

}  // namespace

const char* provenance_name(Provenance provenance) noexcept {
  switch (provenance) {
    case Provenance::Analytic: return "analytic";
    case Provenance::Quadrature: return "quadrature";
    case Provenance::Series: return "series";
    case Provenance::Asymptotic: return "asymptotic";
  }
  return "unknown";
}

double shannon_H(const Law& law) { return masses_entropy(underlying_discrete(law)); }

double differential_h(const Law& law) {
  if (const auto* f = law.as_family()) return f->entropy();
  if (const auto* aff = law.as_affine()) {
    if (aff->base.as_family()) return differential_h(aff->base) + std::log(aff->scale);
  }
  throw StructureError("differential_h: expected a continuous law");
}

quadrature::QuadratureResult differential_h_quadrature(const Law& law) {
  if (law.kind() != LawKind::Continuous) {
    throw StructureError("differential_h_quadrature: expected a continuous law");
  }
  std::vector<double> levels;
  for (int k = 12; k >= 1; --k) levels.push_back(std::pow(10.0, -k));
  for (const double u : {0.25, 0.5, 0.75}) levels.push_back(u);
  for (int k = 1; k <= 12; ++k) levels.push_back(1.0 - std::pow(10.0, -k));

  std::vector<double> breaks;
  for (const double u : levels) breaks.push_back(quantile(law, u));
  std::sort(breaks.begin(), breaks.end());

  const auto integrand = [&](double x) {
    const double f = law.pdf(x);
    if (!(f > 0.0) || !std::isfinite(f)) return 0.0;
    return -f * std::log(f);
  };
  return quadrature::integrate(integrand, breaks);
}

double h_tilde(const Law& law) { return catalog_value(law, CatalogQuantity::HTilde); }

double h_hat(const Law& law) { return catalog_value(law, CatalogQuantity::HHat); }

double h_bar(const Law& law) { return catalog_value(law, CatalogQuantity::HBar); }

double H_tilde(const Law& law) {
  const DiscreteLaw view = law.discrete_view();
  if (view.is_degenerate()) throw DegenerateLawError("H_tilde: single-atom law");
  const auto xs = view.support();
  const auto ps = view.masses();

  double min_gap = xs[1] - xs[0];
  for (std::size_t k = 2; k < xs.size(); ++k) min_gap = std::min(min_gap, xs[k] - xs[k - 1]);

  detail::CompensatedSum sum;
  sum.add(shannon_H(law));
  sum.add(ps[0] * std::log(min_gap));
  for (std::size_t k = 1; k < xs.size(); ++k) sum.add(ps[k] * std::log(xs[k] - xs[k - 1]));
  sum.add(-std::log(rho_tilde(law)));
  return sum.value();
}

double poisson_H_exact(double lam) {
  if (!(lam > 0.0) || !std::isfinite(lam)) throw DomainError("poisson: lam must be > 0");
  // The series is summed as c + sum_k p_k (ln k! - c) with c = ln m!, m the
  // mode, and p_k generated by recurrence from p_m; sum_k p_k = 1 exactly.
  // Centring keeps rounding in the masses from being amplified by ln k!.
  const double ln_lam = std::log(lam);
  const int mode = static_cast<int>(std::floor(lam));
  const double c = special::ln_gamma(mode + 1.0);
  const double p_mode = std::exp(-lam + mode * ln_lam - c);

  detail::CompensatedSum centred;
  double p = p_mode;
  double d = 0.0;  // ln k! - c
  for (int k = mode; k >= 1 && p > 0.0; --k) {
    centred.add(p * d);
    p *= k / lam;
    d -= std::log(static_cast<double>(k));
  }
  if (mode >= 1 && p > 0.0) centred.add(p * d);

  const int k_min = std::max(2, static_cast<int>(std::ceil(lam)));
  const int k_max = static_cast<int>(lam + 60.0 * std::sqrt(lam) + 1000.0);
  p = p_mode;
  d = 0.0;
  for (int k = mode + 1; k <= k_max; ++k) {
    p *= lam / k;
    d += std::log(static_cast<double>(k));
    centred.add(p * d);
    // Stop once p_k ln k! is negligible against the series total.
    if (k >= k_min && p * (c + d) <= kSeriesRelTol * (c + centred.value())) break;
  }
  return lam * (1.0 - ln_lam) + c + centred.value();
}

double poisson_H_asymptotic(double lam) {
  if (!(lam > 0.0)) throw DomainError("poisson: lam must be > 0");
  return 0.5 * std::log(kTwoPiE * lam) - 1.0 / (12.0 * lam) - 1.0 / (24.0 * lam * lam) -
         19.0 / (360.0 * lam * lam * lam);
}

double binomial_H_asymptotic(int n, double p) {
  if (n < 1) throw DomainError("binomial: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("binomial: p must lie in (0, 1)");
  const double pq = p * (1.0 - p);
  const double npq = n * pq;
  return 0.5 * std::log(kTwoPiE * npq) + (4.0 * pq - 1.0) / (12.0 * npq);
}

double gamma_ratio(const Law& law) {
  const auto var = law.variance();
  if (!var) throw NoVarianceError("gamma_ratio: law has no finite variance");
  if (!(*var > 0.0)) throw DegenerateLawError("gamma_ratio: zero variance");
  const double rho = iqrr(law);
  if (!(rho > 0.0)) throw DegenerateLawError("gamma_ratio: zero interquartile range");
  return rho / std::sqrt(*var);
}

double catalog_closed_form(Family family, std::optional<double> shape, CatalogQuantity which) {
  using std::numbers::ln2;
  using std::numbers::pi;
  const bool shaped = family == Family::Gamma || family == Family::Student;
  if (shaped && !(shape && *shape > 0.0)) {
    throw DomainError("catalog_closed_form: shape parameter required");
  }
  const double half_ln_two_pi_e = 0.5 * std::log(kTwoPiE);
  switch (family) {
    case Family::Gaussian: {
      const double iqr = 2.0 * special::std_normal_quantile(0.75);
      switch (which) {
        case CatalogQuantity::HTilde: return half_ln_two_pi_e - std::log(iqr);
        case CatalogQuantity::HHat: return 0.0;
        case CatalogQuantity::HBar: return half_ln_two_pi_e;
      }
      break;
    }
    case Family::Uniform:
      switch (which) {
        case CatalogQuantity::HTilde: return ln2;
        case CatalogQuantity::HHat: return 0.5 * std::log(pi * std::numbers::e / 6.0);
        case CatalogQuantity::HBar: return 0.0;
      }
      break;
    case Family::Exponential:
      switch (which) {
        case CatalogQuantity::HTilde: return 1.0 - std::log(std::log(3.0));
        case CatalogQuantity::HHat: return 0.5 * std::log(2.0 * pi / std::numbers::e);
        case CatalogQuantity::HBar: return 1.0;
      }
      break;
    case Family::Laplace:
      switch (which) {
        case CatalogQuantity::HTilde: return 1.0 - std::log(ln2);
        case CatalogQuantity::HHat: return 0.5 * std::log(pi / std::numbers::e);
        case CatalogQuantity::HBar: return 1.0 + ln2;
      }
      break;
    case Family::Cauchy:
      switch (which) {
        case CatalogQuantity::HTilde: return std::log(2.0 * pi);
        case CatalogQuantity::HHat:
          throw NoVarianceError("h_hat: the Cauchy law has no variance");
        case CatalogQuantity::HBar: return std::log(4.0 * pi);
      }
      break;
    case Family::Gamma: {
      const double lam = *shape;
      switch (which) {
        case CatalogQuantity::HTilde: {
          const double iqr =
              special::reg_gamma_quantile(lam, 0.75) - special::reg_gamma_quantile(lam, 0.25);
          return gamma_h_bar(lam) - std::log(iqr);
        }
        case CatalogQuantity::HHat:
          return 0.5 * std::log(kTwoPiE * lam) - gamma_h_bar(lam);
        case CatalogQuantity::HBar: return gamma_h_bar(lam);
      }
      break;
    }
    case Family::Student: {
      const double lam = *shape;
      switch (which) {
        case CatalogQuantity::HTilde: return student_h_bar(lam) - std::log(student_unit_iqrr(lam));
        case CatalogQuantity::HHat:
          if (!(lam > 2.0)) {
            throw NoVarianceError("h_hat: the Student law has no variance for lam <= 2");
          }
          return 0.5 * std::log(kTwoPiE / (lam - 2.0)) - student_h_bar(lam);
        case CatalogQuantity::HBar: return student_h_bar(lam);
      }
      break;
    }
  }
  throw UnsupportedError("catalog_closed_form: unsupported family");
}

EntropyReport entropy_report(const Law& law) {
  EntropyReport report{law, {}, {}, {}, {}, {}, {}, {}, {}, {}};
  const auto record = [&](const Error& e) {
    if (!report.error) {
      report.error = e.kind();
      report.message = e.what();
    }
  };
  const auto attempt = [&](auto&& fn) {
    try {
      fn();
    } catch (const DegenerateLawError& e) {
      record(e);
    } catch (const NoVarianceError& e) {
      record(e);
    }
  };

  switch (law.kind()) {
    case LawKind::Discrete: {
      const auto& base = underlying_discrete(law);
      const bool poisson = std::holds_alternative<PoissonTag>(base.tag());
      const auto how = poisson ? Provenance::Series : Provenance::Analytic;
      if (poisson) {
        report.H = Valued{poisson_H_exact(std::get<PoissonTag>(base.tag()).lam), how};
      } else {
        report.H = Valued{shannon_H(law), how};
      }
      attempt([&] {
        report.rho_tilde = rho_tilde(law);
        report.H_tilde = Valued{H_tilde(law), how};
      });
      break;
    }
    case LawKind::Continuous: {
      report.h = Valued{differential_h(law), Provenance::Analytic};
      attempt([&] {
        report.rho_tilde = rho_tilde(law);
        report.h_tilde = Valued{h_tilde(law), Provenance::Analytic};
      });
      attempt([&] { report.h_hat = Valued{h_hat(law), Provenance::Analytic}; });
      report.h_bar = Valued{h_bar(law), Provenance::Analytic};
      break;
    }
    case LawKind::Mixture:
      try {
        report.rho_tilde = rho_tilde_mixture(law);
      } catch (const StructureError&) {
      }
      break;
  }
  return report;
}

}  // namespace rentropy
