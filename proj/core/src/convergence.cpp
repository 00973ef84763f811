#include "rentropy/convergence.hpp"

#include <cmath>
#include <numbers>

#include "rentropy/entropy.hpp"
#include "rentropy/errors.hpp"
#include "rentropy/laws.hpp"

namespace rentropy {
namespace {

constexpr double kIdentityTolerance = 1e-10;

template <typename T>
void require_increasing(const std::vector<T>& xs, const char* what) {
  if (xs.empty()) throw DomainError(std::string(what) + ": empty index grid");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw DomainError(std::string(what) + ": grid must increase");
  }
}

TracePoint point_for(double index, const Law& law, double H, double target) {
  const double plain = H_tilde(law);
  const double standardized = H_tilde(Law::standardize(law));
  if (std::abs(plain - standardized) > kIdentityTolerance) {
    throw ConsistencyError("standardized and plain H_tilde disagree at index " +
                           format_number(index));
  }
  return {index, H, plain, standardized, std::abs(plain - target)};
}

}  // namespace

const std::vector<int>& default_ns() {
  static const std::vector<int> ns{16, 32, 64, 128, 256, 512, 1024};
  return ns;
}

const std::vector<double>& default_lams() {
  static const std::vector<double> lams{4, 8, 16, 32, 64, 128, 256};
  return lams;
}

ConvergenceTrace trace_binomial(double p, const std::vector<int>& ns) {
  require_increasing(ns, "trace_binomial");
  const double target = catalog_closed_form(Family::Gaussian, std::nullopt, CatalogQuantity::HTilde);
  ConvergenceTrace trace{"binomial:p=" + format_number(p), target, {}};
  for (const int n : ns) {
    const Law law = DiscreteLaw::binomial(n, p);
    trace.points.push_back(point_for(n, law, shannon_H(law), target));
  }
  return trace;
}

ConvergenceTrace trace_poisson(const std::vector<double>& lams) {
  require_increasing(lams, "trace_poisson");
  const double target = catalog_closed_form(Family::Gaussian, std::nullopt, CatalogQuantity::HTilde);
  ConvergenceTrace trace{"poisson", target, {}};
  for (const double lam : lams) {
    const Law law = DiscreteLaw::poisson(lam);
    const double series = poisson_H_exact(lam);
    if (std::abs(series - shannon_H(law)) > kIdentityTolerance) {
      throw ConsistencyError("Poisson series and truncated-law entropies disagree at lam " +
                             format_number(lam));
    }
    trace.points.push_back(point_for(lam, law, series, target));
  }
  return trace;
}

ConvergenceTrace trace_discrete_uniform(double a, const std::vector<int>& ns) {
  require_increasing(ns, "trace_discrete_uniform");
  if (ns.front() < 4) throw DomainError("trace_discrete_uniform: n must be >= 4");
  const double target = std::numbers::ln2;
  ConvergenceTrace trace{"duniform:a=" + format_number(a), target, {}};
  for (const int n : ns) {
    const Law law = DiscreteLaw::discrete_uniform(n, a);
    trace.points.push_back(point_for(n, law, shannon_H(law), target));
  }
  return trace;
}

}  // namespace rentropy
