#include "rentropy/quantiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "detail/summation.hpp"
#include "rentropy/errors.hpp"

namespace rentropy {
namespace {

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0, 1)");
}

struct DiscretePart {
  double weight;
  DiscreteLaw law;
};

struct ContinuousPart {
  double weight;
  Law law;
};

struct Split {
  std::vector<DiscretePart> discrete;
  std::vector<ContinuousPart> continuous;
};

Split split_components(const MixtureLaw& mix) {
  Split split;
  for (const auto& c : mix.components) {
    if (c.law.kind() == LawKind::Discrete) {
      split.discrete.push_back({c.weight, c.law.discrete_view()});
    } else {
      split.continuous.push_back({c.weight, c.law});
    }
  }
  return split;
}

// Mass of the discrete parts strictly below x and exactly at x.
std::pair<double, double> discrete_mass(const Split& split, double x) {
  detail::CompensatedSum below;
  detail::CompensatedSum at;
  for (const auto& d : split.discrete) {
    const auto xs = d.law.support();
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    const auto k = it - xs.begin();
    if (k > 0) below.add(d.weight * d.law.cumulative()[k - 1]);
    if (it != xs.end() && *it == x) at.add(d.weight * d.law.masses()[k]);
  }
  return {below.value(), at.value()};
}

double continuous_cdf(const Split& split, double x) {
  detail::CompensatedSum sum;
  for (const auto& c : split.continuous) sum.add(c.weight * c.law.cdf(x));
  return sum.value();
}

std::vector<double> sorted_atoms(const Split& split) {
  std::vector<double> atoms;
  for (const auto& d : split.discrete) {
    atoms.insert(atoms.end(), d.law.support().begin(), d.law.support().end());
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

double mixture_quantile(const MixtureLaw& mix, double p) {
  const Split split = split_components(mix);
  const auto atoms = sorted_atoms(split);

  // First atom a with F(a) >= p. If F(a-) < p as well, Q(p) = a.
  const auto first = std::partition_point(atoms.begin(), atoms.end(), [&](double a) {
    const auto [below, at] = discrete_mass(split, a);
    return below + at + continuous_cdf(split, a) < p;
  });
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double hi = first == atoms.end() ? inf : *first;
  const double lo = first == atoms.begin() ? -inf : *(first - 1);
  if (first != atoms.end()) {
    const auto [below, at] = discrete_mass(split, hi);
    if (below + continuous_cdf(split, hi) < p) return hi;
  }

  // Otherwise Q(p) lies in (lo, hi), where the discrete parts are constant.
  double cont_weight = 0.0;
  for (const auto& c : split.continuous) cont_weight += c.weight;
  if (split.continuous.empty() || cont_weight <= 0.0) {
    return first == atoms.end() ? atoms.back() : hi;
  }
  double below_lo = 0.0;
  if (first != atoms.begin()) {
    const auto [below, at] = discrete_mass(split, lo);
    below_lo = below + at;
  }
  constexpr double tiny = std::numeric_limits<double>::min();
  const double t =
      std::clamp((p - below_lo) / cont_weight, tiny, 1.0 - std::numeric_limits<double>::epsilon());

  if (split.continuous.size() == 1) {
    return std::clamp(quantile(split.continuous.front().law, t), lo, hi);
  }

  // Several continuous parts: the solution lies between the smallest and
  // the largest component quantile at level t.
  double left = inf;
  double right = -inf;
  for (const auto& c : split.continuous) {
    const double q = quantile(c.law, t);
    left = std::min(left, q);
    right = std::max(right, q);
  }
  left = std::max(left, lo);
  right = std::min(right, hi);
  const double target = p - below_lo;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (left + right);
    if (!(mid > left && mid < right)) break;
    if (continuous_cdf(split, mid) >= target) {
      right = mid;
    } else {
      left = mid;
    }
  }
  return right;
}

// tails[k] = P(X > x_k), summed from the right so that small tails keep
// their relative accuracy instead of being rounded through 1 - F(x_k).
std::vector<double> upper_tails(const DiscreteLaw& law) {
  const auto ms = law.masses();
  std::vector<double> tails(ms.size(), 0.0);
  for (std::size_t k = ms.size() - 1; k > 0; --k) tails[k - 1] = tails[k] + ms[k];
  return tails;
}

// Q(1 - p): the first atom whose upper tail is at most p.
double discrete_upper_quantile(const DiscreteLaw& law, const std::vector<double>& tails,
                               double p) {
  const auto it =
      std::partition_point(tails.begin(), tails.end(), [p](double t) { return t > p; });
  if (it == tails.end()) return law.support().back();
  return law.support()[it - tails.begin()];
}

double discrete_iqnr(const DiscreteLaw& law, double p) {
  return discrete_upper_quantile(law, upper_tails(law), p) - law.quantile(p);
}

// Smallest nonzero rho on (0, 1/4] for a discrete law. rho is piecewise
// constant between the points c_k and the upper tails, so it is evaluated at those
// points, at the midpoints between them and at 1/4.
double discrete_rho_tilde(const DiscreteLaw& law) {
  const auto tails = upper_tails(law);
  std::vector<double> points{0.25};
  for (const double c : law.cumulative()) {
    if (c > 0.0 && c <= 0.25) points.push_back(c);
  }
  for (const double t : tails) {
    if (t > 0.0 && t <= 0.25) points.push_back(t);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const auto rho = [&](double p) {
    return discrete_upper_quantile(law, tails, p) - law.quantile(p);
  };
  double best = std::numeric_limits<double>::infinity();
  double previous = 0.0;
  for (const double point : points) {
    for (const double p : {0.5 * (previous + point), point}) {
      const double value = rho(p);
      if (value > 0.0) best = std::min(best, value);
    }
    previous = point;
  }
  if (!std::isfinite(best)) {
    throw DegenerateLawError("rho_tilde: the interquantile range vanishes identically");
  }
  return best;
}

}  // namespace

double quantile(const Law& law, double p) {
  require_open_unit(p);
  if (const auto* f = law.as_family()) return f->quantile(p);
  if (const auto* d = law.as_discrete()) return d->quantile(p);
  if (const auto* aff = law.as_affine()) {
    return aff->scale * quantile(aff->base, p) + aff->shift;
  }
  return mixture_quantile(*law.as_mixture(), p);
}

double iqnr(const Law& law, double p) {
  if (!(p > 0.0 && p < 0.5)) throw DomainError("iqnr: p must lie in (0, 1/2)");
  if (const auto* d = law.as_discrete()) return discrete_iqnr(*d, p);
  if (const auto* aff = law.as_affine()) {
    if (const auto* d = aff->base.as_discrete()) {
      return aff->scale * discrete_iqnr(*d, p);
    }
  }
  if (1.0 - p == 1.0) throw DomainError("iqnr: p is too small to resolve 1 - p");
  return std::max(0.0, quantile(law, 1.0 - p) - quantile(law, p));
}

double iqrr(const Law& law) { return iqnr(law, 0.25); }

double rho_tilde(const Law& law) {
  switch (law.kind()) {
    case LawKind::Continuous: {
      const double value = iqrr(law);
      if (!(value > 0.0)) throw DegenerateLawError("rho_tilde: zero interquartile range");
      return value;
    }
    case LawKind::Discrete: {
      if (const auto* aff = law.as_affine()) {
        return aff->scale * discrete_rho_tilde(*aff->base.as_discrete());
      }
      return discrete_rho_tilde(*law.as_discrete());
    }
    case LawKind::Mixture:
      break;
  }
  throw StructureError("rho_tilde: mixtures use rho_tilde_mixture");
}

double rho_tilde_mixture(const Law& law) {
  const auto* mix = law.as_mixture();
  if (mix == nullptr || mix->components.size() != 2) {
    throw StructureError("rho_tilde_mixture: expected a two-part mixture");
  }
  const MixtureComponent* discrete = nullptr;
  const MixtureComponent* continuous = nullptr;
  for (const auto& c : mix->components) {
    if (c.law.kind() == LawKind::Discrete) {
      discrete = &c;
    } else if (c.law.kind() == LawKind::Continuous) {
      continuous = &c;
    }
  }
  if (discrete == nullptr || continuous == nullptr) {
    throw StructureError("rho_tilde_mixture: expected one discrete and one continuous part");
  }
  const double rho_d =
      discrete->law.discrete_view().is_degenerate() ? 0.0 : rho_tilde(discrete->law);
  const double rho_c = iqrr(continuous->law);
  return discrete->weight * rho_d + continuous->weight * rho_c;
}

QuantileProfile::QuantileProfile(Law law) : law_(std::move(law)) {
  std::vector<double> points;
  const auto add = [&](double p) {
    if (p > 0.0 && p < 1.0) points.push_back(p);
  };
  switch (law_.kind()) {
    case LawKind::Continuous:
      break;
    case LawKind::Discrete: {
      const DiscreteLaw view = law_.discrete_view();
      for (const double c : view.cumulative()) add(c);
      break;
    }
    case LawKind::Mixture: {
      const Split split = split_components(*law_.as_mixture());
      for (const double a : sorted_atoms(split)) {
        const auto [below, at] = discrete_mass(split, a);
        const double left = below + continuous_cdf(split, a);
        add(left);
        add(left + at);
      }
      break;
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  breakpoints_ = std::move(points);
}

}  // namespace rentropy
