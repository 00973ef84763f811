#include "rentropy/laws.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "detail/summation.hpp"
#include "rentropy/errors.hpp"
#include "rentropy/special_fn.hpp"

namespace rentropy {
namespace {

constexpr double kMassSumTolerance = 1e-12;
constexpr double kPoissonTail = 1e-15;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

// tan(pi * u) for |u| < 1/2, correcting for the rounding of pi and of the
// product so that quarter points land on +-1 exactly.
double tan_pi(double u) {
  constexpr double pi_lo = 1.2246467991473532e-16;  // pi - double(pi)
  const double x = std::numbers::pi * u;
  const double err = std::fma(std::numbers::pi, u, -x) + pi_lo * u;
  const double t = std::tan(x);
  return t + err * (1.0 + t * t);
}

// Upper-tail quantile of the Student law with unit scale: u > 0 with
// P(U > u) = tail, 0 < tail < 1/2. Uses P(U > u) = I_{1/(1+u^2)}(lam/2, 1/2)/2.
double student_upper(double lam, double tail) {
  const double q = 2.0 * tail;
  const double x = special::reg_beta_quantile(0.5 * lam, 0.5, q);
  if (x < 0.9) return std::sqrt((1.0 - x) / x);
  // Near the centre solve for y = 1 - x = u^2/(1+u^2) directly.
  const double y = special::reg_beta_quantile(0.5, 0.5 * lam, 1.0 - q);
  return std::sqrt(y / (1.0 - y));
}

double student_tail(double lam, double u_abs) {
  const double u2 = u_abs * u_abs;
  const double x = 1.0 / (1.0 + u2);
  if (x < 0.9) return 0.5 * special::reg_beta_cdf(0.5 * lam, 0.5, x);
  const double y = u2 / (1.0 + u2);
  return 0.5 * (1.0 - special::reg_beta_cdf(0.5, 0.5 * lam, y));
}

}  // namespace

const char* family_name(Family family) noexcept {
  switch (family) {
    case Family::Gaussian: return "gaussian";
    case Family::Uniform: return "uniform";
    case Family::Gamma: return "gamma";
    case Family::Exponential: return "exponential";
    case Family::Laplace: return "laplace";
    case Family::Student: return "student";
    case Family::Cauchy: return "cauchy";
  }
  return "unknown";
}

std::string format_number(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

// ---------------------------------------------------------------------------
// ContinuousFamily
// ---------------------------------------------------------------------------

ContinuousFamily ContinuousFamily::gaussian(double a) {
  require_positive(a, "gaussian: a");
  return {Family::Gaussian, 0.0, a};
}
ContinuousFamily ContinuousFamily::uniform(double a) {
  require_positive(a, "uniform: a");
  return {Family::Uniform, 0.0, a};
}
ContinuousFamily ContinuousFamily::gamma(double lam, double a) {
  require_positive(lam, "gamma: lam");
  require_positive(a, "gamma: a");
  return {Family::Gamma, lam, a};
}
ContinuousFamily ContinuousFamily::exponential(double a) {
  require_positive(a, "exponential: a");
  return {Family::Exponential, 1.0, a};
}
ContinuousFamily ContinuousFamily::laplace(double a) {
  require_positive(a, "laplace: a");
  return {Family::Laplace, 0.0, a};
}
ContinuousFamily ContinuousFamily::student(double lam, double a) {
  require_positive(lam, "student: lam");
  require_positive(a, "student: a");
  return {Family::Student, lam, a};
}
ContinuousFamily ContinuousFamily::cauchy(double a) {
  require_positive(a, "cauchy: a");
  return {Family::Cauchy, 1.0, a};
}

std::optional<double> ContinuousFamily::shape() const noexcept {
  switch (family_) {
    case Family::Gamma:
    case Family::Student:
    case Family::Exponential:
    case Family::Cauchy:
      return shape_;
    default:
      return std::nullopt;
  }
}

double ContinuousFamily::pdf(double x) const {
  const double a = scale_;
  const double u = x / a;
  switch (family_) {
    case Family::Gaussian:
      return std::exp(-0.5 * u * u) / (a * std::sqrt(2.0 * std::numbers::pi));
    case Family::Uniform:
      return (x >= 0.0 && x <= a) ? 1.0 / a : 0.0;
    case Family::Gamma:
      return special::gamma_density(shape_, u) / a;
    case Family::Exponential:
      return x < 0.0 ? 0.0 : std::exp(-u) / a;
    case Family::Laplace:
      return std::exp(-std::abs(u)) / (2.0 * a);
    case Family::Student:
      return std::exp(-0.5 * (shape_ + 1.0) * std::log1p(u * u) -
                      special::ln_beta(0.5, 0.5 * shape_)) /
             a;
    case Family::Cauchy:
      return 1.0 / (a * std::numbers::pi * (1.0 + u * u));
  }
  return 0.0;
}

double ContinuousFamily::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  const double u = x / scale_;
  switch (family_) {
    case Family::Gaussian:
      return special::std_normal_cdf(u);
    case Family::Uniform:
      return std::clamp(u, 0.0, 1.0);
    case Family::Gamma:
      return u <= 0.0 ? 0.0 : special::reg_gamma_cdf(shape_, u);
    case Family::Exponential:
      return u <= 0.0 ? 0.0 : -std::expm1(-u);
    case Family::Laplace:
      return u < 0.0 ? 0.5 * std::exp(u) : 1.0 - 0.5 * std::exp(-u);
    case Family::Student: {
      if (std::isinf(u)) return u > 0.0 ? 1.0 : 0.0;
      const double tail = student_tail(shape_, std::abs(u));
      return u > 0.0 ? 1.0 - tail : tail;
    }
    case Family::Cauchy:
      return std::atan2(1.0, -u) / std::numbers::pi;
  }
  return 0.0;
}

double ContinuousFamily::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0, 1)");
  const double a = scale_;
  switch (family_) {
    case Family::Gaussian:
      return a * special::std_normal_quantile(p);
    case Family::Uniform:
      return a * p;
    case Family::Gamma:
      return a * special::reg_gamma_quantile(shape_, p);
    case Family::Exponential:
      return -a * std::log1p(-p);
    case Family::Laplace:
      return p < 0.5 ? a * std::log(2.0 * p) : -a * std::log(2.0 * (1.0 - p));
    case Family::Student: {
      if (p == 0.5) return 0.0;
      const double tail = p < 0.5 ? p : 1.0 - p;
      const double u = student_upper(shape_, tail);
      return p < 0.5 ? -a * u : a * u;
    }
    case Family::Cauchy:
      return a * tan_pi(p - 0.5);
  }
  return 0.0;
}

std::optional<double> ContinuousFamily::mean() const {
  const double a = scale_;
  switch (family_) {
    case Family::Gaussian:
    case Family::Laplace:
      return 0.0;
    case Family::Uniform:
      return 0.5 * a;
    case Family::Gamma:
      return shape_ * a;
    case Family::Exponential:
      return a;
    case Family::Student:
      if (shape_ > 1.0) return 0.0;
      return std::nullopt;
    case Family::Cauchy:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> ContinuousFamily::variance() const {
  const double a2 = scale_ * scale_;
  switch (family_) {
    case Family::Gaussian:
      return a2;
    case Family::Uniform:
      return a2 / 12.0;
    case Family::Gamma:
      return shape_ * a2;
    case Family::Exponential:
      return a2;
    case Family::Laplace:
      return 2.0 * a2;
    case Family::Student:
      if (shape_ > 2.0) return a2 / (shape_ - 2.0);
      return std::nullopt;
    case Family::Cauchy:
      return std::nullopt;
  }
  return std::nullopt;
}

double ContinuousFamily::entropy() const {
  const double ln_a = std::log(scale_);
  constexpr double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  switch (family_) {
    case Family::Gaussian:
      return ln_a + 0.5 * std::log(two_pi_e);
    case Family::Uniform:
      return ln_a;
    case Family::Gamma:
      return (1.0 - shape_) * special::digamma(shape_) + ln_a + shape_ +
             special::ln_gamma(shape_);
    case Family::Exponential:
      return 1.0 + ln_a;
    case Family::Laplace:
      return std::numbers::ln2 + 1.0 + ln_a;
    case Family::Student: {
      const double half = 0.5 * (shape_ + 1.0);
      return half * (special::digamma(half) - special::digamma(0.5 * shape_)) +
             ln_a + special::ln_beta(0.5, 0.5 * shape_);
    }
    case Family::Cauchy:
      return std::log(4.0 * std::numbers::pi) + ln_a;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// DiscreteLaw
// ---------------------------------------------------------------------------

DiscreteLaw::DiscreteLaw(DiscreteTag tag, std::vector<double> support,
                         std::vector<double> masses, std::vector<double> cumulative)
    : tag_(std::move(tag)),
      support_(std::move(support)),
      masses_(std::move(masses)),
      cumulative_(std::move(cumulative)) {}

DiscreteLaw DiscreteLaw::build(DiscreteTag tag, std::vector<double> support,
                               std::vector<double> masses,
                               std::vector<double> cumulative) {
  if (support.empty() || support.size() != masses.size()) {
    throw DomainError("discrete law: support and masses must be nonempty and equal-sized");
  }
  if (!cumulative.empty() && cumulative.size() != masses.size()) {
    throw DomainError("discrete law: cumulative size mismatch");
  }
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (!std::isfinite(support[k])) throw DomainError("discrete law: support must be finite");
    if (k > 0 && !(support[k] > support[k - 1])) {
      throw DomainError("discrete law: support must be strictly increasing");
    }
    if (!(masses[k] >= 0.0) || !std::isfinite(masses[k])) {
      throw DomainError("discrete law: masses must be finite and >= 0");
    }
  }

  // Drop zero-mass atoms.
  std::vector<double> xs;
  std::vector<double> ps;
  std::vector<double> cs;
  detail::CompensatedSum running;
  for (std::size_t k = 0; k < support.size(); ++k) {
    running.add(masses[k]);
    if (masses[k] == 0.0) continue;
    xs.push_back(support[k]);
    ps.push_back(masses[k]);
    cs.push_back(cumulative.empty() ? running.value() : cumulative[k]);
  }
  if (xs.empty()) throw DomainError("discrete law: all masses are zero");
  if (std::abs(running.value() - 1.0) > kMassSumTolerance) {
    throw DomainError("discrete law: masses must sum to 1 (sum = " +
                      format_number(running.value()) + ")");
  }
  return DiscreteLaw(std::move(tag), std::move(xs), std::move(ps), std::move(cs));
}

DiscreteLaw DiscreteLaw::binomial(int n, double p) {
  if (n < 1) throw DomainError("binomial: n must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("binomial: p must lie in (0, 1)");
  std::vector<double> support(n + 1);
  std::vector<double> masses(n + 1);
  if (n <= 50) {
    // C(n, k) stays an exact integer in double for n <= 50.
    double coefficient = 1.0;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) coefficient = coefficient * (n - k + 1) / k;
      support[k] = k;
      masses[k] = coefficient * std::pow(p, k) * std::pow(1.0 - p, n - k);
    }
  } else {
    const double ln_n_fact = special::ln_gamma(n + 1.0);
    const double ln_p = std::log(p);
    const double ln_q = std::log1p(-p);
    detail::CompensatedSum total;
    for (int k = 0; k <= n; ++k) {
      support[k] = k;
      masses[k] = std::exp(ln_n_fact - special::ln_gamma(k + 1.0) -
                           special::ln_gamma(n - k + 1.0) + k * ln_p + (n - k) * ln_q);
      total.add(masses[k]);
    }
    const double norm = total.value();
    for (double& m : masses) m /= norm;
  }
  return build(BinomialTag{n, p}, std::move(support), std::move(masses));
}

DiscreteLaw DiscreteLaw::poisson(double lam) {
  require_positive(lam, "poisson: lam");
  // Smallest K with P(X > K) = P(K + 1, lam) < 1e-15, scanning up from the mean.
  int truncation = static_cast<int>(std::floor(lam));
  while (special::reg_gamma_cdf(truncation + 1.0, lam) >= kPoissonTail) ++truncation;

  std::vector<double> support(truncation + 1);
  std::vector<double> masses(truncation + 1);
  const double ln_lam = std::log(lam);
  for (int k = 0; k <= truncation; ++k) {
    support[k] = k;
    masses[k] = std::exp(-lam + k * ln_lam - special::ln_gamma(k + 1.0));
  }
  return build(PoissonTag{lam, truncation}, std::move(support), std::move(masses));
}

DiscreteLaw DiscreteLaw::discrete_uniform(int n, double a) {
  if (n < 1) throw DomainError("duniform: n must be >= 1");
  require_positive(a, "duniform: a");
  std::vector<double> support(n);
  std::vector<double> masses(n, 1.0 / n);
  std::vector<double> cumulative(n);
  for (int k = 1; k <= n; ++k) {
    support[k - 1] = k * a / n;
    cumulative[k - 1] = static_cast<double>(k) / n;
  }
  return build(DiscreteUniformTag{n, a}, std::move(support), std::move(masses),
               std::move(cumulative));
}

DiscreteLaw DiscreteLaw::explicit_law(std::vector<double> support, std::vector<double> masses) {
  return build(ExplicitTag{}, std::move(support), std::move(masses));
}

DiscreteLaw DiscreteLaw::degenerate(double at) {
  return build(ExplicitTag{}, {at}, {1.0}, {1.0});
}

double DiscreteLaw::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: NaN argument");
  const auto it = std::upper_bound(support_.begin(), support_.end(), x);
  const auto count = it - support_.begin();
  return count == 0 ? 0.0 : cumulative_[count - 1];
}

double DiscreteLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0, 1)");
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), p);
  if (it == cumulative_.end()) return support_.back();
  return support_[it - cumulative_.begin()];
}

double DiscreteLaw::mean() const {
  if (const auto* b = std::get_if<BinomialTag>(&tag_)) return b->n * b->p;
  if (const auto* u = std::get_if<DiscreteUniformTag>(&tag_)) {
    return u->a * (u->n + 1.0) / (2.0 * u->n);
  }
  if (const auto* po = std::get_if<PoissonTag>(&tag_)) return po->lam;
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < size(); ++k) sum.add(masses_[k] * support_[k]);
  return sum.value();
}

double DiscreteLaw::variance() const {
  if (const auto* b = std::get_if<BinomialTag>(&tag_)) return b->n * b->p * (1.0 - b->p);
  if (const auto* u = std::get_if<DiscreteUniformTag>(&tag_)) {
    const double n = u->n;
    return u->a * u->a * (n * n - 1.0) / (12.0 * n * n);
  }
  if (const auto* po = std::get_if<PoissonTag>(&tag_)) return po->lam;
  const double mu = mean();
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < size(); ++k) {
    const double d = support_[k] - mu;
    sum.add(masses_[k] * d * d);
  }
  return sum.value();
}

DiscreteLaw DiscreteLaw::mapped(double scale, double shift) const {
  require_positive(scale, "affine: a");
  std::vector<double> xs(support_.size());
  for (std::size_t k = 0; k < xs.size(); ++k) xs[k] = scale * support_[k] + shift;
  return DiscreteLaw(ExplicitTag{}, std::move(xs), masses_, cumulative_);
}

// ---------------------------------------------------------------------------
// Law
// ---------------------------------------------------------------------------

Law::Law(ContinuousFamily family)
    : node_(std::make_shared<const LawNode>(LawNode{std::move(family)})) {}

Law::Law(DiscreteLaw law) : node_(std::make_shared<const LawNode>(LawNode{std::move(law)})) {}

Law Law::affine(const Law& base, double scale, double shift) {
  require_positive(scale, "affine: a");
  if (!std::isfinite(shift)) throw DomainError("affine: b must be finite");
  if (const auto* inner = base.as_affine()) {
    return affine(inner->base, scale * inner->scale, scale * inner->shift + shift);
  }
  if (const auto* mix = base.as_mixture()) {
    std::vector<MixtureComponent> mapped;
    for (const auto& c : mix->components) {
      mapped.push_back({c.weight, affine(c.law, scale, shift)});
    }
    return mixture(mapped);
  }
  return Law(std::make_shared<const LawNode>(LawNode{AffineLaw{base, scale, shift}}));
}

Law Law::mixture(const std::vector<MixtureComponent>& components) {
  if (components.empty()) throw StructureError("mixture: at least one component required");
  std::vector<MixtureComponent> flat;
  detail::CompensatedSum total;
  for (const auto& c : components) {
    if (!(c.weight > 0.0 && c.weight <= 1.0)) {
      throw DomainError("mixture: weights must lie in (0, 1]");
    }
    total.add(c.weight);
    if (const auto* inner = c.law.as_mixture()) {
      for (const auto& sub : inner->components) {
        flat.push_back({c.weight * sub.weight, sub.law});
      }
    } else {
      flat.push_back(c);
    }
  }
  if (std::abs(total.value() - 1.0) > kMassSumTolerance) {
    throw DomainError("mixture: weights must sum to 1");
  }
  return Law(std::make_shared<const LawNode>(LawNode{MixtureLaw{std::move(flat)}}));
}

Law Law::standardize(const Law& base) {
  const auto var = base.variance();
  const auto mu = base.mean();
  if (!var || !mu) throw NoVarianceError("standardize: law has no finite variance");
  if (!(*var > 0.0)) throw DegenerateLawError("standardize: variance is zero");
  const double sigma = std::sqrt(*var);
  return affine(base, 1.0 / sigma, -*mu / sigma);
}

LawKind Law::kind() const {
  if (as_family()) return LawKind::Continuous;
  if (as_discrete()) return LawKind::Discrete;
  if (const auto* aff = as_affine()) return aff->base.kind();
  return LawKind::Mixture;
}

const ContinuousFamily* Law::as_family() const noexcept {
  return std::get_if<ContinuousFamily>(&node_->value);
}
const DiscreteLaw* Law::as_discrete() const noexcept {
  return std::get_if<DiscreteLaw>(&node_->value);
}
const AffineLaw* Law::as_affine() const noexcept {
  return std::get_if<AffineLaw>(&node_->value);
}
const MixtureLaw* Law::as_mixture() const noexcept {
  return std::get_if<MixtureLaw>(&node_->value);
}

DiscreteLaw Law::discrete_view() const {
  if (const auto* d = as_discrete()) return *d;
  if (const auto* aff = as_affine()) {
    if (const auto* d = aff->base.as_discrete()) return d->mapped(aff->scale, aff->shift);
  }
  throw StructureError("expected a discrete law");
}

double Law::cdf(double x) const {
  if (const auto* f = as_family()) return f->cdf(x);
  if (const auto* d = as_discrete()) return d->cdf(x);
  if (const auto* aff = as_affine()) {
    if (const auto* d = aff->base.as_discrete()) {
      // Count atoms with scale * x_k + shift <= x, matching discrete_view().
      const auto xs = d->support();
      const auto it = std::partition_point(xs.begin(), xs.end(), [&](double xk) {
        return aff->scale * xk + aff->shift <= x;
      });
      const auto count = it - xs.begin();
      return count == 0 ? 0.0 : d->cumulative()[count - 1];
    }
    return aff->base.cdf((x - aff->shift) / aff->scale);
  }
  const auto& mix = *as_mixture();
  detail::CompensatedSum sum;
  for (const auto& c : mix.components) sum.add(c.weight * c.law.cdf(x));
  return std::clamp(sum.value(), 0.0, 1.0);
}

double Law::pdf(double x) const {
  if (const auto* f = as_family()) return f->pdf(x);
  if (const auto* aff = as_affine()) {
    if (aff->base.as_family()) return aff->base.pdf((x - aff->shift) / aff->scale) / aff->scale;
  }
  throw StructureError("pdf: law has no density");
}

std::optional<double> Law::mean() const {
  if (const auto* f = as_family()) return f->mean();
  if (const auto* d = as_discrete()) return d->mean();
  if (const auto* aff = as_affine()) {
    const auto m = aff->base.mean();
    if (!m) return std::nullopt;
    return aff->scale * *m + aff->shift;
  }
  detail::CompensatedSum sum;
  for (const auto& c : as_mixture()->components) {
    const auto m = c.law.mean();
    if (!m) return std::nullopt;
    sum.add(c.weight * *m);
  }
  return sum.value();
}

std::optional<double> Law::variance() const {
  if (const auto* f = as_family()) return f->variance();
  if (const auto* d = as_discrete()) return d->variance();
  if (const auto* aff = as_affine()) {
    const auto v = aff->base.variance();
    if (!v) return std::nullopt;
    return aff->scale * aff->scale * *v;
  }
  // Law of total variance over the components.
  const auto mu = mean();
  if (!mu) return std::nullopt;
  detail::CompensatedSum sum;
  for (const auto& c : as_mixture()->components) {
    const auto v = c.law.variance();
    const auto m = c.law.mean();
    if (!v || !m) return std::nullopt;
    const double d = *m - *mu;
    sum.add(c.weight * (*v + d * d));
  }
  return sum.value();
}

std::string Law::describe() const {
  if (const auto* f = as_family()) {
    std::string s = family_name(f->family());
    s += ':';
    if (f->family() == Family::Gamma || f->family() == Family::Student) {
      s += "lam=" + format_number(*f->shape()) + ',';
    }
    return s + "a=" + format_number(f->scale());
  }
  if (const auto* d = as_discrete()) {
    return std::visit(
        [&](const auto& tag) -> std::string {
          using T = std::decay_t<decltype(tag)>;
          if constexpr (std::is_same_v<T, BinomialTag>) {
            return "binomial:n=" + std::to_string(tag.n) + ",p=" + format_number(tag.p);
          } else if constexpr (std::is_same_v<T, PoissonTag>) {
            return "poisson:lam=" + format_number(tag.lam);
          } else if constexpr (std::is_same_v<T, DiscreteUniformTag>) {
            return "duniform:n=" + std::to_string(tag.n) + ",a=" + format_number(tag.a);
          } else {
            if (d->is_degenerate() && d->support()[0] > 0.0) {
              return "duniform:n=1,a=" + format_number(d->support()[0]);
            }
            return "explicit(" + std::to_string(d->size()) + " atoms)";
          }
        },
        d->tag());
  }
  if (const auto* aff = as_affine()) {
    return aff->base.describe() + "|affine:a=" + format_number(aff->scale) +
           ",b=" + format_number(aff->shift);
  }
  const auto& comps = as_mixture()->components;
  if (comps.size() == 2) {
    return "mix:q=" + format_number(comps[0].weight) + ",(" + comps[0].law.describe() +
           "),(" + comps[1].law.describe() + ")";
  }
  std::string s = "mix";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    s += (i == 0 ? ":" : ",");
    s += "q=" + format_number(comps[i].weight) + ",(" + comps[i].law.describe() + ")";
  }
  return s;
}

}  // namespace rentropy
