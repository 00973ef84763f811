#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rentropy {

// ---------------------------------------------------------------------------
// Continuous families
// ---------------------------------------------------------------------------

enum class Family { Gaussian, Uniform, Gamma, Exponential, Laplace, Student, Cauchy };

const char* family_name(Family family) noexcept;

/// A continuous law from the catalog. `scale` (a > 0) carries the units of x;
/// `shape` (lambda > 0) is dimensionless and only meaningful for Gamma and
/// Student. Gaussian, Laplace, Student and Cauchy are centred at 0, Uniform
/// lives on [0, a], Gamma and Exponential on [0, inf).
class ContinuousFamily {
 public:
  static ContinuousFamily gaussian(double a);
  static ContinuousFamily uniform(double a);
  static ContinuousFamily gamma(double lam, double a);
  static ContinuousFamily exponential(double a);
  static ContinuousFamily laplace(double a);
  static ContinuousFamily student(double lam, double a);
  static ContinuousFamily cauchy(double a);

  Family family() const noexcept { return family_; }
  double scale() const noexcept { return scale_; }
  /// Shape parameter for Gamma/Student; 1 for Exponential/Cauchy; absent
  /// otherwise.
  std::optional<double> shape() const noexcept;

  double pdf(double x) const;
  double cdf(double x) const;
  /// F^{-1}(p) for 0 < p < 1 (every catalog cdf is strictly increasing on
  /// its support).
  double quantile(double p) const;
  std::optional<double> mean() const;
  std::optional<double> variance() const;
  /// Closed-form differential entropy h (nats).
  double entropy() const;

 private:
  ContinuousFamily(Family family, double shape, double scale)
      : family_(family), shape_(shape), scale_(scale) {}

  Family family_;
  double shape_;
  double scale_;
};

// ---------------------------------------------------------------------------
// Discrete laws
// ---------------------------------------------------------------------------

struct BinomialTag {
  int n;
  double p;
};
struct PoissonTag {
  double lam;
  /// Largest retained index K; the dropped tail has mass < 1e-15.
  int truncation;
};
struct DiscreteUniformTag {
  int n;
  double a;
};
struct ExplicitTag {};

using DiscreteTag = std::variant<BinomialTag, PoissonTag, DiscreteUniformTag, ExplicitTag>;

/// A law concentrated on finitely many points. Atoms with zero mass are not
/// stored, so support() is the set of points carrying positive probability.
class DiscreteLaw {
 public:
  static DiscreteLaw binomial(int n, double p);
  static DiscreteLaw poisson(double lam);
  static DiscreteLaw discrete_uniform(int n, double a);
  /// Support strictly increasing; masses nonnegative and summing to 1 within
  /// 1e-12.
  static DiscreteLaw explicit_law(std::vector<double> support, std::vector<double> masses);
  static DiscreteLaw degenerate(double at);

  const DiscreteTag& tag() const noexcept { return tag_; }
  // Views into the law; not available on temporaries, which would dangle.
  std::span<const double> support() const& noexcept { return support_; }
  std::span<const double> masses() const& noexcept { return masses_; }
  /// cumulative()[k] = F(x_k).
  std::span<const double> cumulative() const& noexcept { return cumulative_; }
  std::span<const double> support() const&& = delete;
  std::span<const double> masses() const&& = delete;
  std::span<const double> cumulative() const&& = delete;
  std::size_t size() const noexcept { return support_.size(); }
  bool is_degenerate() const noexcept { return support_.size() == 1; }

  double cdf(double x) const;
  /// Generalized inverse inf{x : p <= F(x)}; p equal to a cumulative mass
  /// F(x_k) returns x_k.
  double quantile(double p) const;
  double mean() const;
  double variance() const;

  /// The law of scale * X + shift (scale > 0); masses are unchanged.
  DiscreteLaw mapped(double scale, double shift) const;

 private:
  DiscreteLaw(DiscreteTag tag, std::vector<double> support, std::vector<double> masses,
              std::vector<double> cumulative);
  static DiscreteLaw build(DiscreteTag tag, std::vector<double> support,
                           std::vector<double> masses,
                           std::vector<double> cumulative = {});

  DiscreteTag tag_;
  std::vector<double> support_;
  std::vector<double> masses_;
  std::vector<double> cumulative_;
};

// ---------------------------------------------------------------------------
// Law handle
// ---------------------------------------------------------------------------

enum class LawKind { Continuous, Discrete, Mixture };

struct LawNode;
struct AffineLaw;
struct MixtureLaw;
struct MixtureComponent;

/// Immutable, cheaply copyable handle over any supported law. Copies share
/// the underlying node.
class Law {
 public:
  Law(ContinuousFamily family);
  Law(DiscreteLaw law);

  /// Law of scale * X + shift, scale > 0. Affine maps compose, and an affine
  /// map of a mixture becomes a mixture of affine maps.
  static Law affine(const Law& base, double scale, double shift);
  /// Weighted mixture; nested mixtures are flattened. Weights in (0, 1],
  /// summing to 1 within 1e-12.
  static Law mixture(const std::vector<MixtureComponent>& components);
  /// Centre by the mean and scale by 1/sigma. Throws NoVarianceError when the
  /// variance is absent and DegenerateLawError when it is zero.
  static Law standardize(const Law& base);

  LawKind kind() const;
  const LawNode& node() const noexcept { return *node_; }

  /// Non-null iff the node is that variant.
  const ContinuousFamily* as_family() const noexcept;
  const DiscreteLaw* as_discrete() const noexcept;
  const AffineLaw* as_affine() const noexcept;
  const MixtureLaw* as_mixture() const noexcept;

  /// Materialized discrete law for Discrete-kind handles (affine maps
  /// applied to the support). Throws StructureError otherwise.
  DiscreteLaw discrete_view() const;

  double cdf(double x) const;
  /// Density for Continuous-kind handles; throws StructureError otherwise.
  double pdf(double x) const;
  std::optional<double> mean() const;
  std::optional<double> variance() const;

  /// Law-string rendering, e.g. "gamma:lam=3,a=1|affine:a=2,b=0".
  std::string describe() const;

 private:
  explicit Law(std::shared_ptr<const LawNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const LawNode> node_;
};

struct AffineLaw {
  Law base;  // Continuous or Discrete leaf
  double scale;
  double shift;
};

struct MixtureComponent {
  double weight;
  Law law;
};

struct MixtureLaw {
  std::vector<MixtureComponent> components;  // no nested mixtures
};

struct LawNode {
  std::variant<ContinuousFamily, DiscreteLaw, AffineLaw, MixtureLaw> value;
};

/// Shortest decimal rendering that round-trips through strtod.
std::string format_number(double value);

}  // namespace rentropy
