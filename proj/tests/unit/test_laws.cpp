#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "rentropy/errors.hpp"
#include "rentropy/laws.hpp"
#include "rentropy/quadrature.hpp"
#include "rentropy/special_fn.hpp"

using namespace rentropy;

namespace {

std::vector<ContinuousFamily> catalog() {
  return {ContinuousFamily::gaussian(1.3),      ContinuousFamily::uniform(2.0),
          ContinuousFamily::gamma(0.6, 1.5),    ContinuousFamily::gamma(4.0, 0.7),
          ContinuousFamily::exponential(2.5),   ContinuousFamily::laplace(0.8),
          ContinuousFamily::student(1.5, 1.0),  ContinuousFamily::student(5.0, 2.0),
          ContinuousFamily::cauchy(0.9)};
}

}  // namespace

TEST_CASE("densities at reference points") {
  CHECK(std::abs(ContinuousFamily::gaussian(1.0).pdf(0.0) - 1.0 / std::sqrt(2.0 * std::numbers::pi)) <=
        1e-15);
  CHECK(ContinuousFamily::uniform(2.0).pdf(1.0) == 0.5);
  CHECK(ContinuousFamily::uniform(2.0).pdf(2.5) == 0.0);
  CHECK(std::abs(ContinuousFamily::cauchy(1.0).pdf(0.0) - 1.0 / std::numbers::pi) <= 1e-15);
  CHECK(ContinuousFamily::exponential(1.0).pdf(-1.0) == 0.0);
  CHECK(ContinuousFamily::gamma(2.0, 1.0).pdf(-0.5) == 0.0);
  // Student with lam = 1 is Cauchy.
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    CHECK(std::abs(ContinuousFamily::student(1.0, 2.0).pdf(x) -
                   ContinuousFamily::cauchy(2.0).pdf(x)) <= 1e-14);
  }
}

TEST_CASE("densities integrate to one") {
  for (const auto& f : catalog()) {
    CAPTURE(std::string(family_name(f.family())));
    // Decade breakpoints keep heavy tails resolvable.
    std::vector<double> breaks;
    for (int e = 13; e >= 1; --e) breaks.push_back(f.quantile(std::pow(10.0, -e)));
    for (const double u : {0.25, 0.5, 0.75}) breaks.push_back(f.quantile(u));
    for (int e = 1; e <= 13; ++e) breaks.push_back(f.quantile(1.0 - std::pow(10.0, -e)));
    const auto r = quadrature::integrate([&](double x) { return f.pdf(x); }, breaks);
    CHECK(r.converged);
    CHECK(std::abs(r.value - (1.0 - 2e-13)) <= 1e-8);
  }
}

TEST_CASE("numerical variance matches the closed form") {
  for (const auto& f : catalog()) {
    const auto var = f.variance();
    if (!var) continue;
    CAPTURE(std::string(family_name(f.family())));
    const double mu = *f.mean();
    std::vector<double> breaks;
    for (const double u : {1e-15, 1e-9, 1e-4, 0.05, 0.5, 0.95, 1.0 - 1e-4, 1.0 - 1e-9}) {
      breaks.push_back(f.quantile(u));
    }
    breaks.push_back(mu + 1e4 * std::sqrt(*var));
    const auto r = quadrature::integrate(
        [&](double x) { return (x - mu) * (x - mu) * f.pdf(x); }, breaks, {1e-12, 1e-13, 20000});
    CHECK(std::abs(r.value - *var) <= 1e-6 * std::max(1.0, *var));
  }
}

TEST_CASE("scale parameters and variances") {
  CHECK(*ContinuousFamily::gaussian(3.0).variance() == 9.0);
  CHECK(std::abs(*ContinuousFamily::uniform(2.0).variance() - 4.0 / 12.0) <= 1e-16);
  CHECK(std::abs(*ContinuousFamily::gamma(3.0, 2.0).variance() - 12.0) <= 1e-14);
  CHECK(*ContinuousFamily::laplace(1.5).variance() == 2.0 * 2.25);
  CHECK(std::abs(*ContinuousFamily::student(6.0, 2.0).variance() - 1.0) <= 1e-15);
  CHECK_FALSE(ContinuousFamily::student(2.0, 1.0).variance());
  CHECK_FALSE(ContinuousFamily::cauchy(1.0).variance());
  CHECK_FALSE(ContinuousFamily::cauchy(1.0).mean());
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(ContinuousFamily::gaussian(0.0), DomainError);
  CHECK_THROWS_AS(ContinuousFamily::gamma(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ContinuousFamily::student(1.0, std::nan("")), DomainError);
  CHECK_THROWS_AS(DiscreteLaw::binomial(0, 0.5), DomainError);
  CHECK_THROWS_AS(DiscreteLaw::binomial(3, 1.0), DomainError);
  CHECK_THROWS_AS(DiscreteLaw::explicit_law({0.0, 0.0}, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(DiscreteLaw::explicit_law({0.0, 1.0}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(DiscreteLaw::explicit_law({0.0, 1.0}, {-0.1, 1.1}), DomainError);
}

TEST_CASE("cdfs") {
  for (double x = -1.0; x < 8.0; x += 0.5) {
    const double want = x > 0.0 ? 1.0 - std::exp(-x / 2.0) : 0.0;
    CHECK(std::abs(ContinuousFamily::exponential(2.0).cdf(x) - want) <= 1e-15);
    CHECK(std::abs(ContinuousFamily::cauchy(1.5).cdf(x) -
                   (0.5 + std::atan(x / 1.5) / std::numbers::pi)) <= 1e-15);
  }
  CHECK(DiscreteLaw::discrete_uniform(4, 1.0).cdf(0.5) == 0.5);
  CHECK(DiscreteLaw::discrete_uniform(4, 1.0).cdf(0.2) == 0.0);
  CHECK(DiscreteLaw::discrete_uniform(4, 1.0).cdf(1.0) == 1.0);
}

TEST_CASE("discrete masses sum to one") {
  const std::vector<DiscreteLaw> laws{
      DiscreteLaw::binomial(1, 0.5),   DiscreteLaw::binomial(37, 0.2),
      DiscreteLaw::binomial(1024, 0.5), DiscreteLaw::binomial(1000, 0.3),
      DiscreteLaw::poisson(0.01),      DiscreteLaw::poisson(10.0),
      DiscreteLaw::poisson(256.0),     DiscreteLaw::discrete_uniform(7, 3.0)};
  for (const auto& d : laws) {
    double sum = 0.0;
    for (const double m : d.masses()) {
      CHECK(m > 0.0);
      sum += m;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (std::size_t k = 1; k < d.size(); ++k) CHECK(d.support()[k] > d.support()[k - 1]);
  }
}

TEST_CASE("binomial masses use the binomial coefficient over k") {
  const auto d = DiscreteLaw::binomial(4, 0.5);
  const std::vector<double> want{1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  REQUIRE(d.size() == 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(d.masses()[k] - want[k]) <= 1e-16);
  CHECK(d.mean() == 2.0);
  CHECK(d.variance() == 1.0);
}

TEST_CASE("Poisson truncation leaves a tail below 1e-15") {
  for (const double lam : {0.5, 4.0, 100.0}) {
    const auto d = DiscreteLaw::poisson(lam);
    const auto& tag = std::get<PoissonTag>(d.tag());
    CHECK(special::reg_gamma_cdf(tag.truncation + 1.0, lam) < 1e-15);
    CHECK(special::reg_gamma_cdf(tag.truncation, lam) >= 1e-15);
    CHECK(d.variance() == lam);
  }
}

TEST_CASE("discrete uniform construction") {
  const auto d = DiscreteLaw::discrete_uniform(4, 2.0);
  const std::vector<double> xs{0.5, 1.0, 1.5, 2.0};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(d.support()[k] == xs[k]);
    CHECK(d.masses()[k] == 0.25);
  }
  CHECK(d.mean() == 1.25);
}

TEST_CASE("zero-mass atoms are dropped") {
  const auto d = DiscreteLaw::explicit_law({0.0, 1.0, 2.0}, {0.5, 0.0, 0.5});
  CHECK(d.size() == 2);
  CHECK(d.support()[1] == 2.0);
}

TEST_CASE("affine maps") {
  const Law base = ContinuousFamily::gaussian(2.0);
  const Law y = Law::affine(base, 3.0, 5.0);
  CHECK(*y.variance() == 36.0);
  CHECK(*y.mean() == 5.0);
  for (double x = -4.0; x <= 4.0; x += 0.5) {
    CHECK(std::abs(y.cdf(3.0 * x + 5.0) - base.cdf(x)) <= 1e-14);
  }
  const Law composed = Law::affine(Law::affine(base, 2.0, 1.0), 0.5, -0.5);
  REQUIRE(composed.as_affine());
  CHECK(composed.as_affine()->scale == 1.0);
  CHECK(composed.as_affine()->shift == 0.0);
  CHECK_THROWS_AS(Law::affine(base, -1.0, 0.0), DomainError);

  const Law bin = DiscreteLaw::binomial(10, 0.3);
  const Law mapped = Law::affine(bin, 2.0, -1.0);
  for (int k = 0; k <= 10; ++k) {
    CHECK(mapped.cdf(2.0 * k - 1.0) == bin.cdf(k));
  }
  const auto view = mapped.discrete_view();
  CHECK(view.support()[3] == 5.0);
  CHECK(view.masses()[3] == bin.as_discrete()->masses()[3]);
}

TEST_CASE("standardization") {
  const Law bin = Law::standardize(DiscreteLaw::binomial(16, 0.5));
  CHECK(std::abs(*bin.mean()) <= 1e-15);
  CHECK(std::abs(*bin.variance() - 1.0) <= 1e-15);
  const auto view = bin.discrete_view();
  CHECK(std::abs(view.support()[0] + 4.0) <= 1e-15);  // (0 - 8) / 2
  const Law poi = Law::standardize(DiscreteLaw::poisson(9.0));
  const auto poi_view = poi.discrete_view();
  CHECK(std::abs(poi_view.support()[12] - 1.0) <= 1e-15);  // (12 - 9) / 3
  CHECK_THROWS_AS(Law::standardize(ContinuousFamily::cauchy(1.0)), NoVarianceError);
  CHECK_THROWS_AS(Law::standardize(DiscreteLaw::degenerate(2.0)), DegenerateLawError);
}

TEST_CASE("standardized binomial converges weakly to the Gaussian") {
  double previous = 1.0;
  for (const int n : {16, 64, 256}) {
    const Law law = Law::standardize(DiscreteLaw::binomial(n, 0.5));
    const auto view = law.discrete_view();
    double sup = 0.0;
    for (const double x : view.support()) {
      // The supremum of |F - Phi| is attained next to the jumps.
      sup = std::max(sup, std::abs(law.cdf(x) - special::std_normal_cdf(x)));
      sup = std::max(sup, std::abs(law.cdf(std::nextafter(x, -1e300)) - special::std_normal_cdf(x)));
    }
    CAPTURE(n);
    CHECK(sup < previous);
    previous = sup;
  }
}

TEST_CASE("mixtures") {
  const Law mix = Law::mixture({{2.0 / 3.0, DiscreteLaw::degenerate(0.5)},
                                {1.0 / 3.0, ContinuousFamily::uniform(1.0)}});
  CHECK(std::abs(mix.cdf(0.25) - 0.25 / 3.0) <= 1e-16);
  CHECK(std::abs(mix.cdf(0.5) - 5.0 / 6.0) <= 1e-15);
  CHECK(std::abs(mix.cdf(0.75) - (2.0 / 3.0 + 0.25)) <= 1e-15);
  CHECK(mix.cdf(-1.0) == 0.0);
  CHECK(mix.cdf(2.0) == 1.0);
  // Mean 1/2; variance (1/3)(1/12) + 0.
  CHECK(std::abs(*mix.mean() - 0.5) <= 1e-16);
  CHECK(std::abs(*mix.variance() - 1.0 / 36.0) <= 1e-16);

  CHECK_THROWS_AS(Law::mixture({{0.5, ContinuousFamily::uniform(1.0)}}), DomainError);
  CHECK_THROWS_AS(Law::mixture({}), StructureError);

  const Law nested = Law::mixture({{0.5, mix}, {0.5, ContinuousFamily::gaussian(1.0)}});
  REQUIRE(nested.as_mixture());
  CHECK(nested.as_mixture()->components.size() == 3);
  const Law shifted = Law::affine(mix, 2.0, 1.0);
  REQUIRE(shifted.as_mixture());
  CHECK(std::abs(shifted.cdf(2.0) - mix.cdf(0.5)) <= 1e-15);
}

TEST_CASE("describe renders law strings") {
  CHECK(Law(ContinuousFamily::gamma(3.0, 1.0)).describe() == "gamma:lam=3,a=1");
  CHECK(Law(DiscreteLaw::binomial(100, 0.5)).describe() == "binomial:n=100,p=0.5");
  CHECK(Law::affine(ContinuousFamily::gaussian(1.0), 2.0, -1.0).describe() ==
        "gaussian:a=1|affine:a=2,b=-1");
  CHECK(Law(DiscreteLaw::degenerate(0.5)).describe() == "duniform:n=1,a=0.5");
}
