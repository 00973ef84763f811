#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rentropy/convergence.hpp"
#include "rentropy/errors.hpp"

using namespace rentropy;

TEST_CASE("binomial trace") {
  const auto trace = trace_binomial(0.5);
  REQUIRE(trace.points.size() == 7);
  CHECK(std::abs(trace.target - 1.1195901522456184) <= 1e-14);
  for (const auto& pt : trace.points) {
    CHECK(std::abs(pt.H_tilde - pt.H_tilde_standardized) <= 1e-10);
    CHECK(pt.gap == std::abs(pt.H_tilde - trace.target));
    CHECK(std::isfinite(pt.gap));
  }
  for (std::size_t i = 1; i < trace.points.size(); ++i) {
    CHECK(trace.points[i].H > trace.points[i - 1].H);
  }
  CHECK(trace.points.back().H - trace.points.front().H > 1.0);
  // Exact-summation reference at n = 1024.
  CHECK(std::abs(trace.points.back().H_tilde - 1.1004847224575798) <= 1e-12);
}

TEST_CASE("classical entropy diverges like ln sqrt(n)") {
  const auto trace = trace_binomial(0.5, {256, 1024});
  const double step = trace.points[1].H - trace.points[0].H;
  CHECK(std::abs(step - std::numbers::ln2) <= 0.02);
}

TEST_CASE("Poisson trace") {
  const auto trace = trace_poisson();
  REQUIRE(trace.points.size() == 7);
  for (const auto& pt : trace.points) {
    CHECK(std::abs(pt.H_tilde - pt.H_tilde_standardized) <= 1e-10);
  }
  const auto& last = trace.points.back();
  CHECK(last.index == 256.0);
  CHECK(std::abs(last.H - 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * 256.0)) <= 1e-3);
  CHECK(std::abs(last.H_tilde - 1.100158642297334) <= 1e-12);
}

TEST_CASE("discrete uniform trace") {
  const auto one = trace_discrete_uniform(1.0, {4, 16, 64, 256});
  const auto other = trace_discrete_uniform(17.5, {4, 16, 64, 256});
  for (std::size_t i = 0; i < one.points.size(); ++i) {
    CHECK(one.points[i].H == std::log(one.points[i].index));
    CHECK(std::abs(one.points[i].H_tilde - other.points[i].H_tilde) <= 1e-14);
  }
  CHECK(std::abs(one.points.back().H_tilde - std::numbers::ln2) < 0.01);
}

TEST_CASE("binomial and Poisson traces approach the same target") {
  const auto b = trace_binomial(0.5);
  const auto p = trace_poisson();
  CHECK(b.target == p.target);
  CHECK(std::abs(b.points.back().H_tilde - p.points.back().H_tilde) <= 0.02);
}

TEST_CASE("invalid grids") {
  CHECK_THROWS_AS(trace_binomial(0.5, {64, 16}), DomainError);
  CHECK_THROWS_AS(trace_binomial(0.5, {}), DomainError);
  CHECK_THROWS_AS(trace_discrete_uniform(1.0, {2, 8}), DomainError);
  CHECK_THROWS_AS(trace_poisson({-1.0, 2.0}), DomainError);
}
