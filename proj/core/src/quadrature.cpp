#include "rentropy/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "rentropy/errors.hpp"

namespace rentropy::quadrature {
namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes kKronrodNodes[1], [3], [5], [7].
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gauss_kronrod(const std::function<double(double)>& f, double a,
                    double b, int& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  evaluations += 15;
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breaks,
                           const QuadratureOptions& options) {
  if (breaks.size() < 2) throw DomainError("integrate: need at least two breaks");
  QuadratureResult result;
  std::priority_queue<Piece> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i]) || !std::isfinite(breaks[i + 1]) ||
        breaks[i + 1] < breaks[i]) {
      throw DomainError("integrate: breaks must be finite and nondecreasing");
    }
    if (breaks[i + 1] == breaks[i]) continue;
    pieces.push(gauss_kronrod(f, breaks[i], breaks[i + 1], result.evaluations));
  }

  auto totals = [&]() {
    double value = 0.0;
    double error = 0.0;
    auto copy = pieces;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  // Running sums are refreshed from scratch periodically to bound drift.
  auto [value, error] = totals();
  int since_refresh = 0;
  while (!pieces.empty() &&
         error > std::max(options.abs_tol, options.rel_tol * std::abs(value))) {
    if (static_cast<int>(pieces.size()) >= options.max_intervals) break;
    const Piece worst = pieces.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // no more resolution
    pieces.pop();
    const Piece left = gauss_kronrod(f, worst.a, mid, result.evaluations);
    const Piece right = gauss_kronrod(f, mid, worst.b, result.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    pieces.push(left);
    pieces.push(right);
    if (++since_refresh == 64) {
      std::tie(value, error) = totals();
      since_refresh = 0;
    }
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.abs_error = error;
  result.intervals = static_cast<int>(pieces.size());
  result.converged =
      error <= std::max(options.abs_tol, options.rel_tol * std::abs(value));
  return result;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& options) {
  const std::array<double, 2> breaks = {a, b};
  return integrate(f, breaks, options);
}

}  // namespace rentropy::quadrature
