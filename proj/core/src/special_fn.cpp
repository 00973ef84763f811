#include "rentropy/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rentropy/errors.hpp"

namespace rentropy::special {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kResidualTarget = 1e-12;
constexpr int kMaxSeriesTerms = 100000;

// ψ(x) asymptotic expansion; valid for x >= 10.
double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  // B_{2k} / (2k) for k = 1..7
  constexpr std::array<double, 7> coeff = {
      1.0 / 12.0,   -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0,  -691.0 / 32760.0,    1.0 / 12.0};
  double series = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) {
    series = series * inv2 + *it;
  }
  series *= inv2;
  return std::log(x) - 0.5 / x - series;
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Safeguarded Newton iteration for an increasing function on [lo, hi].
// residual(lo) <= 0 <= residual(hi) is assumed. Falls back to bisection
// whenever the Newton step leaves the current bracket.
template <class Residual, class Slope>
SpecialValue bracketed_newton(Residual residual, Slope slope, double lo,
                              double hi, double x, const char* name) {
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  double r = residual(x);
  for (int iter = 0; iter < 600; ++iter) {
    if (r == 0.0) break;
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double d = slope(x);
    double next = x - r / d;
    if (!std::isfinite(next) || !(next > lo && next < hi)) {
      if (lo > 0.0 && hi > 1e3 * lo) {
        next = std::sqrt(lo) * std::sqrt(hi);
      } else {
        next = 0.5 * (lo + hi);
      }
    }
    const bool settled = std::abs(next - x) <= 4.0 * kEps * std::abs(next) ||
                         hi - lo <= 4.0 * kEps * std::abs(hi) || next == lo ||
                         next == hi;
    x = next;
    r = residual(x);
    if (settled) break;
  }
  // Polish to the representable neighbour with the smallest residual.
  for (int step = 0; step < 64 && r != 0.0; ++step) {
    const double neighbour = std::nextafter(x, r < 0.0 ? hi : lo);
    if (neighbour == x) break;
    const double rn = residual(neighbour);
    if (!(std::abs(rn) < std::abs(r))) break;
    x = neighbour;
    r = rn;
  }
  // Where the cdf is steep, a few ulps of x can move it by more than the
  // residual target; accept what the representable neighbours allow.
  const double d = slope(x);
  double target = kResidualTarget;
  if (d > 0.0 && std::isfinite(d)) target = std::max(target, 4.0 * kEps * std::abs(x) * d);
  if (!(std::abs(r) <= target)) {
    throw ConvergenceError(std::string(name) +
                           ": inversion did not reach residual target");
  }
  double bound = 4.0 * kEps * std::abs(x);
  if (d > 0.0 && std::isfinite(d)) bound += std::abs(r) / d;
  return {x, bound};
}

// Continued fraction for I_t(a, b) (modified Lentz).
double beta_continued_fraction(double a, double b, double t) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * t / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxSeriesTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * t / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * t / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) return h;
  }
  throw ConvergenceError("reg_beta_cdf: continued fraction did not converge");
}

}  // namespace

double ln_gamma(double x) {
  require(x > 0.0 && std::isfinite(x), "ln_gamma: argument must be > 0");
  return std::lgamma(x);
}

double digamma(double x) {
  require(x > 0.0 && std::isfinite(x), "digamma: argument must be > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  return acc + digamma_asymptotic(x);
}

double ln_beta(double a, double b) {
  require(a > 0.0 && b > 0.0, "ln_beta: arguments must be > 0");
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

double std_normal_cdf(double y) {
  if (std::isnan(y)) throw DomainError("std_normal_cdf: NaN argument");
  return 0.5 * std::erfc(-y / std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "std_normal_quantile: p must lie in (0, 1)");
  // Reflect to the lower half; 1 - p is exact for p >= 1/2.
  if (p > 0.5) return -std_normal_quantile(1.0 - p);
  if (p == 0.5) return 0.0;

  // Acklam's rational starting point (relative error ~1e-9).
  constexpr std::array<double, 6> a = {
      -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  constexpr std::array<double, 5> b = {
      -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01,  -1.328068155288572e+01};
  constexpr std::array<double, 6> c = {
      -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  constexpr std::array<double, 4> d = {
      7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  // Halley refinement against the erfc-based cdf.
  constexpr double sqrt_two_pi = 2.50662827463100050241576528481;
  for (int i = 0; i < 3; ++i) {
    const double e = std_normal_cdf(x) - p;
    const double u = e * sqrt_two_pi * std::exp(0.5 * x * x);
    const double next = x - u / (1.0 + 0.5 * x * u);
    if (next == x) break;
    x = next;
  }
  return x;
}

double gamma_density(double lam, double y) {
  require(lam > 0.0, "gamma_density: shape must be > 0");
  if (y < 0.0) return 0.0;
  if (y == 0.0) {
    if (lam < 1.0) return std::numeric_limits<double>::infinity();
    return lam == 1.0 ? 1.0 : 0.0;
  }
  return std::exp((lam - 1.0) * std::log(y) - y - ln_gamma(lam));
}

double reg_gamma_cdf(double lam, double y) {
  require(lam > 0.0 && std::isfinite(lam), "reg_gamma_cdf: shape must be > 0");
  require(y >= 0.0, "reg_gamma_cdf: y must be >= 0");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return 1.0;

  const double log_prefactor = lam * std::log(y) - y - ln_gamma(lam);
  if (y < lam + 1.0) {
    // Series: P = e^{-y} y^lam / Γ(lam+1) * Σ y^n / ((lam+1)...(lam+n)).
    double term = 1.0 / lam;
    double sum = term;
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
      term *= y / (lam + n);
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) {
        return std::min(1.0, sum * std::exp(log_prefactor));
      }
    }
    throw ConvergenceError("reg_gamma_cdf: series did not converge");
  }

  // Continued fraction for Q = 1 - P (modified Lentz).
  constexpr double tiny = 1e-300;
  double b = y + 1.0 - lam;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxSeriesTerms; ++i) {
    const double an = -i * (i - lam);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) {
      return std::max(0.0, 1.0 - std::exp(log_prefactor) * h);
    }
  }
  throw ConvergenceError("reg_gamma_cdf: continued fraction did not converge");
}

SpecialValue reg_gamma_quantile_detailed(double lam, double p) {
  require(lam > 0.0 && std::isfinite(lam),
          "reg_gamma_quantile: shape must be > 0");
  require(p > 0.0 && p < 1.0, "reg_gamma_quantile: p must lie in (0, 1)");

  // Starting point: small-y power law below the mean, Wilson-Hilferty above.
  const double log_guess = (std::log(p) + ln_gamma(lam + 1.0)) / lam;
  if (log_guess < std::log(std::numeric_limits<double>::denorm_min())) {
    // The quantile underflows.
    return {0.0, std::numeric_limits<double>::denorm_min()};
  }
  double guess = std::exp(log_guess);
  if (!(guess < lam)) {
    const double z = std_normal_quantile(p);
    const double w = 1.0 - 1.0 / (9.0 * lam) + z / (3.0 * std::sqrt(lam));
    guess = w > 0.0 ? lam * w * w * w : 0.5 * lam;
  }

  // Moment-based upper bracket, expanded until it covers p.
  double hi = lam + 10.0 * std::sqrt(lam) + 10.0;
  if (guess > 0.0 && std::isfinite(guess)) hi = std::max(hi, 2.0 * guess);
  while (reg_gamma_cdf(lam, hi) < p) hi *= 2.0;

  return bracketed_newton([&](double y) { return reg_gamma_cdf(lam, y) - p; },
                          [&](double y) { return gamma_density(lam, y); }, 0.0,
                          hi, guess, "reg_gamma_quantile");
}

double reg_gamma_quantile(double lam, double p) {
  return reg_gamma_quantile_detailed(lam, p).value;
}

double reg_beta_cdf(double alpha, double beta, double t) {
  require(alpha > 0.0 && beta > 0.0, "reg_beta_cdf: shapes must be > 0");
  require(t >= 0.0 && t <= 1.0, "reg_beta_cdf: t must lie in [0, 1]");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  const double log_front = alpha * std::log(t) + beta * std::log1p(-t) -
                           ln_beta(alpha, beta);
  const double front = std::exp(log_front);
  if (t < (alpha + 1.0) / (alpha + beta + 2.0)) {
    return front * beta_continued_fraction(alpha, beta, t) / alpha;
  }
  return 1.0 - front * beta_continued_fraction(beta, alpha, 1.0 - t) / beta;
}

SpecialValue reg_beta_quantile_detailed(double alpha, double beta, double p) {
  require(alpha > 0.0 && beta > 0.0, "reg_beta_quantile: shapes must be > 0");
  require(p > 0.0 && p < 1.0, "reg_beta_quantile: p must lie in (0, 1)");

  const double lnb = ln_beta(alpha, beta);
  const double mean = alpha / (alpha + beta);
  // Power-law tails of the density near 0 and near 1.
  const double low_tail = std::exp((std::log(p * alpha) + lnb) / alpha);
  const double high_tail =
      1.0 - std::exp((std::log((1.0 - p) * beta) + lnb) / beta);
  double guess = mean;
  if (low_tail < mean) {
    guess = low_tail;
  } else if (high_tail > mean) {
    guess = high_tail;
  }

  return bracketed_newton(
      [&](double t) { return reg_beta_cdf(alpha, beta, t) - p; },
      [&](double t) {
        return std::exp((alpha - 1.0) * std::log(t) +
                        (beta - 1.0) * std::log1p(-t) - lnb);
      },
      0.0, 1.0, guess, "reg_beta_quantile");
}

double reg_beta_quantile(double alpha, double beta, double p) {
  return reg_beta_quantile_detailed(alpha, beta, p).value;
}

}  // namespace rentropy::special
