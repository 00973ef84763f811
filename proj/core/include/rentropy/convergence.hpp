#pragma once

#include <string>
#include <vector>

namespace rentropy {

struct TracePoint {
  double index;  // n, or lambda for Poisson traces
  double H;
  double H_tilde;
  double H_tilde_standardized;
  double gap;  // |H_tilde - target|
};

/// A sequence of discrete laws converging weakly to a continuous limit,
/// with the classical and renormalized entropies along it.
struct ConvergenceTrace {
  std::string label;
  double target;  // h_tilde of the limit law
  std::vector<TracePoint> points;
};

const std::vector<int>& default_ns();
const std::vector<double>& default_lams();

/// Binomial(n, p) for each n; the limit is Gaussian. Throws ConsistencyError
/// if the standardized and plain H_tilde differ by more than 1e-10.
ConvergenceTrace trace_binomial(double p, const std::vector<int>& ns = default_ns());

/// Poisson(lam) for each lam; the limit is Gaussian. H from the exact series,
/// cross-checked against the truncated law within 1e-10.
ConvergenceTrace trace_poisson(const std::vector<double>& lams = default_lams());

/// Discrete uniform laws on {a/n, ..., a}; the limit is Uniform(a).
ConvergenceTrace trace_discrete_uniform(double a, const std::vector<int>& ns = default_ns());

}  // namespace rentropy
