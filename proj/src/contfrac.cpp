#include "lampwalk/contfrac.hpp"

#include <cmath>
#include <string>

namespace lampwalk {

CFCoeffs CFCoeffs::constant(double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0)) throw InvalidArgument("coefficients must be positive");
  return CFCoeffs{[alpha](Index) { return alpha; }, [beta](Index) { return beta; }, alpha, beta};
}

double backward_eval(const CFCoeffs& c, Index from, Index to) {
  if (from > to) throw InvalidArgument("backward_eval: from > to");
  double x = 0.0;
  for (Index k = to; k >= from; --k) {
    const double den = c.alpha(k) + x;
    if (!(den > 0.0)) throw InvalidArgument("backward_eval: non-positive denominator");
    x = c.beta(k) / den;
  }
  return x;
}

TailEstimate tail(const CFCoeffs& c, Index n, double tol, Index depth_cap) {
  if (!(tol > 0.0)) throw InvalidArgument("tail: tol must be positive");
  Index depth = 16;
  double prev = backward_eval(c, n + 1, n + depth);
  while (true) {
    const Index next_depth = depth * 2;
    if (next_depth > depth_cap)
      throw NonConvergence("tail at n=" + std::to_string(n) + " did not reach tolerance by depth " +
                           std::to_string(depth));
    const double cur = backward_eval(c, n + 1, n + next_depth);
    const double err = std::fabs(cur - prev);
    if (err < tol) return {cur, next_depth, err};
    prev = cur;
    depth = next_depth;
  }
}

double critical_tail(const CFCoeffs& c, Index k) {
  if (k < 1) throw InvalidArgument("critical_tail: k must be >= 1");
  double f = c.beta(1) / c.alpha(1);
  for (Index j = 2; j <= k; ++j) f = c.beta(j) / (c.alpha(j) + f);
  return f;
}

std::vector<double> critical_tail_sequence(const CFCoeffs& c, Index k_max) {
  if (k_max < 1) throw InvalidArgument("critical_tail_sequence: k_max must be >= 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(k_max));
  double f = c.beta(1) / c.alpha(1);
  out.push_back(f);
  for (Index j = 2; j <= k_max; ++j) {
    f = c.beta(j) / (c.alpha(j) + f);
    out.push_back(f);
  }
  return out;
}

double periodic_fixed_point(double alpha_inf, double beta_inf) {
  if (!(alpha_inf > 0.0 && beta_inf > 0.0))
    throw InvalidArgument("periodic_fixed_point: limits must be positive");
  // (sqrt(a^2+4b) - a)/2 rewritten without cancellation
  return 2.0 * beta_inf / (std::sqrt(alpha_inf * alpha_inf + 4.0 * beta_inf) + alpha_inf);
}

std::function<double(Index)> shifted_fixed_points(const CFCoeffs& c) {
  return [c](Index k) { return periodic_fixed_point(c.alpha(k + 1), c.beta(k + 1)); };
}

std::optional<double> IndexedSeries::at(Index k) const {
  if (k < first || k > last()) throw InvalidArgument("series index out of range");
  return values[static_cast<std::size_t>(k - first)];
}

namespace {

IndexedSeries ratios(const IndexedSeries& s) {
  IndexedSeries out{s.first, {}};
  for (Index k = s.first; k < s.last(); ++k) {
    const auto num = s.at(k), den = s.at(k + 1);
    if (num && den && *den != 0.0)
      out.values.push_back(*num / *den);
    else
      out.values.push_back(std::nullopt);
  }
  return out;
}

}  // namespace

DeltaEpsilon delta_epsilon(const CFCoeffs& c, const std::function<double(Index)>& omega,
                           Index k_max) {
  if (k_max < 3) throw InvalidArgument("delta_epsilon: k_max must be >= 3");
  DeltaEpsilon out;
  out.delta.first = 2;
  out.epsilon.first = 1;
  const auto f = critical_tail_sequence(c, k_max);
  double w_prev = omega(1);
  out.epsilon.values.push_back(f[0] - w_prev);
  for (Index k = 2; k <= k_max; ++k) {
    const double w = omega(k);
    out.delta.values.push_back(c.beta(k) - w * (c.alpha(k) + w_prev));
    out.epsilon.values.push_back(f[static_cast<std::size_t>(k - 1)] - w);
    w_prev = w;
  }
  out.delta_ratio = ratios(out.delta);
  out.epsilon_ratio = ratios(out.epsilon);
  return out;
}

}  // namespace lampwalk
