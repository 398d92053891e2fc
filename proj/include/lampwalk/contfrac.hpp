#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "lampwalk/errors.hpp"

namespace lampwalk {

// Continued fraction K(beta_k | alpha_k) with positive partial numerators
// beta and denominators alpha.
struct CFCoeffs {
  std::function<double(Index)> alpha;
  std::function<double(Index)> beta;
  std::optional<double> alpha_inf;
  std::optional<double> beta_inf;

  static CFCoeffs constant(double alpha, double beta);
};

// beta_from / (alpha_from + beta_{from+1} / (... + beta_to / alpha_to))
double backward_eval(const CFCoeffs& c, Index from, Index to);

struct TailEstimate {
  double value = 0.0;
  Index depth_used = 0;
  double est_error = 0.0;
};

inline constexpr Index kDefaultTailDepthCap = Index{1} << 20;

// f^(n) = K_{k>n}(beta_k | alpha_k) by depth doubling until two successive
// truncations differ by less than tol.
TailEstimate tail(const CFCoeffs& c, Index n, double tol,
                  Index depth_cap = kDefaultTailDepthCap);

// f_1 = beta_1/alpha_1, f_k = beta_k/(alpha_k + f_{k-1}).
double critical_tail(const CFCoeffs& c, Index k);
// f_1..f_kmax; element k-1 holds f_k.
std::vector<double> critical_tail_sequence(const CFCoeffs& c, Index k_max);

// Positive root of w(alpha + w) = beta.
double periodic_fixed_point(double alpha_inf, double beta_inf);

// w_k built from the coefficients at index k+1.
std::function<double(Index)> shifted_fixed_points(const CFCoeffs& c);

// Values indexed from `first`; nullopt marks an undefined ratio.
struct IndexedSeries {
  Index first = 1;
  std::vector<std::optional<double>> values;
  std::optional<double> at(Index k) const;
  Index last() const { return first + static_cast<Index>(values.size()) - 1; }
};

struct DeltaEpsilon {
  IndexedSeries delta;          // k >= 2
  IndexedSeries epsilon;        // k >= 1
  IndexedSeries delta_ratio;    // delta_k / delta_{k+1}, k >= 2
  IndexedSeries epsilon_ratio;  // epsilon_k / epsilon_{k+1}, k >= 1
};

DeltaEpsilon delta_epsilon(const CFCoeffs& c, const std::function<double(Index)>& omega,
                           Index k_max);

}  // namespace lampwalk
