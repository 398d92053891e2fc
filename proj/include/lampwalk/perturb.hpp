#pragma once

#include <optional>

#include "lampwalk/errors.hpp"

namespace lampwalk {

enum class Family { TwoOne, OneTwo };

// Lamperti perturbation parameters. sign is +1 or -1.
struct PerturbParams {
  int K = 1;
  double B = 0.0;
  int sign = 1;
};

void validate(const PerturbParams& p);

// log_0 x = x, log_j x = log(log_{j-1} x). Empty when some inner log gets a
// non-positive argument.
std::optional<double> iterated_log(int j, double x);

// Lambda(K,i,B) = sum_{j=0}^{K-2} 1/prod_{l<=j} log_l i + B/prod_{l<=K-1} log_l i.
// Throws NotDefined when log_0..log_{K-1} of i are not all positive.
double lambda(const PerturbParams& p, Index i);

// Smallest i >= 2 with log_{K-1} i > 0 and |Lambda(K,i,B)| < 1.
Index i_zero(const PerturbParams& p);

// r_i = Lambda/3 for i >= i_zero, clamped to r_{i_zero} below.
double r(const PerturbParams& p, Index i);

// (prod_{j=0}^{K-2} log_j n * (log_{K-1} n)^B)^{exponent_sign}
double asymptote(const PerturbParams& p, double n, int exponent_sign);

// 3 n^2 (r_n - r_{n+1})
double r_increment_rate(const PerturbParams& p, Index n);

// Caches i_zero so repeated r_i lookups stay cheap.
class Perturbation {
 public:
  explicit Perturbation(const PerturbParams& p);
  const PerturbParams& params() const { return params_; }
  Index i0() const { return i0_; }
  double r(Index i) const;

 private:
  PerturbParams params_;
  Index i0_;
  double r_i0_;
};

// p is the probability of the 2-step (down for (2,1), up for (1,2)), q of the
// 1-step.
struct StepProbs {
  double p;
  double q;
};

// q_k = 2/3 + sign*r_k for (2,1), p_k = 1/3 + sign*r_k for (1,2). Throws
// InvalidProbability if p_k or q_k leaves (0,1).
StepProbs lamperti_probs(Family f, const Perturbation& pert, Index k);
// theta_k = p_k/q_k
double lamperti_theta(Family f, const Perturbation& pert, Index k);

}  // namespace lampwalk
