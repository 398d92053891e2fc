#include "lampwalk/perturb.hpp"

#include <cmath>
#include <string>

namespace lampwalk {

void validate(const PerturbParams& p) {
  if (p.K < 1) throw InvalidArgument("K must be >= 1");
  if (p.sign != 1 && p.sign != -1) throw InvalidArgument("sign must be +1 or -1");
  if (!std::isfinite(p.B)) throw InvalidArgument("B must be finite");
}

std::optional<double> iterated_log(int j, double x) {
  if (j < 0) throw InvalidArgument("iterated_log: j must be >= 0");
  for (int l = 0; l < j; ++l) {
    if (!(x > 0.0)) return std::nullopt;
    x = std::log(x);
  }
  return x;
}

namespace {

// Fills logs[l] = log_l x for l = 0..count-1; false if any is non-positive.
bool positive_logs(double x, int count, double* logs) {
  for (int l = 0; l < count; ++l) {
    if (!(x > 0.0)) return false;
    logs[l] = x;
    if (l + 1 < count) x = std::log(x);
  }
  return true;
}

double lambda_unchecked(const PerturbParams& p, const double* logs) {
  double sum = 0.0;
  double prod = 1.0;
  for (int j = 0; j <= p.K - 2; ++j) {
    prod *= logs[j];
    sum += 1.0 / prod;
  }
  prod *= logs[p.K - 1];
  return sum + p.B / prod;
}

constexpr int kMaxK = 64;

}  // namespace

double lambda(const PerturbParams& p, Index i) {
  validate(p);
  if (p.K > kMaxK) throw InvalidArgument("K too large");
  double logs[kMaxK];
  if (!positive_logs(static_cast<double>(i), p.K, logs))
    throw NotDefined("lambda: log_" + std::to_string(p.K - 1) + " of " +
                     std::to_string(i) + " is not positive");
  return lambda_unchecked(p, logs);
}

Index i_zero(const PerturbParams& p) {
  validate(p);
  if (p.K > 6) throw InvalidArgument("i_zero: K > 6 needs astronomically large i");
  double logs[kMaxK];
  for (Index i = 2;; ++i) {
    if (!positive_logs(static_cast<double>(i), p.K, logs)) continue;
    if (std::fabs(lambda_unchecked(p, logs)) < 1.0) return i;
  }
}

double r(const PerturbParams& p, Index i) { return Perturbation(p).r(i); }

double asymptote(const PerturbParams& p, double n, int exponent_sign) {
  validate(p);
  if (exponent_sign != 1 && exponent_sign != -1)
    throw InvalidArgument("exponent_sign must be +1 or -1");
  double logs[kMaxK];
  if (p.K > kMaxK || !positive_logs(n, p.K, logs))
    throw NotDefined("asymptote: iterated logs not defined at n");
  double log_value = 0.0;
  for (int j = 0; j <= p.K - 2; ++j) log_value += std::log(logs[j]);
  log_value += p.B * std::log(logs[p.K - 1]);
  return std::exp(exponent_sign * log_value);
}

double r_increment_rate(const PerturbParams& p, Index n) {
  Perturbation pert(p);
  if (n < pert.i0()) throw InvalidArgument("r_increment_rate: n < i_zero");
  const double nn = static_cast<double>(n);
  return 3.0 * nn * nn * (pert.r(n) - pert.r(n + 1));
}

Perturbation::Perturbation(const PerturbParams& p)
    : params_(p), i0_(i_zero(p)), r_i0_(lambda(p, i0_) / 3.0) {}

double Perturbation::r(Index i) const {
  if (i < 1) throw InvalidArgument("r: index must be >= 1");
  if (i <= i0_) return r_i0_;
  return lambda(params_, i) / 3.0;
}

StepProbs lamperti_probs(Family f, const Perturbation& pert, Index k) {
  const double rk = pert.params().sign * pert.r(k);
  StepProbs s;
  if (f == Family::TwoOne) {
    s.q = 2.0 / 3.0 + rk;
    s.p = 1.0 / 3.0 - rk;
  } else {
    s.p = 1.0 / 3.0 + rk;
    s.q = 2.0 / 3.0 - rk;
  }
  if (!(s.p > 0.0 && s.p < 1.0 && s.q > 0.0 && s.q < 1.0))
    throw InvalidProbability("transition probability outside (0,1) at k=" +
                             std::to_string(k));
  return s;
}

double lamperti_theta(Family f, const Perturbation& pert, Index k) {
  const StepProbs s = lamperti_probs(f, pert, k);
  return s.p / s.q;
}

}  // namespace lampwalk
