#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lampwalk/contfrac.hpp"
#include "lampwalk/matrix.hpp"
#include "lampwalk/perturb.hpp"

namespace lampwalk {

// Transition law of the (2,1) walk Y (steps +1 w.p. q_k, -2 w.p. p_k) or the
// (1,2) walk Y' (steps -1 w.p. q_k, +2 w.p. p_k), defined for states k >= 2.
class WalkModel {
 public:
  static WalkModel lamperti(Family f, const PerturbParams& p);
  static WalkModel constant_q(Family f, double q);
  // q_values[0] is q_2; states beyond the table reuse the last value.
  static WalkModel q_table(Family f, std::vector<double> q_values);
  // Rows must have the N_k shape (theta, theta, 1); row 1 is not used and
  // states beyond the table reuse the last row.
  static WalkModel from_coefficients(Family f, const CoeffSequence& seq);

  Family family() const { return family_; }
  StepProbs probs(Index k) const;
  double p(Index k) const { return probs(k).p; }
  double q(Index k) const { return probs(k).q; }
  double theta(Index k) const;
  PosMat2 n_matrix(Index k) const;

  CoeffSequence n_sequence() const;
  // beta_k = 1/theta_k, alpha_k = 1 for k >= 2.
  CFCoeffs xi_coeffs() const;

  const PerturbParams* lamperti_params() const;
  std::optional<double> constant_q_value() const;
  const std::vector<double>* q_values() const;

 private:
  struct Lamperti {
    Perturbation pert;
  };
  struct Constant {
    double q;
  };
  struct Table {
    std::vector<double> q;
  };
  WalkModel(Family f, std::variant<Lamperti, Constant, Table> s)
      : family_(f), src_(std::move(s)) {}
  Family family_;
  std::variant<Lamperti, Constant, Table> src_;
};

// P_k(m, n, -) for Y: probability of reaching [0, m] before [n, inf) from k.
double escape_prob_21(const WalkModel& model, Index m, Index k, Index n);

// P(M = n, D < inf) for Y started at 2.
double max_dist_21(const WalkModel& model, Index n);

struct Dist12Value {
  double prob = 0.0;
  double log_prob = 0.0;
  // Decimal digits lost in the subtraction inside the hit-at-n probability.
  double digits_lost = 0.0;
  // Set when more than half the digits were lost; prob then comes from
  // state reduction instead of the product formula.
  bool cancellation = false;
  double formula_prob = 0.0;
};

// P(M = n, D < inf) for Y' started at 2.
Dist12Value max_dist_12(const WalkModel& model, Index n);

// Y' started at 2, leaving {2, ..., n-1}: probability of landing at n, at
// n+1, and (their sum) of exiting upward.
struct UpHitting {
  double at_n = 0.0;
  double up = 0.0;
  double digits_lost = 0.0;
};
UpHitting up_hitting_12(const WalkModel& model, Index n);

// Y' started at m+1, absorbed on leaving {m+1, ..., n-1}. Computed by state
// reduction with only additions of nonnegative quantities.
struct HittingSplit {
  double at_n = 0.0;
  double at_n1 = 0.0;
  double low = 0.0;
};
HittingSplit hitting_split_reduction(const WalkModel& model, Index m, Index n);

// 1 - P_n(1, n+1, +) for Y'.
double escape_down_12(const WalkModel& model, Index n);
std::vector<double> escape_down_12_series(const WalkModel& model, const std::vector<Index>& ns);

struct HittingRatio {
  double value = 0.0;
  double digits_lost = 0.0;
  bool cancellation = false;
  bool zero_denominator = false;
};

// P_2^n(1, n, +) / P_2^{n+1}(1, n, +) for Y'.
HittingRatio hitting_ratio(const WalkModel& model, Index n);

// theta_s^{-1}/(1 + theta_{s+1}^{-1}/(1 + ... theta_n^{-1}/1))
double xi_finite(const WalkModel& model, Index s, Index n);
TailEstimate xi(const WalkModel& model, Index n, double tol);

// xi_lo .. xi_hi, plus a propagated absolute error bound for each.
struct XiSequence {
  Index first = 2;
  std::vector<double> value;
  std::vector<double> error;
  double at(Index k) const { return value[static_cast<std::size_t>(k - first)]; }
};
XiSequence xi_sequence(const WalkModel& model, Index lo, Index hi, double tol = 1e-12);

struct EscapeBounds {
  double lower = 0.0;
  double upper = 0.0;
  // Relative widening applied to both endpoints for tail-truncation error.
  double rel_error = 0.0;
};
EscapeBounds escape_bounds_12(const WalkModel& model, Index m, Index k, Index n);

enum class RecurrenceClass { Transient, NullRecurrent, PositiveRecurrent };
std::string to_string(RecurrenceClass c);

// Class of Y (TwoOne) or Y' (OneTwo). Throws Unsupported for table models.
RecurrenceClass classify(const WalkModel& model);

// (xi_2 ... xi_n) * e1 N_2 ... N_n e1^t
double xi_inverse_vs_product(const WalkModel& model, Index n);
std::vector<double> xi_inverse_vs_product_series(const WalkModel& model,
                                                 const std::vector<Index>& ns);

struct MaxDistribution {
  Family family = Family::TwoOne;
  std::vector<double> prob;      // element n-2
  std::vector<double> log_prob;  // element n-2
  std::vector<double> rel_error;  // rough relative rounding bound per entry
  double mass = 0.0;
  // (1,2) entries whose product formula lost more than half its digits.
  std::vector<Index> cancellation_flagged;
  double max_digits_lost = 0.0;

  Index n_max() const { return static_cast<Index>(prob.size()) + 1; }
  double at(Index n) const { return prob.at(static_cast<std::size_t>(n - 2)); }
};

// Whole table n = 2..n_max in one sweep, for the walk named by the family.
MaxDistribution max_distribution(const WalkModel& model, Index n_max);
MaxDistribution max_distribution(const WalkModel& model, Family walk, Index n_max);

}  // namespace lampwalk
