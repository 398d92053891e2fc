#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lampwalk/matrix.hpp"
#include "lampwalk/perturb.hpp"
#include "lampwalk/walk.hpp"

namespace lampwalk {

enum class Verdict { Converged, NotConverged, Inconclusive };
std::string to_string(Verdict v);

struct Checkpoint {
  Index n;
  double value;
};

struct SeriesDiagnostic {
  std::vector<Checkpoint> checkpoints;
  Verdict verdict = Verdict::Inconclusive;
  double limit_est = 0.0;
  double spread = 0.0;
  // Number of trailing checkpoints forming the final window.
  std::size_t window = 0;
};

using SeriesSource = std::function<double(Index)>;
// n -> value
using Table = std::map<Index, double>;

// Converged iff max - min over the final window is below tol; limit_est is
// the last value. The final window is the last half of the checkpoints unless
// window_begin is given, in which case it holds every checkpoint >= it. With
// relative = true the spread is divided by |limit_est|.
SeriesDiagnostic convergence_check(std::vector<Checkpoint> values, double tol,
                                   std::optional<Index> window_begin = std::nullopt,
                                   bool relative = false);
SeriesDiagnostic convergence_check(const SeriesSource& series, const std::vector<Index>& ks,
                                   double tol, std::optional<Index> window_begin = std::nullopt,
                                   bool relative = false);

struct SlopeEstimate {
  double slope;
  double stderr_;
  std::size_t points;
};

// Least-squares slope of log value against log n over every table entry with
// n in [lo, hi].
SlopeEstimate local_exponent(const Table& table, Index lo, Index hi);

// Ratio table(n)/predicted(n) at the checkpoints; Converged iff the last two
// ratios agree to within tol (ratio of ratios).
SeriesDiagnostic asymptote_ratio(const Table& table, const std::function<double(double)>& predicted,
                                 const std::vector<Index>& checkpoints, double tol);
SeriesDiagnostic asymptote_ratio(const Table& table, const PerturbParams& p, int predicted_sign,
                                 const std::vector<Index>& checkpoints, double tol);

// Predicted decay of P(M = n, D < inf), up to a constant, for the Lamperti
// walks: q = 2/3 + sign*r for (2,1) and p = 1/3 + sign*r for (1,2) share it.
std::function<double(double)> decay_law(const PerturbParams& p);

// sigma_2...sigma_n / sum_{i=1}^{n} sigma_2...sigma_i at the checkpoints;
// Converged means the ratio fell below tol at the last checkpoint.
SeriesDiagnostic sto_check(const SeriesSource& sigma, Index n_max, double tol,
                           std::vector<Index> checkpoints = {});

// Exact 1 - P_n(1,n+1,+) divided by xi_2...xi_n / sum_{s=2}^{n+1} xi_2...xi_{s-1}
// for the (1,2) walk; Converged iff the relative spread is below tol.
SeriesDiagnostic pce_check(const WalkModel& model, const std::vector<Index>& checkpoints,
                           double tol = 0.05);

// 2^a, 2^{a+1}, ... up to hi, plus the endpoints.
std::vector<Index> geometric_checkpoints(Index lo, Index hi, double factor = 2.0);
std::vector<Index> linear_checkpoints(Index lo, Index hi, Index count);

// Sandwich zeta <= rho(product)/prod rho <= gamma over all m <= k <= k_max.
struct SandwichReport {
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  double worst_excess = 0.0;  // largest relative overshoot past a bound
};
SandwichReport sandwich_check(const CoeffSequence& seq, Index k_max, double rel_slack = 1e-12);

// Positive sequence with coefficients near random limits and O(1/k^2)
// increments; indices 1..horizon.
CoeffSequence random_b1_sequence(std::mt19937_64& rng, Index horizon);

}  // namespace lampwalk
