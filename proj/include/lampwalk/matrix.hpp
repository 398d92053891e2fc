#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <variant>
#include <vector>

#include "lampwalk/errors.hpp"
#include "lampwalk/perturb.hpp"

namespace lampwalk {

// General 2x2 real matrix, row-major, 0-based accessors.
struct Mat2 {
  std::array<double, 4> v{};

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  double operator()(int i, int j) const { return v[2 * i + j]; }
  double& operator()(int i, int j) { return v[2 * i + j]; }
  double trace() const { return v[0] + v[3]; }
  double det() const { return v[0] * v[3] - v[1] * v[2]; }
  double max_entry() const;
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator*(double s, const Mat2& x);

// Perron root of a nonnegative 2x2 matrix, written without cancellation.
double spectral_radius(const Mat2& m);

// [[a, b], [d, 0]] with a, b, d > 0.
class PosMat2 {
 public:
  PosMat2(double a, double b, double d);
  double a() const { return a_; }
  double b() const { return b_; }
  double d() const { return d_; }
  Mat2 matrix() const { return Mat2{{a_, b_, d_, 0.0}}; }
  bool operator==(const PosMat2&) const = default;

 private:
  double a_, b_, d_;
};

// (a + sqrt(a^2 + 4bd)) / 2
double spectral_radius(const PosMat2& m);

class CoeffSequence {
 public:
  enum class Kind { ExplicitTable, LampertiTheta, Constant };

  // rows[0] is index 1; the sequence ends at rows.size().
  static CoeffSequence table(std::vector<PosMat2> rows);
  static CoeffSequence constant(const PosMat2& m);
  // N_k = (theta_k, theta_k, 1) for the Lamperti walk, indices k >= 2.
  static CoeffSequence lamperti(Family f, const PerturbParams& p);
  // CSV with header k,a,b,d and k = 1, 2, ... contiguous.
  static CoeffSequence from_csv(const std::filesystem::path& path);

  Kind kind() const;
  Index first_index() const;
  // Last valid index, empty for unbounded sequences.
  std::optional<Index> last_index() const;
  PosMat2 at(Index k) const;

  const std::vector<PosMat2>* rows() const;

 private:
  struct Table {
    std::vector<PosMat2> rows;
  };
  struct Lamperti {
    Family family;
    Perturbation pert;
  };
  struct Constant {
    PosMat2 m;
  };
  explicit CoeffSequence(std::variant<Table, Lamperti, Constant> s)
      : src_(std::move(s)) {}
  std::variant<Table, Lamperti, Constant> src_;
};

// Running product A_k ... A_m divided by prod rho(A_j): bounded entries plus
// the accumulated log scale. The empty product (k_to = k_from - 1) is I.
class NormalizedProduct {
 public:
  static NormalizedProduct empty(Index k_from);

  // Left-multiplies by the factor with index k_to + 1.
  NormalizedProduct step(const PosMat2& next) const;
  void advance(const PosMat2& next);

  const Mat2& entries() const { return entries_; }
  double log_scale() const { return log_scale_; }
  Index k_from() const { return k_from_; }
  Index k_to() const { return k_to_; }

  // log of the unnormalized entry (i, j), 0-based; -inf for zero entries.
  double log_entry(int i, int j) const;

 private:
  Mat2 entries_ = Mat2::identity();
  double log_scale_ = 0.0;
  Index k_from_ = 1;
  Index k_to_ = 0;
};

// e_i A_k...A_m e_j^t / prod rho(A_n), with i, j in {1, 2} as in e_1, e_2.
double normalized_entry(const CoeffSequence& seq, Index m, Index k, int i, int j);

// Same quantity at several k in one sweep; ks must be ascending and >= m.
std::vector<double> normalized_entry_series(const CoeffSequence& seq, Index m,
                                            const std::vector<Index>& ks, int i,
                                            int j);

// rho(A_k ... A_m) / prod rho(A_n)
double product_spectral_ratio(const CoeffSequence& seq, Index m, Index k);

struct EigenBounds {
  double zeta;
  double gamma;
};

// Bounds from eigenvector ratios v_n = (rho(A_n), d_n). Advance one index at
// a time; bounds() is valid for the range [m, current].
class EigenBoundsAccumulator {
 public:
  EigenBoundsAccumulator(const PosMat2& first, Index m);
  void advance(const PosMat2& next);
  EigenBounds bounds() const;
  Index current() const { return current_; }

 private:
  double v0_[2];
  double prev_[2];
  double log_max_ = 0.0;
  double log_min_ = 0.0;
  Index current_;
};

EigenBounds eigen_bounds(const CoeffSequence& seq, Index m, Index k);

struct B1Diagnostic {
  double sigma_min;
  double variation_sum;
  // Variation accumulated over the second half of the horizon.
  double late_variation;
};

B1Diagnostic check_b1(const CoeffSequence& seq, Index horizon);

}  // namespace lampwalk
