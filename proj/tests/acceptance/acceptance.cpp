// Acceptance suite: one PASS/FAIL line per criterion.
//   lampwalk_acceptance                 run all criteria
//   lampwalk_acceptance --criterion N   run criterion N only
// Exit status is 0 iff every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lampwalk/lampwalk.hpp"
#include "oracle/oracle.hpp"

using namespace lampwalk;

namespace {

// Pinned tolerances.
constexpr double kOracleAbsTol = 1e-12;
constexpr Index kOracleNMax = 30;
constexpr double kClosedFormTol = 1e-14;
constexpr double kRatioTol = 1e-3;
constexpr Index kRatioN = 200;
constexpr std::uint64_t kMcExcursions = 1'000'000;
constexpr std::uint64_t kMcSeed = 20240611;
constexpr Index kMcHeightCap = 32;  // only M > 20 is affected
constexpr double kMcSe = 3.0;
constexpr double kMcCellShare = 0.95;
constexpr double kSpreadTol = 1e-4;
constexpr Index kProductLo = 100000, kProductHi = 200000;
constexpr double kIntervalLo = 1e-2, kIntervalHi = 1e2;
constexpr int kSandwichSeqs = 1000;
constexpr Index kSandwichK = 200;
constexpr double kSandwichSlack = 1e-12;
constexpr double kHittingRelTol = 0.02;
constexpr Index kHittingN = 5000;
constexpr double kRateRelTol = 0.01;
constexpr Index kRateN = 1'000'000;
constexpr double kSlopeTol = 0.1;
constexpr Index kFitLo = Index{1} << 10, kFitHi = Index{1} << 14;
constexpr double kBoundaryTol = 0.05;
constexpr Index kXiFitLo = 100, kXiFitHi = 1000, kXiHi = 100000;
constexpr double kXiTailTol = 1e-15;

struct Result {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

oracle::StepFn step_fn(const WalkModel& m) {
  return [m](long k) { return static_cast<oracle::Ld>(m.p(k)); };
}

oracle::Jumps jumps(Family f) {
  return f == Family::TwoOne ? oracle::Jumps::UpOneDownTwo : oracle::Jumps::DownOneUpTwo;
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Table as_table(const MaxDistribution& d) {
  Table t;
  for (Index n = 2; n <= d.n_max(); ++n) t[n] = d.at(n);
  return t;
}

Result oracle_equivalence() {
  std::vector<WalkModel> models;
  for (Family f : {Family::TwoOne, Family::OneTwo}) {
    for (auto p : {PerturbParams{1, 0.0, 1}, PerturbParams{1, 1.0, 1}, PerturbParams{1, -1.0, -1},
                   PerturbParams{2, 0.0, 1}, PerturbParams{2, 2.0, -1}})
      models.push_back(WalkModel::lamperti(f, p));
    models.push_back(WalkModel::q_table(f, {0.5}));
  }
  double worst = 0;
  for (const auto& m : models) {
    const auto d = max_distribution(m, kOracleNMax);
    for (Index n = 2; n <= kOracleNMax; ++n) {
      const auto want = oracle::max_dist(jumps(m.family()), step_fn(m), n);
      worst = std::max(worst, static_cast<double>(std::fabs(static_cast<oracle::Ld>(d.at(n)) - want)));
    }
  }
  return {worst <= kOracleAbsTol,
          std::to_string(models.size()) + " models, n<=30, worst |diff| " + fmt("%.2e", worst)};
}

Result simple_walk() {
  Result r;
  const auto fair = WalkModel::q_table(Family::TwoOne, {0.5});
  const double p2 = max_dist_21(fair, 2), p3 = max_dist_21(fair, 3);
  const bool closed = std::fabs(p2 - 0.5) <= kClosedFormTol && std::fabs(p3 - 0.25) <= kClosedFormTol;

  const auto m = WalkModel::constant_q(Family::TwoOne, 0.7);
  const auto d = max_distribution(m, kRatioN + 1);
  const double ratio = d.at(kRatioN + 1) / d.at(kRatioN);
  const double rho = spectral_radius(m.n_matrix(2));
  const double target = 14 / (3 + std::sqrt(93.0));
  const bool literal = std::fabs(ratio - target) <= kRatioTol;
  r.pass = closed && literal;
  r.detail = "P(M=2)=" + fmt("%.17g", p2) + " P(M=3)=" + fmt("%.17g", p3) +
             "; q=0.7 ratio at n=200 " + fmt("%.6f", ratio) + " vs 1/rho " + fmt("%.6f", target) +
             (literal ? "" : " (outside 1e-3)") + "; vs rho " + fmt("%.6f", rho) + " diff " +
             fmt("%.1e", std::fabs(ratio - rho));
  return r;
}

Result monte_carlo() {
  const auto m = WalkModel::lamperti(Family::TwoOne, {1, 0.5, 1});
  SimConfig cfg;
  cfg.excursions = kMcExcursions;
  cfg.seed = kMcSeed;
  cfg.height_cap = kMcHeightCap;
  cfg.workers = workers();
  const auto emp = empirical_max_dist(m, cfg);
  const auto exact = max_distribution(m, 20);
  int inside = 0, cells = 0;
  const double N = static_cast<double>(emp.total);
  for (Index n = 2; n <= 20; ++n) {
    const double p = exact.at(n);
    const auto it = emp.counts.find(n);
    const double f = it == emp.counts.end() ? 0.0 : static_cast<double>(it->second) / N;
    ++cells;
    inside += std::fabs(f - p) <= kMcSe * std::sqrt(p * (1 - p) / N);
  }
  return {inside >= kMcCellShare * cells,
          std::to_string(inside) + "/" + std::to_string(cells) + " cells within 3 SE, seed " +
              std::to_string(kMcSeed)};
}

Result theorem1() {
  Result r;
  double worst_spread = 0, lo = INFINITY, hi = 0;
  int models = 0;
  for (double B : {-2.0, -1.0, 0.5, 1.0, 2.0})
    for (int sign : {1, -1}) {
      const auto seq = CoeffSequence::lamperti(Family::TwoOne, {1, B, sign});
      auto prod = NormalizedProduct::empty(2);
      double wlo = INFINITY, whi = -INFINITY;
      for (Index k = 2; k <= kProductHi; ++k) {
        prod.advance(seq.at(k));
        const double x = prod.entries()(0, 0);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
        if (k >= kProductLo) {
          wlo = std::min(wlo, x);
          whi = std::max(whi, x);
        }
      }
      worst_spread = std::max(worst_spread, whi - wlo);
      ++models;
    }
  r.pass = worst_spread < kSpreadTol && lo >= kIntervalLo && hi <= kIntervalHi;
  r.detail = std::to_string(models) + " models, worst spread " + fmt("%.2e", worst_spread) +
             ", x_k in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "]";
  return r;
}

Result sandwich() {
  std::mt19937_64 rng(7);
  std::uint64_t pairs = 0, violations = 0;
  double worst = 0;
  for (int i = 0; i < kSandwichSeqs; ++i) {
    const auto rep = sandwich_check(random_b1_sequence(rng, kSandwichK), kSandwichK, kSandwichSlack);
    pairs += rep.pairs;
    violations += rep.violations;
    worst = std::max(worst, rep.worst_excess);
  }
  return {violations == 0, std::to_string(pairs) + " (m,k) pairs, " + std::to_string(violations) +
                               " violations, worst excess " + fmt("%.1e", worst)};
}

Result hitting() {
  Result r;
  std::ostringstream os;
  for (double B : {-0.5, 0.5})
    for (int sign : {1, -1}) {
      const auto h = hitting_ratio(WalkModel::lamperti(Family::OneTwo, {1, B, sign}), kHittingN);
      const bool ok = std::fabs(h.value / 2 - 1) <= kHittingRelTol;
      r.pass = r.pass && ok;
      os << "B=" << B << (sign > 0 ? "+" : "-") << ":" << fmt("%.4f", h.value) << " ";
    }
  r.detail = os.str();
  return r;
}

Result increment_rate() {
  Result r;
  std::ostringstream os;
  int passed = 0, total = 0;
  for (int K = 1; K <= 3; ++K)
    for (double B : {-2.0, 0.0, 2.0}) {
      const double v = r_increment_rate({K, B, 1}, kRateN);
      const bool ok = std::fabs(v - 1) <= kRateRelTol;
      passed += ok;
      ++total;
      os << "(" << K << "," << B << ")=" << fmt("%.4f", v) << " ";
    }
  r.pass = passed == total;
  r.detail = std::to_string(passed) + "/" + std::to_string(total) + " within 1%: " + os.str();
  return r;
}

Result decay_shapes() {
  Result r;
  std::ostringstream os;
  for (Family f : {Family::TwoOne, Family::OneTwo}) {
    os << family_name(f) << "[";
    for (double B : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
      const PerturbParams p{1, B, 1};
      const auto t = as_table(max_distribution(WalkModel::lamperti(f, p), kFitHi));
      if (B == 1.0) {
        const auto d = asymptote_ratio(
            t, [](double n) { return 1 / (n * std::log(n) * std::log(n)); },
            geometric_checkpoints(kFitLo, kFitHi), kBoundaryTol);
        r.pass = r.pass && d.verdict == Verdict::Converged;
        os << " B=1 ror " << fmt("%.4f", d.spread);
        continue;
      }
      const double want = B > 1 ? -B : -(2 - B);
      const double slope = local_exponent(t, kFitLo, kFitHi).slope;
      r.pass = r.pass && std::fabs(slope - want) <= kSlopeTol;
      os << " B=" << B << " " << fmt("%.4f", slope);
    }
    os << " ] ";
  }
  r.detail = os.str();
  return r;
}

// Recurrence classes as tabulated for q = 2/3 + u r (Y) and its adjoint Y'
// with p = 1/3 - u r. Returns {class of Y, class of Y'}.
std::pair<RecurrenceClass, RecurrenceClass> class_table(int K, double B, int u) {
  using RC = RecurrenceClass;
  if (K == 1 && u < 0) {  // r = B/(3i) for K = 1, so flipping u flips B
    B = -B;
    u = 1;
  }
  if (K == 1) {
    if (B > 1) return {RC::Transient, RC::PositiveRecurrent};
    if (B < -1) return {RC::PositiveRecurrent, RC::Transient};
    return {RC::NullRecurrent, RC::NullRecurrent};
  }
  if (B <= 1) return {RC::NullRecurrent, RC::NullRecurrent};
  if (u > 0) return {RC::Transient, RC::PositiveRecurrent};
  return {RC::PositiveRecurrent, RC::Transient};
}

Result classifier() {
  int rows = 0, matched = 0;
  for (int K = 1; K <= 3; ++K)
    for (double B : {-3.0, -1.0, 0.0, 1.0, 3.0})
      for (int sign : {1, -1})
        for (Family f : {Family::TwoOne, Family::OneTwo}) {
          const int u = f == Family::TwoOne ? sign : -sign;
          const auto [y, y_adj] = class_table(K, B, u);
          const auto want = f == Family::TwoOne ? y : y_adj;
          ++rows;
          matched += classify(WalkModel::lamperti(f, {K, B, sign})) == want;
        }
  return {matched == rows, std::to_string(matched) + "/" + std::to_string(rows) + " rows"};
}

Result xi_expansion() {
  Result r;
  std::ostringstream os;
  for (double B : {0.5, 1.0})
    for (int sign : {1, -1}) {
      const PerturbParams p{1, B, sign};
      const Perturbation pert(p);
      const auto m = WalkModel::lamperti(Family::OneTwo, p);
      const auto xs = xi_sequence(m, kXiFitLo, kXiHi, kXiTailTol);
      auto scaled_residual = [&](Index n) {
        const double rn = pert.r(n);
        return std::fabs(xs.at(n) - (1 - 3 * sign * rn)) / (rn * rn);
      };
      double C = 0, worst = 0;
      for (Index n = kXiFitLo; n <= kXiFitHi; ++n) C = std::max(C, scaled_residual(n));
      for (Index n = kXiFitLo; n <= kXiHi; ++n) worst = std::max(worst, scaled_residual(n));
      r.pass = r.pass && worst <= C;
      os << "B=" << B << (sign > 0 ? "+" : "-") << " C=" << fmt("%.3f", C) << " max " << fmt("%.3f", worst)
         << " ";
    }
  r.detail = os.str();
  return r;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Result()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "oracle equivalence of exact laws", oracle_equivalence},
      {2, "simple-walk closed forms", simple_walk},
      {3, "Monte Carlo consistency", monte_carlo},
      {4, "normalized product convergence", theorem1},
      {5, "eigenvector sandwich", sandwich},
      {6, "hitting ratio limit 2", hitting},
      {7, "perturbation increment rate", increment_rate},
      {8, "decay shapes", decay_shapes},
      {9, "classifier table", classifier},
      {10, "xi expansion", xi_expansion},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] C%d %s: %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), secs);
    std::fflush(stdout);
    all_pass = all_pass && r.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
