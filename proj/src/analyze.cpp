#include "lampwalk/analyze.hpp"

#include <algorithm>
#include <cmath>

#include "lampwalk/scaled.hpp"

namespace lampwalk {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::NotConverged: return "not-converged";
    default: return "inconclusive";
  }
}

namespace {

void check_increasing(const std::vector<Checkpoint>& cps) {
  for (std::size_t i = 1; i < cps.size(); ++i)
    if (cps[i].n <= cps[i - 1].n) throw InvalidArgument("checkpoints must be strictly increasing");
}

}  // namespace

SeriesDiagnostic convergence_check(std::vector<Checkpoint> values, double tol,
                                   std::optional<Index> window_begin, bool relative) {
  if (values.size() < 3) throw InvalidArgument("convergence_check needs at least 3 checkpoints");
  check_increasing(values);
  SeriesDiagnostic d;
  d.checkpoints = std::move(values);
  const auto& cps = d.checkpoints;
  std::size_t first = cps.size() / 2;
  if (window_begin) {
    first = cps.size();
    for (std::size_t i = 0; i < cps.size(); ++i)
      if (cps[i].n >= *window_begin) {
        first = i;
        break;
      }
  }
  d.window = cps.size() - first;
  d.limit_est = cps.back().value;
  if (d.window < 2) return d;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = first; i < cps.size(); ++i) {
    if (!std::isfinite(cps[i].value)) return d;
    lo = std::min(lo, cps[i].value);
    hi = std::max(hi, cps[i].value);
  }
  d.spread = hi - lo;
  if (relative) {
    if (d.limit_est == 0.0) return d;
    d.spread /= std::fabs(d.limit_est);
  }
  d.verdict = d.spread < tol ? Verdict::Converged : Verdict::NotConverged;
  return d;
}

SeriesDiagnostic convergence_check(const SeriesSource& series, const std::vector<Index>& ks,
                                   double tol, std::optional<Index> window_begin, bool relative) {
  std::vector<Checkpoint> cps;
  for (Index k : ks) cps.push_back({k, series(k)});
  return convergence_check(std::move(cps), tol, window_begin, relative);
}

SlopeEstimate local_exponent(const Table& table, Index lo, Index hi) {
  if (lo <= 0 || hi < 4 * lo) throw InvalidArgument("local_exponent needs 0 < 4*n_lo <= n_hi");
  std::vector<double> xs, ys;
  for (auto it = table.lower_bound(lo); it != table.end() && it->first <= hi; ++it) {
    if (!(it->second > 0.0))
      throw NonPositiveValue("local_exponent: value at n=" + std::to_string(it->first) +
                             " is not positive");
    xs.push_back(std::log(static_cast<double>(it->first)));
    ys.push_back(std::log(it->second));
  }
  const std::size_t n = xs.size();
  if (n < 3) throw InvalidArgument("local_exponent: fewer than 3 points in the window");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = ys[i] - my - slope * (xs[i] - mx);
    ssr += res * res;
  }
  return {slope, std::sqrt(ssr / static_cast<double>(n - 2) / sxx), n};
}

SeriesDiagnostic asymptote_ratio(const Table& table, const std::function<double(double)>& predicted,
                                 const std::vector<Index>& checkpoints, double tol) {
  if (checkpoints.size() < 2) throw InvalidArgument("asymptote_ratio needs 2 checkpoints");
  SeriesDiagnostic d;
  for (Index n : checkpoints) {
    auto it = table.find(n);
    if (it == table.end())
      throw InvalidArgument("asymptote_ratio: table has no entry at n=" + std::to_string(n));
    const double pred = predicted(static_cast<double>(n));
    if (!(it->second > 0.0) || !(pred > 0.0))
      throw NonPositiveValue("asymptote_ratio: non-positive value at n=" + std::to_string(n));
    d.checkpoints.push_back({n, it->second / pred});
  }
  check_increasing(d.checkpoints);
  const double last = d.checkpoints.back().value;
  const double prev = d.checkpoints[d.checkpoints.size() - 2].value;
  d.window = 2;
  d.limit_est = last;
  d.spread = std::fabs(last / prev - 1.0);
  d.verdict = d.spread < tol ? Verdict::Converged : Verdict::NotConverged;
  return d;
}

SeriesDiagnostic asymptote_ratio(const Table& table, const PerturbParams& p, int predicted_sign,
                                 const std::vector<Index>& checkpoints, double tol) {
  return asymptote_ratio(
      table, [p, predicted_sign](double n) { return asymptote(p, n, predicted_sign); },
      checkpoints, tol);
}

std::function<double(double)> decay_law(const PerturbParams& p) {
  validate(p);
  const int K = p.K;
  const double B = p.B;
  auto inv = [](PerturbParams q) { return [q](double n) { return asymptote(q, n, -1); }; };
  if (p.sign > 0) {
    if (B == 1.0) return inv({K + 1, 2.0, 1});
    if (B > 1.0) return inv({K, B, 1});
    return inv({K, 2.0 - B, 1});
  }
  if (K == 1) {
    if (B > -1.0) return [B](double n) { return std::pow(n, -(B + 2.0)); };
    if (B == -1.0) return inv({2, 2.0, 1});
    return [B](double n) { return std::pow(n, B); };
  }
  return [K, B](double n) { return 1.0 / (n * n * asymptote({K, B, 1}, n, 1)); };
}

SeriesDiagnostic sto_check(const SeriesSource& sigma, Index n_max, double tol,
                           std::vector<Index> checkpoints) {
  if (n_max < 10) throw InvalidArgument("sto_check requires n_max >= 10");
  if (checkpoints.empty()) checkpoints = geometric_checkpoints(10, n_max);
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.back() > n_max ||
      checkpoints.front() < 1)
    throw InvalidArgument("sto_check: checkpoints must be ascending within [1, n_max]");
  SeriesDiagnostic d;
  ScaledReal prod = ScaledReal::one();
  ScaledReal sum = ScaledReal::one();
  std::size_t next = 0;
  for (Index n = 1; n <= checkpoints.back(); ++n) {
    if (n >= 2) {
      const double s = sigma(n);
      if (!(s > 0.0)) throw NonPositiveValue("sto_check: sigma must be positive");
      prod = prod * ScaledReal::from(s);
      sum = sum + prod;
    }
    while (next < checkpoints.size() && checkpoints[next] == n) {
      d.checkpoints.push_back({n, ratio(prod, sum)});
      ++next;
    }
  }
  check_increasing(d.checkpoints);
  d.window = 1;
  d.limit_est = d.checkpoints.back().value;
  d.spread = d.limit_est;
  d.verdict = d.limit_est < tol ? Verdict::Converged : Verdict::NotConverged;
  return d;
}

SeriesDiagnostic pce_check(const WalkModel& model, const std::vector<Index>& checkpoints,
                           double tol) {
  if (model.family() != Family::OneTwo) throw InvalidArgument("pce_check needs a (1,2) model");
  if (checkpoints.size() < 3) throw InvalidArgument("pce_check needs at least 3 checkpoints");
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end()) || checkpoints.front() < 2)
    throw InvalidArgument("pce_check: checkpoints must be ascending and >= 2");
  const Index n_max = checkpoints.back();
  const std::vector<double> exact = escape_down_12_series(model, checkpoints);
  const XiSequence xs = xi_sequence(model, 2, n_max);
  std::vector<Checkpoint> cps;
  ScaledReal prod = ScaledReal::one();
  ScaledReal sum = ScaledReal::one();
  std::size_t next = 0;
  for (Index n = 2; n <= n_max; ++n) {
    prod = prod * ScaledReal::from(xs.at(n));
    sum = sum + prod;
    if (checkpoints[next] == n) {
      const double expr = ratio(prod, sum);
      cps.push_back({n, exact[next] / expr});
      ++next;
    }
  }
  return convergence_check(std::move(cps), tol, checkpoints.front(), true);
}

std::vector<Index> geometric_checkpoints(Index lo, Index hi, double factor) {
  if (lo < 1 || hi < lo || !(factor > 1.0)) throw InvalidArgument("bad checkpoint range");
  std::vector<Index> out;
  for (double x = static_cast<double>(lo); x < static_cast<double>(hi); x *= factor) {
    const auto n = static_cast<Index>(std::llround(x));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.empty() || out.back() < hi) out.push_back(hi);
  return out;
}

std::vector<Index> linear_checkpoints(Index lo, Index hi, Index count) {
  if (count < 2 || hi <= lo) throw InvalidArgument("bad checkpoint range");
  std::vector<Index> out;
  for (Index i = 0; i < count; ++i) {
    const Index n = lo + (hi - lo) * i / (count - 1);
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

SandwichReport sandwich_check(const CoeffSequence& seq, Index k_max, double rel_slack) {
  SandwichReport rep;
  const Index first = seq.first_index();
  std::vector<PosMat2> mats;
  for (Index k = first; k <= k_max; ++k) mats.push_back(seq.at(k));
  auto at = [&](Index k) { return mats[static_cast<std::size_t>(k - first)]; };
  for (Index m = first; m <= k_max; ++m) {
    auto prod = NormalizedProduct::empty(m);
    EigenBoundsAccumulator acc(at(m), m);
    prod.advance(at(m));
    for (Index k = m;; ++k) {
      const double ratio_k = spectral_radius(prod.entries());
      const EigenBounds b = acc.bounds();
      ++rep.pairs;
      const double below = (b.zeta - ratio_k) / b.zeta;
      const double above = (ratio_k - b.gamma) / b.gamma;
      const double excess = std::max(below, above);
      if (excess > rel_slack) ++rep.violations;
      rep.worst_excess = std::max(rep.worst_excess, excess);
      if (k == k_max) break;
      prod.advance(at(k + 1));
      acc.advance(at(k + 1));
    }
  }
  return rep;
}

CoeffSequence random_b1_sequence(std::mt19937_64& rng, Index horizon) {
  std::uniform_real_distribution<double> log_limit(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> amp(-0.5, 0.5);
  std::uniform_real_distribution<double> noise(-0.3, 0.3);
  double lim[3], drift[3];
  for (int c = 0; c < 3; ++c) {
    lim[c] = std::exp(log_limit(rng));
    drift[c] = amp(rng);
  }
  std::vector<PosMat2> rows;
  for (Index k = 1; k <= horizon; ++k) {
    const double kk = static_cast<double>(k);
    double v[3];
    for (int c = 0; c < 3; ++c)
      v[c] = lim[c] * (1.0 + drift[c] / kk + noise(rng) / (kk * kk));
    rows.emplace_back(v[0], v[1], v[2]);
  }
  return CoeffSequence::table(std::move(rows));
}

}  // namespace lampwalk
