#include "lampwalk/oracle.hpp"

#include <cmath>
#include <utility>

namespace lampwalk {

namespace {

// Probability that the walk started at 2 drops below 2 before leaving
// [2, n] upward.
long double return_before_exceeding(const WalkModel& model, Family walk, Index n) {
  const auto size = static_cast<std::size_t>(n - 1);  // states 2..n
  std::vector<std::vector<long double>> a(size, std::vector<long double>(size + 1, 0.0L));
  const Index long_step = walk == Family::TwoOne ? -2 : 2;
  const Index short_step = walk == Family::TwoOne ? 1 : -1;
  for (Index k = 2; k <= n; ++k) {
    const auto r = static_cast<std::size_t>(k - 2);
    const StepProbs pr = model.probs(k);
    a[r][r] = 1.0L;
    for (auto [step, prob] : {std::pair{long_step, pr.p}, std::pair{short_step, pr.q}}) {
      const Index to = k + step;
      if (to < 2)
        a[r][size] += prob;
      else if (to <= n)
        a[r][static_cast<std::size_t>(to - 2)] -= prob;
    }
  }
  for (std::size_t c = 0; c < size; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < size; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = c + 1; r < size; ++r) {
      const long double f = a[r][c] / a[c][c];
      if (f == 0.0L) continue;
      for (std::size_t j = c; j <= size; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<long double> x(size);
  for (std::size_t r = size; r-- > 0;) {
    long double s = a[r][size];
    for (std::size_t j = r + 1; j < size; ++j) s -= a[r][j] * x[j];
    x[r] = s / a[r][r];
  }
  return x[0];
}

}  // namespace

std::vector<double> max_dist_linear_solve(const WalkModel& model, Family walk, Index n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  if (n_max > 400) throw InvalidArgument("dense reference solve is limited to n_max <= 400");
  std::vector<double> out;
  long double prev = 0.0L;
  for (Index n = 2; n <= n_max; ++n) {
    const long double f = return_before_exceeding(model, walk, n);
    out.push_back(static_cast<double>(f - prev));
    prev = f;
  }
  return out;
}

}  // namespace lampwalk
