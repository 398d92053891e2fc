#include <doctest.h>

#include <cmath>

#include "lampwalk/simulate.hpp"
#include "lampwalk/walk.hpp"

using namespace lampwalk;

namespace {

std::uint64_t counted(const EmpiricalDist& d) {
  std::uint64_t s = d.censored_step + d.censored_height;
  for (const auto& [n, c] : d.counts) s += c;
  return s;
}

double frequency(const EmpiricalDist& d, Index n) {
  auto it = d.counts.find(n);
  return it == d.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(d.total);
}

bool within_3se(double freq, double p, double trials) {
  const double se = std::sqrt(std::max(p * (1 - p), 1e-300) / trials);
  return std::fabs(freq - p) <= 3 * se;
}

}  // namespace

TEST_CASE("stream seeds and uniforms") {
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  CHECK(stream_seed(7, 3) == stream_seed(7, 3));
  Rng rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("run_excursion") {
  const auto down_first = WalkModel::q_table(Family::TwoOne, {1e-15, 0.5});
  Rng rng(1);
  const auto o = run_excursion(down_first, rng);
  CHECK(o.max == 2);
  CHECK(o.status == SimStatus::Returned);
  CHECK(o.steps == 1);

  const auto up = WalkModel::q_table(Family::TwoOne, {0.999});
  SimConfig cfg;
  cfg.height_cap = 50;
  int censored = 0;
  for (int i = 0; i < 100; ++i) {
    Rng r(stream_seed(9, i));
    censored += run_excursion(up, r, cfg).status == SimStatus::HeightCensored;
  }
  CHECK(censored >= 90);

  cfg.height_cap = 1'000'000;
  cfg.step_cap = 10;
  Rng r(3);
  const auto s = run_excursion(WalkModel::constant_q(Family::TwoOne, 0.999), r, cfg);
  CHECK(s.status == SimStatus::StepCensored);
  CHECK(s.steps == 10);
}

TEST_CASE("empirical_max_dist bookkeeping and determinism") {
  const auto m = WalkModel::lamperti(Family::OneTwo, {1, 0.5, 1});
  SimConfig cfg;
  cfg.excursions = 20000;
  cfg.seed = 42;
  cfg.height_cap = 500;
  cfg.step_cap = 100000;
  const auto a = empirical_max_dist(m, cfg);
  CHECK(a.total == cfg.excursions);
  CHECK(counted(a) == a.total);
  CHECK(a.family == Family::OneTwo);
  const auto b = empirical_max_dist(m, cfg);
  CHECK(a.counts == b.counts);
  cfg.workers = 4;
  const auto c = empirical_max_dist(m, cfg);
  CHECK(a.counts == c.counts);
  CHECK(a.censored_height == c.censored_height);
  CHECK(a.censored_step == c.censored_step);
  cfg.seed = 43;
  CHECK(empirical_max_dist(m, cfg).counts != a.counts);
}

TEST_CASE("censoring monotonicity") {
  const auto m = WalkModel::lamperti(Family::TwoOne, {1, 2.0, 1});
  SimConfig cfg;
  cfg.excursions = 5000;
  cfg.seed = 7;
  cfg.workers = 2;
  EmpiricalDist prev;
  bool first = true;
  for (auto [h, s] : {std::pair<Index, std::uint64_t>{10, 50}, {40, 500}, {100, 5000}, {400, 100000}}) {
    cfg.height_cap = h;
    cfg.step_cap = s;
    const auto d = empirical_max_dist(m, cfg);
    if (!first)
      for (const auto& [n, count] : prev.counts) CHECK(d.counts.at(n) >= count);
    prev = d;
    first = false;
  }
}

TEST_CASE("near-certain upward drift censors almost everything") {
  SimConfig cfg;
  cfg.excursions = 10000;
  cfg.height_cap = 1000;
  cfg.workers = 4;
  const auto d = empirical_max_dist(WalkModel::q_table(Family::TwoOne, {0.999}), cfg);
  CHECK(d.censored_height >= 9900);
}

TEST_CASE("first-step probabilities, one million excursions") {
  SimConfig cfg;
  cfg.excursions = 1'000'000;
  cfg.seed = 2024;
  cfg.height_cap = 64;
  cfg.workers = 4;
  const auto y12 = empirical_max_dist(WalkModel::constant_q(Family::OneTwo, 2.0 / 3), cfg);
  CHECK(within_3se(frequency(y12, 2), 2.0 / 3, 1e6));
  const auto y21 = empirical_max_dist(WalkModel::constant_q(Family::TwoOne, 0.5), cfg);
  CHECK(within_3se(frequency(y21, 2), 0.5, 1e6));
}

TEST_CASE("agreement with the exact law, n <= 20") {
  SimConfig cfg;
  cfg.excursions = 1'000'000;
  cfg.seed = 99;
  cfg.height_cap = 64;  // excursions reaching it have M > 20 anyway
  cfg.workers = 4;
  int cells = 0, inside = 0;
  for (Family f : {Family::TwoOne, Family::OneTwo})
    for (const auto& m : {WalkModel::lamperti(f, {1, 0.5, 1}), WalkModel::lamperti(f, {2, 2.0, -1}),
                          WalkModel::constant_q(f, 0.6)}) {
      const auto d = empirical_max_dist(m, cfg);
      const auto exact = max_distribution(m, 20);
      for (Index n = 2; n <= 20; ++n) {
        ++cells;
        inside += within_3se(frequency(d, n), exact.at(n), static_cast<double>(cfg.excursions));
      }
      ++cfg.seed;
    }
  CHECK(inside >= 0.95 * cells);
}

TEST_CASE("empirical_hitting") {
  const auto m = WalkModel::lamperti(Family::OneTwo, {1, 0.5, 1});
  const auto h3 = empirical_hitting(m, 1, 3, 10000, 1);
  CHECK(h3.at_n == 0.0);
  CHECK(h3.at_n + h3.at_n1 + h3.low == doctest::Approx(1.0).epsilon(1e-12));
  const auto a = empirical_hitting(m, 2, 10, 5000, 5, 1), b = empirical_hitting(m, 2, 10, 5000, 5, 3);
  CHECK(a.at_n == b.at_n);
  CHECK(a.low == b.low);
  CHECK_THROWS_AS(empirical_hitting(m, 3, 3, 10, 1), InvalidArgument);

  const std::uint64_t trials = 1'000'000;
  const auto h = empirical_hitting(m, 1, 50, trials, 11, 4);
  const double r = hitting_ratio(m, 50).value;
  const double share = h.at_n1 / (h.at_n + h.at_n1);
  const double up_trials = (h.at_n + h.at_n1) * static_cast<double>(trials);
  CHECK(within_3se(share, 1 / (1 + r), up_trials));
  const auto split = hitting_split_reduction(m, 1, 50);
  CHECK(within_3se(h.low, split.low, static_cast<double>(trials)));
}
