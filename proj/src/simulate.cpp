#include "lampwalk/simulate.hpp"

#include <algorithm>
#include <thread>

namespace lampwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Runs body(i, acc) for i in [0, count) on `workers` threads with contiguous
// ranges, then merges the per-thread accumulators in thread order.
template <class Acc, class Body, class Merge>
Acc parallel_reduce(std::uint64_t count, unsigned workers, Body body, Merge merge) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(
                                                         std::max<std::uint64_t>(count, 1))));
  std::vector<Acc> parts(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t begin = count * w / workers, end = count * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) body(i, parts[w]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  Acc out = parts[0];
  for (unsigned w = 1; w < workers; ++w) merge(out, parts[w]);
  return out;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

ExcursionSampler::ExcursionSampler(const WalkModel& model, Family walk, Index height_cap,
                                   std::uint64_t step_cap)
    : walk_(walk), height_cap_(height_cap), step_cap_(step_cap) {
  if (height_cap < 2 || step_cap < 1) throw InvalidArgument("caps must be >= 1 (height >= 2)");
  p_.resize(static_cast<std::size_t>(height_cap) + 1, 0.0);
  for (Index k = 2; k <= height_cap; ++k) p_[static_cast<std::size_t>(k)] = model.p(k);
}

SimOutcome ExcursionSampler::run(Rng& rng) const {
  SimOutcome out;
  Index x = 2;
  const Index long_step = walk_ == Family::TwoOne ? -2 : 2;
  const Index short_step = walk_ == Family::TwoOne ? 1 : -1;
  while (true) {
    if (out.steps >= step_cap_) {
      out.status = SimStatus::StepCensored;
      return out;
    }
    ++out.steps;
    x += uniform01(rng) < p_[static_cast<std::size_t>(x)] ? long_step : short_step;
    if (x < 2) return out;
    if (x > height_cap_) {
      out.status = SimStatus::HeightCensored;
      return out;
    }
    out.max = std::max(out.max, x);
  }
}

SimOutcome run_excursion(const WalkModel& model, Rng& rng, const SimConfig& cfg) {
  return ExcursionSampler(model, model.family(), cfg.height_cap, cfg.step_cap).run(rng);
}

EmpiricalDist empirical_max_dist(const WalkModel& model, const SimConfig& cfg) {
  if (cfg.excursions < 1) throw InvalidArgument("excursions must be >= 1");
  const ExcursionSampler sampler(model, model.family(), cfg.height_cap, cfg.step_cap);
  auto body = [&](std::uint64_t i, EmpiricalDist& acc) {
    Rng rng(stream_seed(cfg.seed, i));
    const SimOutcome o = sampler.run(rng);
    ++acc.total;
    switch (o.status) {
      case SimStatus::Returned: ++acc.counts[o.max]; break;
      case SimStatus::StepCensored: ++acc.censored_step; break;
      case SimStatus::HeightCensored: ++acc.censored_height; break;
    }
  };
  auto merge = [](EmpiricalDist& a, const EmpiricalDist& b) {
    for (const auto& [n, c] : b.counts) a.counts[n] += c;
    a.censored_step += b.censored_step;
    a.censored_height += b.censored_height;
    a.total += b.total;
  };
  EmpiricalDist out = parallel_reduce<EmpiricalDist>(cfg.excursions, cfg.workers, body, merge);
  out.family = model.family();
  return out;
}

HittingFrequencies empirical_hitting(const WalkModel& model, Index m, Index n,
                                     std::uint64_t trials, std::uint64_t seed,
                                     unsigned workers) {
  if (!(1 <= m && m < n)) throw InvalidArgument("empirical_hitting requires 1 <= m < n");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
  for (Index k = std::max<Index>(m + 1, 2); k < n; ++k) p[static_cast<std::size_t>(k)] = model.p(k);
  struct Counts {
    std::uint64_t at_n = 0, at_n1 = 0, low = 0;
  };
  auto body = [&](std::uint64_t i, Counts& acc) {
    Rng rng(stream_seed(seed, i));
    Index x = m + 1;
    while (x > m && x < n)
      x += uniform01(rng) < p[static_cast<std::size_t>(x)] ? 2 : -1;
    if (x <= m)
      ++acc.low;
    else if (x == n)
      ++acc.at_n;
    else
      ++acc.at_n1;
  };
  auto merge = [](Counts& a, const Counts& b) {
    a.at_n += b.at_n;
    a.at_n1 += b.at_n1;
    a.low += b.low;
  };
  const Counts c = parallel_reduce<Counts>(trials, workers, body, merge);
  const double t = static_cast<double>(trials);
  return {static_cast<double>(c.at_n) / t, static_cast<double>(c.at_n1) / t,
          static_cast<double>(c.low) / t, trials};
}

}  // namespace lampwalk
