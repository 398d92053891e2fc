#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "lampwalk/walk.hpp"

namespace lampwalk {

// Random numbers: std::mt19937_64, uniforms formed as (x >> 11) * 2^-53.
// Excursion (or trial) i draws from its own generator seeded with
// stream_seed(seed, i), so results do not depend on the worker count and a
// path is the same whatever the caps are.
using Rng = std::mt19937_64;

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);
double uniform01(Rng& rng);

struct SimConfig {
  std::uint64_t excursions = 1;
  std::uint64_t seed = 0;
  std::uint64_t step_cap = 100'000'000;
  Index height_cap = 1'000'000;
  unsigned workers = 1;
};

enum class SimStatus { Returned, StepCensored, HeightCensored };

struct SimOutcome {
  Index max = 2;
  SimStatus status = SimStatus::Returned;
  std::uint64_t steps = 0;
};

struct EmpiricalDist {
  Family family = Family::TwoOne;
  std::map<Index, std::uint64_t> counts;
  std::uint64_t censored_step = 0;
  std::uint64_t censored_height = 0;
  std::uint64_t total = 0;
};

// Transition probabilities tabulated up to a height cap.
class ExcursionSampler {
 public:
  ExcursionSampler(const WalkModel& model, Family walk, Index height_cap,
                   std::uint64_t step_cap);
  // Starts at 2 and runs until the walk drops below 2 or a cap binds.
  SimOutcome run(Rng& rng) const;
  Family walk() const { return walk_; }

 private:
  Family walk_;
  Index height_cap_;
  std::uint64_t step_cap_;
  std::vector<double> p_;  // p_[k] for 2 <= k <= height_cap
};

SimOutcome run_excursion(const WalkModel& model, Rng& rng, const SimConfig& cfg = {});

// Simulates the walk named by the model's family.
EmpiricalDist empirical_max_dist(const WalkModel& model, const SimConfig& cfg);

struct HittingFrequencies {
  double at_n = 0.0;
  double at_n1 = 0.0;
  double low = 0.0;
  std::uint64_t trials = 0;
};

// (1,2) walk started at m+1 until it enters [0, m] or [n, inf).
HittingFrequencies empirical_hitting(const WalkModel& model, Index m, Index n,
                                     std::uint64_t trials, std::uint64_t seed,
                                     unsigned workers = 1);

}  // namespace lampwalk
