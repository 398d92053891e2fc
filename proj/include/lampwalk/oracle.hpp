#pragma once

#include <vector>

#include "lampwalk/walk.hpp"

namespace lampwalk {

// Brute-force reference for small n: P(M = n, D < inf) = F(n) - F(n-1), where
// F(n) is the probability of dropping below 2 before exceeding n, obtained
// from a dense linear solve in long double. Element n-2 holds n. Meant for
// n_max up to a few hundred.
std::vector<double> max_dist_linear_solve(const WalkModel& model, Family walk, Index n_max);

}  // namespace lampwalk
