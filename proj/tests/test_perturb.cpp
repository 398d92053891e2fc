#include <doctest.h>

#include <cmath>

#include "lampwalk/perturb.hpp"

using namespace lampwalk;

TEST_CASE("iterated_log") {
  CHECK(*iterated_log(0, 7.0) == 7.0);
  CHECK(*iterated_log(1, M_E) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::fabs(*iterated_log(2, M_E)) < 1e-15);
  CHECK_FALSE(iterated_log(3, M_E).has_value());
  CHECK_FALSE(iterated_log(3, 1.0).has_value());
  CHECK_FALSE(iterated_log(1, -2.0).has_value());
}

TEST_CASE("lambda") {
  CHECK(lambda({1, 2.0, 1}, 10) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(lambda({2, 1.0, 1}, 10) == doctest::Approx(0.1 + 1.0 / (10.0 * std::log(10.0))).epsilon(1e-15));
  CHECK(lambda({2, 1.0, 1}, 10) == doctest::Approx(0.1434294).epsilon(1e-7));
  CHECK(lambda({2, 0.0, 1}, 10) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK_THROWS_AS(lambda({2, 0.0, 1}, 1), NotDefined);
  CHECK_THROWS_AS(lambda({3, 0.0, 1}, 2), NotDefined);
}

TEST_CASE("i_zero scans upward from 2") {
  CHECK(i_zero({1, 1.0, 1}) == 2);
  CHECK(i_zero({1, 5.0, 1}) == 6);
  // log 2 > 0 and Lambda(2,2,0) = 1/2, so 2 already qualifies
  CHECK(i_zero({2, 0.0, 1}) == 2);
  // brute-force scan written out independently
  for (int K = 1; K <= 3; ++K)
    for (double B : {-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      Index expect = 2;
      for (;; ++expect) {
        double x = static_cast<double>(expect), prod = 1.0, sum = 0.0;
        bool ok = true;
        for (int l = 0; l < K; ++l) {
          if (x <= 0) {
            ok = false;
            break;
          }
          prod *= x;
          if (l < K - 1) sum += 1.0 / prod;
          x = std::log(x);
        }
        if (ok && std::fabs(sum + B / prod) < 1.0) break;
      }
      CHECK(i_zero({K, B, 1}) == expect);
    }
}

TEST_CASE("r") {
  CHECK(r({1, 1.0, 1}, 9) == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
  CHECK(r({1, 1.0, 1}, 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(r({1, -2.0, 1}, 100) == doctest::Approx(-1.0 / 150.0).epsilon(1e-15));
  CHECK(r({1, 0.0, 1}, 50) == 0.0);
  // clamped below i0
  const PerturbParams p{1, 5.0, 1};
  CHECK(r(p, 3) == r(p, 6));
  CHECK_THROWS_AS(r(p, 0), InvalidArgument);
}

TEST_CASE("asymptote") {
  CHECK(asymptote({1, 2.0, 1}, 100, 1) == doctest::Approx(10000.0).epsilon(1e-13));
  CHECK(asymptote({2, 1.0, 1}, 100, 1) == doctest::Approx(100.0 * std::log(100.0)).epsilon(1e-13));
  CHECK(asymptote({2, 1.0, 1}, 100, 1) == doctest::Approx(460.517).epsilon(1e-6));
  for (const PerturbParams& p : {PerturbParams{1, 0.5, 1}, PerturbParams{2, -1.0, 1}, PerturbParams{3, 2.0, -1}})
    CHECK(asymptote(p, 1000, -1) == doctest::Approx(1.0 / asymptote(p, 1000, 1)).epsilon(1e-14));
  CHECK_THROWS_AS(asymptote({3, 1.0, 1}, 2, 1), NotDefined);
}

TEST_CASE("r_increment_rate") {
  CHECK(r_increment_rate({1, 1.0, 1}, 99) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK(r_increment_rate({2, 0.0, 1}, 1000000) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(r_increment_rate({1, 0.0, 1}, 500) == 0.0);
  // K = 1 is exactly B n/(n+1)
  for (double B : {-2.0, 0.5, 2.0})
    CHECK(r_increment_rate({1, B, 1}, 1000) == doctest::Approx(B * 1000.0 / 1001.0).epsilon(1e-9));
}

TEST_CASE("monotone decay and summability of r") {
  for (int K = 1; K <= 3; ++K)
    for (double B : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
      const Perturbation pert({K, B, 1});
      // |r_i| non-increasing from some point on within the tested range
      bool tail_monotone = true;
      for (Index i = 1000; i < 20000; ++i)
        if (std::fabs(pert.r(i + 1)) > std::fabs(pert.r(i)) * (1 + 1e-14)) tail_monotone = false;
      CHECK(tail_monotone);
      double s1 = 0.0, s2 = 0.0;
      for (Index i = 1; i < 10000; ++i) s1 += std::fabs(pert.r(i + 1) - pert.r(i));
      s2 = s1;
      for (Index i = 10000; i < 100000; ++i) s2 += std::fabs(pert.r(i + 1) - pert.r(i));
      CHECK(s2 - s1 < 1e-3);
    }
}

TEST_CASE("asymptote consistency under doubling") {
  // log A(2n) - log A(n) equals the growth of its own factors
  for (int K = 1; K <= 3; ++K)
    for (double B : {-1.0, 0.5, 2.0}) {
      const PerturbParams p{K, B, 1};
      const double n = 1e6;
      double growth = 0.0;
      double x = n, y = 2 * n;
      for (int j = 0; j <= K - 2; ++j) {
        growth += std::log(y / x);
        x = std::log(x);
        y = std::log(y);
      }
      growth += B * std::log(y / x);
      CHECK(std::log(asymptote(p, 2 * n, 1)) - std::log(asymptote(p, n, 1)) ==
            doctest::Approx(growth).epsilon(1e-9));
    }
}

TEST_CASE("lamperti transition probabilities") {
  const Perturbation pert({1, 1.0, 1});
  const StepProbs s = lamperti_probs(Family::TwoOne, pert, 9);
  CHECK(s.q == doctest::Approx(2.0 / 3.0 + 1.0 / 27.0).epsilon(1e-15));
  CHECK(lamperti_theta(Family::TwoOne, pert, 9) == doctest::Approx(8.0 / 19.0).epsilon(1e-14));
  const StepProbs t = lamperti_probs(Family::OneTwo, pert, 9);
  CHECK(t.p == doctest::Approx(1.0 / 3.0 + 1.0 / 27.0).epsilon(1e-15));
  CHECK(lamperti_theta(Family::TwoOne, Perturbation({1, 0.0, 1}), 5) == 0.5);
}
