#pragma once

#include <cmath>
#include <cstdint>

#include "lampwalk/matrix.hpp"

namespace lampwalk {

// Nonnegative real stored as mant * 2^exp with mant in [0.5, 1) (or 0).
// Rescaling is by exact powers of two, so only genuine arithmetic rounds.
struct ScaledReal {
  double mant = 0.0;
  std::int64_t exp = 0;

  static ScaledReal from(double x) {
    ScaledReal r;
    int e = 0;
    r.mant = std::frexp(x, &e);
    r.exp = e;
    return r;
  }
  static ScaledReal one() { return from(1.0); }

  void normalize() {
    if (mant == 0.0) {
      exp = 0;
      return;
    }
    int e = 0;
    mant = std::frexp(mant, &e);
    exp += e;
  }
  bool is_zero() const { return mant == 0.0; }
  double log() const {
    return mant == 0.0 ? -INFINITY : std::log(mant) + static_cast<double>(exp) * M_LN2;
  }
  // May underflow to 0 or overflow to inf.
  double value() const {
    if (exp > 2000) return mant == 0.0 ? 0.0 : INFINITY;
    if (exp < -2000) return 0.0;
    return std::ldexp(mant, static_cast<int>(exp));
  }
};

inline double shift(double x, std::int64_t by) {
  if (by < -1100) return 0.0;
  if (by > 1100) return x == 0.0 ? 0.0 : INFINITY;
  return std::ldexp(x, static_cast<int>(by));
}

inline ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  ScaledReal r;
  if (a.exp >= b.exp) {
    r.mant = a.mant + shift(b.mant, b.exp - a.exp);
    r.exp = a.exp;
  } else {
    r.mant = b.mant + shift(a.mant, a.exp - b.exp);
    r.exp = b.exp;
  }
  r.normalize();
  return r;
}

inline ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
  ScaledReal r{a.mant * b.mant, a.exp + b.exp};
  r.normalize();
  return r;
}

inline ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
  ScaledReal r{a.mant / b.mant, a.exp - b.exp};
  r.normalize();
  return r;
}

// a/b as a plain double.
inline double ratio(const ScaledReal& a, const ScaledReal& b) {
  return shift(a.mant / b.mant, a.exp - b.exp);
}

// Nonnegative 2x2 matrix times 2^exp, largest entry in [0.5, 1).
struct ScaledMat2 {
  Mat2 mant = Mat2::identity();
  std::int64_t exp = 0;

  static ScaledMat2 identity() { return {Mat2::identity(), 0}; }
  static ScaledMat2 zero() { return {Mat2{}, 0}; }

  void normalize() {
    const double mx = mant.max_entry();
    if (mx == 0.0) {
      exp = 0;
      return;
    }
    int e = 0;
    std::frexp(mx, &e);
    for (double& x : mant.v) x = std::ldexp(x, -e);
    exp += e;
  }
  ScaledReal entry(int i, int j) const {
    ScaledReal r{mant(i, j), exp};
    r.normalize();
    return r;
  }
  // this * m
  void times_right(const PosMat2& m) {
    const Mat2& x = mant;
    mant = Mat2{{x.v[0] * m.a() + x.v[1] * m.d(), x.v[0] * m.b(),
                 x.v[2] * m.a() + x.v[3] * m.d(), x.v[2] * m.b()}};
    normalize();
  }
  // m * this
  void times_left(const PosMat2& m) {
    const Mat2& x = mant;
    mant = Mat2{{m.a() * x.v[0] + m.b() * x.v[2], m.a() * x.v[1] + m.b() * x.v[3],
                 m.d() * x.v[0], m.d() * x.v[1]}};
    normalize();
  }
  void add_identity() {
    if (mant.max_entry() == 0.0) {
      *this = identity();
      return;
    }
    if (exp < -1100) {
      for (double& x : mant.v) x = 0.0;
      mant(0, 0) = mant(1, 1) = 1.0;
      exp = 0;
      normalize();
      return;
    }
    const double one = shift(1.0, -exp);
    mant(0, 0) += one;
    mant(1, 1) += one;
    normalize();
  }
};

}  // namespace lampwalk
