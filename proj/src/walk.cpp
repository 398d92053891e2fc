#include "lampwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lampwalk/scaled.hpp"

namespace lampwalk {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// A subtraction losing more than this many decimal digits is flagged.
constexpr double kCancellationDigits = 8.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

StepProbs probs_from_q(double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidProbability("q must lie in (0,1)");
  return {1.0 - q, q};
}

}  // namespace

WalkModel WalkModel::lamperti(Family f, const PerturbParams& p) {
  WalkModel m(f, Lamperti{Perturbation(p)});
  m.probs(2);
  return m;
}

WalkModel WalkModel::constant_q(Family f, double q) {
  probs_from_q(q);
  return WalkModel(f, Constant{q});
}

WalkModel WalkModel::q_table(Family f, std::vector<double> q_values) {
  if (q_values.empty()) throw InvalidArgument("q table is empty");
  for (double q : q_values) probs_from_q(q);
  return WalkModel(f, Table{std::move(q_values)});
}

WalkModel WalkModel::from_coefficients(Family f, const CoeffSequence& seq) {
  std::vector<double> q;
  auto push = [&](const PosMat2& m) {
    if (m.a() != m.b() || m.d() != 1.0)
      throw InvalidArgument("walk coefficient rows must have the form (theta, theta, 1)");
    q.push_back(1.0 / (1.0 + m.a()));
  };
  switch (seq.kind()) {
    case CoeffSequence::Kind::Constant:
      push(seq.at(1));
      return constant_q(f, q.front());
    case CoeffSequence::Kind::ExplicitTable: {
      const auto& rows = *seq.rows();
      if (rows.size() < 2) throw InvalidArgument("walk coefficient table needs rows k = 1, 2, ...");
      for (std::size_t k = 1; k < rows.size(); ++k) push(rows[k]);
      return q_table(f, std::move(q));
    }
    default:
      throw InvalidArgument("use WalkModel::lamperti for parametric sequences");
  }
}

StepProbs WalkModel::probs(Index k) const {
  if (k < 2) throw InvalidArgument("walk transition probabilities start at state 2");
  if (auto* l = std::get_if<Lamperti>(&src_)) return lamperti_probs(family_, l->pert, k);
  if (auto* c = std::get_if<Constant>(&src_)) return probs_from_q(c->q);
  const auto& t = std::get<Table>(src_).q;
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(k - 2), t.size() - 1);
  return probs_from_q(t[idx]);
}

double WalkModel::theta(Index k) const {
  const StepProbs s = probs(k);
  return s.p / s.q;
}

PosMat2 WalkModel::n_matrix(Index k) const {
  const double th = theta(k);
  return PosMat2(th, th, 1.0);
}

CoeffSequence WalkModel::n_sequence() const {
  if (auto* l = std::get_if<Lamperti>(&src_))
    return CoeffSequence::lamperti(family_, l->pert.params());
  if (std::holds_alternative<Constant>(src_)) return CoeffSequence::constant(n_matrix(2));
  const auto& t = std::get<Table>(src_).q;
  std::vector<PosMat2> rows;
  rows.push_back(n_matrix(2));
  for (std::size_t i = 0; i < t.size(); ++i) rows.push_back(n_matrix(static_cast<Index>(i) + 2));
  return CoeffSequence::table(std::move(rows));
}

CFCoeffs WalkModel::xi_coeffs() const {
  WalkModel self = *this;
  CFCoeffs c;
  c.alpha = [](Index) { return 1.0; };
  c.beta = [self](Index k) { return 1.0 / self.theta(k); };
  c.alpha_inf = 1.0;
  if (std::holds_alternative<Lamperti>(src_)) c.beta_inf = 2.0;
  if (auto* q = std::get_if<Constant>(&src_)) c.beta_inf = q->q / (1.0 - q->q);
  return c;
}

const PerturbParams* WalkModel::lamperti_params() const {
  if (auto* l = std::get_if<Lamperti>(&src_)) return &l->pert.params();
  return nullptr;
}

std::optional<double> WalkModel::constant_q_value() const {
  if (auto* c = std::get_if<Constant>(&src_)) return c->q;
  return std::nullopt;
}

const std::vector<double>* WalkModel::q_values() const {
  if (auto* t = std::get_if<Table>(&src_)) return &t->q;
  return nullptr;
}

// ---------------------------------------------------------------------------
// (2,1) walk: sums of e1 N_s ... N_{m+1} e1^t, anchored at the bottom.

double escape_prob_21(const WalkModel& model, Index m, Index k, Index n) {
  if (!(0 < m && m <= k && k <= n && m < n))
    throw InvalidArgument("escape_prob_21 requires 0 < m <= k <= n and m < n");
  auto w = ScaledMat2::identity();
  ScaledReal num = (k == m) ? ScaledReal::one() : ScaledReal{};
  ScaledReal den = ScaledReal::one();
  for (Index s = m + 1; s <= n - 1; ++s) {
    w.times_left(model.n_matrix(s));
    const ScaledReal y = w.entry(0, 0);
    den = den + y;
    if (s >= k) num = num + y;
  }
  return ratio(num, den);
}

namespace {

// Forward sweep for the (2,1) walk: after advance() to n it holds
// y_n = e1 N_n...N_2 e1^t and S_n = y_2 + ... + y_n.
class Sweep21 {
 public:
  explicit Sweep21(const WalkModel& model) : model_(model) {}
  Index n() const { return n_; }
  void advance() {
    ++n_;
    w_.times_left(model_.n_matrix(n_));
    y_ = w_.entry(0, 0);
    s_prev_ = s_;
    s_ = s_ + y_;
  }
  // P(M = n, D < inf)
  ScaledReal max_prob() const {
    const ScaledReal one = ScaledReal::one();
    return y_ / ((one + s_prev_) * (one + s_));
  }

 private:
  const WalkModel& model_;
  Index n_ = 1;
  ScaledMat2 w_ = ScaledMat2::identity();
  ScaledReal y_;
  ScaledReal s_;
  ScaledReal s_prev_;
};

// Forward sweep for the (1,2) walk. At index j it holds Pi_j = N_2...N_j and
// Q_j = sum_{s=2}^{j} N_s...N_j (Pi_1 = I, Q_1 = 0).
class Sweep12 {
 public:
  explicit Sweep12(const WalkModel& model) : model_(model) {}
  Index j() const { return j_; }
  void advance() {
    ++j_;
    const PosMat2 nj = model_.n_matrix(j_);
    q_.add_identity();
    q_.times_right(nj);
    pi_.times_right(nj);
  }
  // Hitting [n, inf) from 2 with n = j+1: the at-n part is
  // Pi11 (1+Q12)/(1+Q11) - Pi12, and the total is Pi11/(1+Q11).
  struct Split {
    ScaledReal at_n;
    ScaledReal up;
    double digits_lost = 0.0;
  };
  Split split() const {
    const ScaledReal one = ScaledReal::one();
    if (j_ == 1) return {one, one, 0.0};
    const ScaledReal d11 = one + q_.entry(0, 0);
    const double t1 = pi_.mant(0, 0) * ratio(one + q_.entry(0, 1), d11);
    const double diff = t1 - pi_.mant(0, 1);
    Split s;
    s.digits_lost = diff > 0.0 ? std::max(0.0, std::log10(t1 / diff))
                               : std::numeric_limits<double>::infinity();
    s.at_n = ScaledReal{std::max(diff, 0.0), pi_.exp};
    s.at_n.normalize();
    s.up = pi_.entry(0, 0) / d11;
    return s;
  }
  UpHitting up_hitting() const {
    const Split s = split();
    return {s.at_n.value(), s.up.value(), s.digits_lost};
  }
  // 1 - P_j(1, j+1, +)
  ScaledReal escape_down() const {
    const ScaledReal one = ScaledReal::one();
    return one / (one + q_.entry(0, 0));
  }

 private:
  const WalkModel& model_;
  Index j_ = 1;
  ScaledMat2 pi_ = ScaledMat2::identity();
  ScaledMat2 q_ = ScaledMat2::zero();
};

struct Entry12 {
  ScaledReal prob;
  double digits_lost;
  bool cancellation;
  double formula_prob;
};

// Sweep positioned at j = n-1; leaves it at j = n.
Entry12 entry12(Sweep12& sw, const WalkModel& model, Index n) {
  const auto s = sw.split();
  Entry12 e{{}, s.digits_lost, s.digits_lost > kCancellationDigits, 0.0};
  ScaledReal at_n = s.at_n;
  if (e.cancellation) at_n = ScaledReal::from(hitting_split_reduction(model, 1, n).at_n);
  sw.advance();
  const ScaledReal down = sw.escape_down();
  e.prob = at_n * down;
  e.formula_prob = (s.at_n * down).value();
  return e;
}

}  // namespace

double max_dist_21(const WalkModel& model, Index n) {
  if (n < 2) throw InvalidArgument("max_dist_21 requires n >= 2");
  Sweep21 sw(model);
  while (sw.n() < n) sw.advance();
  return sw.max_prob().value();
}

Dist12Value max_dist_12(const WalkModel& model, Index n) {
  if (n < 2) throw InvalidArgument("max_dist_12 requires n >= 2");
  Sweep12 sw(model);
  while (sw.j() < n - 1) sw.advance();
  const Entry12 e = entry12(sw, model, n);
  return {e.prob.value(), e.prob.log(), e.digits_lost, e.cancellation, e.formula_prob};
}

UpHitting up_hitting_12(const WalkModel& model, Index n) {
  if (n < 2) throw InvalidArgument("up_hitting_12 requires n >= 2");
  Sweep12 sw(model);
  while (sw.j() < n - 1) sw.advance();
  UpHitting u = sw.up_hitting();
  if (u.digits_lost > kCancellationDigits) u.at_n = hitting_split_reduction(model, 1, n).at_n;
  return u;
}

double escape_down_12(const WalkModel& model, Index n) {
  if (n < 2) throw InvalidArgument("escape_down_12 requires n >= 2");
  Sweep12 sw(model);
  while (sw.j() < n) sw.advance();
  return sw.escape_down().value();
}

std::vector<double> escape_down_12_series(const WalkModel& model, const std::vector<Index>& ns) {
  if (!std::is_sorted(ns.begin(), ns.end()) || (!ns.empty() && ns.front() < 2))
    throw InvalidArgument("checkpoints must be ascending and >= 2");
  std::vector<double> out;
  Sweep12 sw(model);
  for (Index n : ns) {
    while (sw.j() < n) sw.advance();
    out.push_back(sw.escape_down().value());
  }
  return out;
}

HittingRatio hitting_ratio(const WalkModel& model, Index n) {
  if (n < 3) throw InvalidArgument("hitting_ratio requires n >= 3");
  const UpHitting u = up_hitting_12(model, n);
  HittingRatio out;
  double at_n = u.at_n, at_n1 = u.up - u.at_n;
  // the denominator is a second difference with its own cancellation
  const double den_lost = at_n1 > 0.0 ? std::log10(u.up / at_n1) : kInf;
  out.digits_lost = std::max(u.digits_lost, den_lost);
  if (out.digits_lost > kCancellationDigits) {
    out.cancellation = true;
    const HittingSplit h = hitting_split_reduction(model, 1, n);
    at_n = h.at_n;
    at_n1 = h.at_n1;
  }
  if (at_n1 == 0.0) {
    out.zero_denominator = true;
    out.value = kInf;
    return out;
  }
  out.value = at_n / at_n1;
  return out;
}

MaxDistribution max_distribution(const WalkModel& model, Index n_max) {
  return max_distribution(model, model.family(), n_max);
}

MaxDistribution max_distribution(const WalkModel& model, Family walk, Index n_max) {
  if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
  MaxDistribution out;
  out.family = walk;
  const auto size = static_cast<std::size_t>(n_max - 1);
  out.prob.reserve(size);
  out.log_prob.reserve(size);
  out.rel_error.reserve(size);
  ScaledReal mass;
  if (walk == Family::TwoOne) {
    Sweep21 sw(model);
    for (Index n = 2; n <= n_max; ++n) {
      sw.advance();
      const ScaledReal pr = sw.max_prob();
      out.prob.push_back(pr.value());
      out.log_prob.push_back(pr.log());
      out.rel_error.push_back(8.0 * static_cast<double>(n) * kEps);
      mass = mass + pr;
    }
  } else {
    Sweep12 sw(model);
    for (Index n = 2; n <= n_max; ++n) {
      const Entry12 e = entry12(sw, model, n);
      out.prob.push_back(e.prob.value());
      out.log_prob.push_back(e.prob.log());
      const double amp = e.cancellation ? 1.0 : std::pow(10.0, e.digits_lost);
      out.rel_error.push_back(8.0 * static_cast<double>(n) * kEps * amp);
      // structural zeros report infinite loss and are left out
      if (std::isfinite(e.digits_lost))
        out.max_digits_lost = std::max(out.max_digits_lost, e.digits_lost);
      if (e.cancellation) out.cancellation_flagged.push_back(n);
      mass = mass + e.prob;
    }
  }
  out.mass = mass.value();
  return out;
}

// ---------------------------------------------------------------------------
// Tails xi_n = theta_n^{-1}/(1 + theta_{n+1}^{-1}/(1 + ...)).

double xi_finite(const WalkModel& model, Index s, Index n) {
  if (!(2 <= s && s <= n)) throw InvalidArgument("xi_finite requires 2 <= s <= n");
  return backward_eval(model.xi_coeffs(), s, n);
}

TailEstimate xi(const WalkModel& model, Index n, double tol) {
  if (n < 2) throw InvalidArgument("xi requires n >= 2");
  return tail(model.xi_coeffs(), n - 1, tol);
}

XiSequence xi_sequence(const WalkModel& model, Index lo, Index hi, double tol) {
  if (!(2 <= lo && lo <= hi)) throw InvalidArgument("xi_sequence requires 2 <= lo <= hi");
  const auto size = static_cast<std::size_t>(hi - lo + 1);
  XiSequence out{lo, std::vector<double>(size), std::vector<double>(size)};
  const TailEstimate top = xi(model, hi, tol);
  out.value[size - 1] = top.value;
  out.error[size - 1] = top.est_error;
  // xi_k = theta_k^{-1}/(1 + xi_{k+1}); the map contracts by xi_k/(1 + xi_{k+1}).
  for (std::size_t i = size - 1; i-- > 0;) {
    const Index k = lo + static_cast<Index>(i);
    const double next = out.value[i + 1];
    const double x = 1.0 / (model.theta(k) * (1.0 + next));
    out.value[i] = x;
    out.error[i] = out.error[i + 1] * x / (1.0 + next) + 2.0 * kEps * x;
  }
  return out;
}

EscapeBounds escape_bounds_12(const WalkModel& model, Index m, Index k, Index n) {
  if (!(1 <= m && m <= k && k <= n))
    throw InvalidArgument("escape_bounds_12 requires 1 <= m <= k <= n");
  ScaledReal lower_num, upper_num;
  ScaledReal lower_den = ScaledReal::one();
  ScaledReal upper_den = ScaledReal::one();
  if (k == m) {
    lower_num = ScaledReal::one();
    upper_num = ScaledReal::one();
  }
  double rel = 0.0;
  if (n > m) {
    const XiSequence xs = xi_sequence(model, m + 1, n);
    ScaledReal prod = ScaledReal::one();
    for (Index i = m + 1; i <= n; ++i) {
      const double x = xs.at(i);
      rel += xs.error[static_cast<std::size_t>(i - xs.first)] / x;
      prod = prod * ScaledReal::from(x);
      if (i <= n - 1) {
        lower_den = lower_den + prod;
        if (i >= k) lower_num = lower_num + prod;
      }
      upper_den = upper_den + prod;
      if (i >= k) upper_num = upper_num + prod;
    }
  }
  rel += 4.0 * static_cast<double>(n - m + 1) * kEps;
  EscapeBounds b;
  b.rel_error = 2.0 * rel;
  b.lower = std::max(0.0, ratio(lower_num, lower_den) * (1.0 - b.rel_error));
  b.upper = std::min(1.0, ratio(upper_num, upper_den) * (1.0 + b.rel_error));
  return b;
}

double xi_inverse_vs_product(const WalkModel& model, Index n) {
  return xi_inverse_vs_product_series(model, {n}).front();
}

std::vector<double> xi_inverse_vs_product_series(const WalkModel& model,
                                                 const std::vector<Index>& ns) {
  std::vector<double> out;
  if (ns.empty()) return out;
  if (!std::is_sorted(ns.begin(), ns.end()) || ns.front() < 2)
    throw InvalidArgument("checkpoints must be ascending and >= 2");
  const XiSequence xs = xi_sequence(model, 2, ns.back());
  auto pi = ScaledMat2::identity();
  double log_xi = 0.0;
  Index j = 1;
  for (Index n : ns) {
    while (j < n) {
      ++j;
      pi.times_right(model.n_matrix(j));
      log_xi += std::log(xs.at(j));
    }
    out.push_back(std::exp(log_xi + pi.entry(0, 0).log()));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(RecurrenceClass c) {
  switch (c) {
    case RecurrenceClass::Transient: return "transient";
    case RecurrenceClass::NullRecurrent: return "null-recurrent";
    default: return "positive-recurrent";
  }
}

namespace {

struct PairClass {
  RecurrenceClass y;
  RecurrenceClass y_adj;
};

constexpr PairClass kYTransient{RecurrenceClass::Transient, RecurrenceClass::PositiveRecurrent};
constexpr PairClass kYPositive{RecurrenceClass::PositiveRecurrent, RecurrenceClass::Transient};
constexpr PairClass kBothNull{RecurrenceClass::NullRecurrent, RecurrenceClass::NullRecurrent};

// Classes of Y and Y' for theta from q_k = 2/3 + up * r_k (up = +1 or -1).
PairClass lamperti_pair(const PerturbParams& p, int up) {
  if (p.K == 1) {
    const double b = up * p.B;
    if (b > 1.0) return kYTransient;
    if (b < -1.0) return kYPositive;
    return kBothNull;
  }
  if (p.B <= 1.0) return kBothNull;
  return up > 0 ? kYTransient : kYPositive;
}

}  // namespace

RecurrenceClass classify(const WalkModel& model) {
  const bool want_y = model.family() == Family::TwoOne;
  if (const PerturbParams* p = model.lamperti_params()) {
    // (1,2) with p = 1/3 + sign*r has q = 2/3 - sign*r.
    const int up = want_y ? p->sign : -p->sign;
    const PairClass c = lamperti_pair(*p, up);
    return want_y ? c.y : c.y_adj;
  }
  if (auto q = model.constant_q_value()) {
    PairClass c = kBothNull;
    if (*q > 2.0 / 3.0) c = kYTransient;
    if (*q < 2.0 / 3.0) c = kYPositive;
    // the (1,2) walk with down-probability q is the adjoint of the (2,1) walk
    // with up-probability q
    return want_y ? c.y : c.y_adj;
  }
  throw Unsupported("classification needs a Lamperti or constant model");
}

}  // namespace lampwalk
