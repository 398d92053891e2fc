#include "lampwalk/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "csv_util.hpp"

namespace lampwalk {

double Mat2::max_entry() const { return *std::max_element(v.begin(), v.end()); }

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return Mat2{{x.v[0] * y.v[0] + x.v[1] * y.v[2], x.v[0] * y.v[1] + x.v[1] * y.v[3],
               x.v[2] * y.v[0] + x.v[3] * y.v[2], x.v[2] * y.v[1] + x.v[3] * y.v[3]}};
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
  return Mat2{{x.v[0] + y.v[0], x.v[1] + y.v[1], x.v[2] + y.v[2], x.v[3] + y.v[3]}};
}

Mat2 operator*(double s, const Mat2& x) {
  return Mat2{{s * x.v[0], s * x.v[1], s * x.v[2], s * x.v[3]}};
}

double spectral_radius(const Mat2& m) {
  const double diff = m.v[0] - m.v[3];
  return 0.5 * (m.v[0] + m.v[3] + std::sqrt(diff * diff + 4.0 * m.v[1] * m.v[2]));
}

PosMat2::PosMat2(double a, double b, double d) : a_(a), b_(b), d_(d) {
  if (!(a > 0.0 && b > 0.0 && d > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(d))
    throw InvalidArgument("PosMat2 requires finite a, b, d > 0");
}

double spectral_radius(const PosMat2& m) {
  return 0.5 * (m.a() + std::sqrt(m.a() * m.a() + 4.0 * m.b() * m.d()));
}

CoeffSequence CoeffSequence::table(std::vector<PosMat2> rows) {
  if (rows.empty()) throw InvalidArgument("coefficient table is empty");
  return CoeffSequence(Table{std::move(rows)});
}

CoeffSequence CoeffSequence::constant(const PosMat2& m) {
  return CoeffSequence(Constant{m});
}

CoeffSequence CoeffSequence::lamperti(Family f, const PerturbParams& p) {
  return CoeffSequence(Lamperti{f, Perturbation(p)});
}

CoeffSequence CoeffSequence::from_csv(const std::filesystem::path& path) {
  const auto rows = detail::read_numeric_csv(path, {"k", "a", "b", "d"});
  std::vector<PosMat2> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r][0] != static_cast<double>(r + 1))
      throw InvalidArgument(path.string() + ": k must run 1, 2, ... without gaps");
    out.emplace_back(rows[r][1], rows[r][2], rows[r][3]);
  }
  return table(std::move(out));
}

CoeffSequence::Kind CoeffSequence::kind() const {
  switch (src_.index()) {
    case 0: return Kind::ExplicitTable;
    case 1: return Kind::LampertiTheta;
    default: return Kind::Constant;
  }
}

Index CoeffSequence::first_index() const {
  return std::holds_alternative<Lamperti>(src_) ? 2 : 1;
}

std::optional<Index> CoeffSequence::last_index() const {
  if (auto* t = std::get_if<Table>(&src_)) return static_cast<Index>(t->rows.size());
  return std::nullopt;
}

const std::vector<PosMat2>* CoeffSequence::rows() const {
  if (auto* t = std::get_if<Table>(&src_)) return &t->rows;
  return nullptr;
}

PosMat2 CoeffSequence::at(Index k) const {
  if (k < first_index())
    throw InvalidArgument("coefficient index " + std::to_string(k) + " below first index");
  if (auto* t = std::get_if<Table>(&src_)) {
    if (k > static_cast<Index>(t->rows.size()))
      throw InvalidArgument("coefficient index " + std::to_string(k) + " beyond table");
    return t->rows[static_cast<std::size_t>(k - 1)];
  }
  if (auto* c = std::get_if<Constant>(&src_)) return c->m;
  const auto& l = std::get<Lamperti>(src_);
  const double th = lamperti_theta(l.family, l.pert, k);
  return PosMat2(th, th, 1.0);
}

NormalizedProduct NormalizedProduct::empty(Index k_from) {
  NormalizedProduct p;
  p.k_from_ = k_from;
  p.k_to_ = k_from - 1;
  return p;
}

NormalizedProduct NormalizedProduct::step(const PosMat2& next) const {
  NormalizedProduct out = *this;
  out.advance(next);
  return out;
}

void NormalizedProduct::advance(const PosMat2& next) {
  const double rho = spectral_radius(next);
  const double a = next.a() / rho, b = next.b() / rho, d = next.d() / rho;
  const Mat2& e = entries_;
  entries_ = Mat2{{a * e.v[0] + b * e.v[2], a * e.v[1] + b * e.v[3], d * e.v[0], d * e.v[1]}};
  log_scale_ += std::log(rho);
  ++k_to_;
  const bool single = (k_to_ == k_from_);
  for (int idx = 0; idx < 4; ++idx) {
    const double x = entries_.v[idx];
    if (!std::isfinite(x))
      throw DegenerateEntry(k_to_, "non-finite normalized entry at k=" + std::to_string(k_to_));
    if (x == 0.0 && !(single && idx == 3))
      throw DegenerateEntry(k_to_, "normalized entry underflowed at k=" + std::to_string(k_to_));
  }
}

double NormalizedProduct::log_entry(int i, int j) const {
  return std::log(entries_(i, j)) + log_scale_;
}

namespace {

void check_range(const CoeffSequence& seq, Index m, Index k) {
  if (m > k) throw InvalidArgument("require m <= k");
  if (m < seq.first_index()) throw InvalidArgument("m below the first index of the sequence");
  if (auto last = seq.last_index(); last && k > *last)
    throw InvalidArgument("k beyond the end of the sequence");
}

int basis(int i) {
  if (i != 1 && i != 2) throw InvalidArgument("basis index must be 1 or 2");
  return i - 1;
}

NormalizedProduct sweep(const CoeffSequence& seq, Index m, Index k) {
  check_range(seq, m, k);
  auto prod = NormalizedProduct::empty(m);
  for (Index n = m; n <= k; ++n) prod.advance(seq.at(n));
  return prod;
}

}  // namespace

double normalized_entry(const CoeffSequence& seq, Index m, Index k, int i, int j) {
  const int r = basis(i), c = basis(j);
  return sweep(seq, m, k).entries()(r, c);
}

std::vector<double> normalized_entry_series(const CoeffSequence& seq, Index m,
                                            const std::vector<Index>& ks, int i,
                                            int j) {
  const int r = basis(i), c = basis(j);
  std::vector<double> out;
  if (ks.empty()) return out;
  if (!std::is_sorted(ks.begin(), ks.end()))
    throw InvalidArgument("checkpoints must be ascending");
  check_range(seq, m, ks.back());
  if (ks.front() < m) throw InvalidArgument("checkpoints must be >= m");
  auto prod = NormalizedProduct::empty(m);
  for (Index k : ks) {
    while (prod.k_to() < k) prod.advance(seq.at(prod.k_to() + 1));
    out.push_back(prod.entries()(r, c));
  }
  return out;
}

double product_spectral_ratio(const CoeffSequence& seq, Index m, Index k) {
  return spectral_radius(sweep(seq, m, k).entries());
}

EigenBoundsAccumulator::EigenBoundsAccumulator(const PosMat2& first, Index m)
    : v0_{spectral_radius(first), first.d()},
      prev_{v0_[0], v0_[1]},
      current_(m) {}

void EigenBoundsAccumulator::advance(const PosMat2& next) {
  const double v[2] = {spectral_radius(next), next.d()};
  const double r0 = v[0] / prev_[0], r1 = v[1] / prev_[1];
  log_max_ += std::log(std::max(r0, r1));
  log_min_ += std::log(std::min(r0, r1));
  prev_[0] = v[0];
  prev_[1] = v[1];
  ++current_;
}

EigenBounds EigenBoundsAccumulator::bounds() const {
  const double r0 = v0_[0] / prev_[0], r1 = v0_[1] / prev_[1];
  return {std::exp(log_min_) * std::min(r0, r1), std::exp(log_max_) * std::max(r0, r1)};
}

EigenBounds eigen_bounds(const CoeffSequence& seq, Index m, Index k) {
  check_range(seq, m, k);
  EigenBoundsAccumulator acc(seq.at(m), m);
  for (Index n = m + 1; n <= k; ++n) acc.advance(seq.at(n));
  return acc.bounds();
}

B1Diagnostic check_b1(const CoeffSequence& seq, Index horizon) {
  if (horizon < 2) throw InvalidArgument("check_b1: horizon must be >= 2");
  const Index first = seq.first_index();
  check_range(seq, first, horizon);
  PosMat2 prev = seq.at(first);
  B1Diagnostic out{std::min({prev.a(), prev.b(), prev.d()}), 0.0, 0.0};
  const Index half = horizon / 2;
  for (Index k = first + 1; k <= horizon; ++k) {
    const PosMat2 cur = seq.at(k);
    out.sigma_min = std::min({out.sigma_min, cur.a(), cur.b(), cur.d()});
    const double inc = std::fabs(cur.a() - prev.a()) + std::fabs(cur.b() - prev.b()) +
                       std::fabs(cur.d() - prev.d());
    out.variation_sum += inc;
    if (k > half) out.late_variation += inc;
    prev = cur;
  }
  return out;
}

}  // namespace lampwalk
