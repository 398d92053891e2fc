#include "lampwalk/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "csv_util.hpp"

namespace lampwalk {

using nlohmann::json;

std::string family_name(Family f) { return f == Family::TwoOne ? "21" : "12"; }

Family parse_family(const std::string& s) {
  if (s == "21") return Family::TwoOne;
  if (s == "12") return Family::OneTwo;
  throw InvalidArgument("family must be 21 or 12, got '" + s + "'");
}

json to_json(const PerturbParams& p) {
  return {{"K", p.K}, {"B", p.B}, {"sign", p.sign > 0 ? "+" : "-"}};
}

json to_json(const WalkModel& m) {
  json j{{"family", family_name(m.family())}};
  if (const PerturbParams* p = m.lamperti_params()) {
    j["kind"] = "lamperti";
    j["params"] = to_json(*p);
  } else if (auto q = m.constant_q_value()) {
    j["kind"] = "constant";
    j["q"] = *q;
  } else {
    j["kind"] = "table";
    j["q"] = *m.q_values();
  }
  return j;
}

json to_json(const SeriesDiagnostic& d) {
  json cps = json::array();
  for (const auto& c : d.checkpoints) cps.push_back({{"n", c.n}, {"value", c.value}});
  return {{"verdict", to_string(d.verdict)}, {"limit_est", d.limit_est},
          {"spread", d.spread},         {"window", d.window},
          {"checkpoints", cps}};
}

namespace {

// JSON has no infinities; log(0) becomes null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  if (std::isnan(x)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void preamble(std::ostream& os, const json& meta) {
  if (meta.is_null()) return;
  os << "# format_version=" << kFormatVersion << "\n";
  os << "# config=" << meta.dump() << "\n";
}

}  // namespace

json to_json(const MaxDistribution& d, const WalkModel& m, const json& meta) {
  json entries = json::array();
  for (std::size_t i = 0; i < d.prob.size(); ++i)
    entries.push_back({{"n", static_cast<Index>(i) + 2},
                       {"prob", d.prob[i]},
                       {"log_prob", number_or_null(d.log_prob[i])},
                       {"rel_error", d.rel_error[i]}});
  json warnings = json::array();
  if (!d.cancellation_flagged.empty())
    warnings.push_back({{"type", "subtractive-cancellation"},
                        {"n", d.cancellation_flagged},
                        {"resolution", "state-reduction"}});
  return {{"format_version", kFormatVersion},
          {"kind", "max_distribution"},
          {"walk", family_name(d.family)},
          {"model", to_json(m)},
          {"n_max", d.n_max()},
          {"mass", d.mass},
          {"max_digits_lost", d.max_digits_lost},
          {"warnings", warnings},
          {"meta", meta},
          {"entries", entries}};
}

json to_json(const EmpiricalDist& d, const WalkModel& m, const json& meta) {
  json entries = json::array();
  for (const auto& [n, c] : d.counts)
    entries.push_back({{"n", n},
                       {"count", c},
                       {"prob", static_cast<double>(c) / static_cast<double>(d.total)}});
  return {{"format_version", kFormatVersion},
          {"kind", "empirical_distribution"},
          {"walk", family_name(d.family)},
          {"model", to_json(m)},
          {"total", d.total},
          {"censored_step", d.censored_step},
          {"censored_height", d.censored_height},
          {"rng", "mt19937_64, per-excursion seed splitmix64(seed ^ splitmix64(i))"},
          {"meta", meta},
          {"entries", entries}};
}

void write_csv(std::ostream& os, const MaxDistribution& d, const json& meta,
               const std::vector<double>& oracle) {
  preamble(os, meta);
  os << "n,prob,log_prob" << (oracle.empty() ? "" : ",oracle_prob") << "\n";
  for (std::size_t i = 0; i < d.prob.size(); ++i) {
    os << i + 2 << "," << fmt(d.prob[i]) << "," << fmt(d.log_prob[i]);
    if (!oracle.empty()) os << "," << fmt(oracle.at(i));
    os << "\n";
  }
}

void write_csv(std::ostream& os, const EmpiricalDist& d, const json& meta) {
  preamble(os, meta);
  os << "n,prob,log_prob,count,censored_step,censored_height,total\n";
  for (const auto& [n, c] : d.counts) {
    const double p = static_cast<double>(c) / static_cast<double>(d.total);
    os << n << "," << fmt(p) << "," << fmt(std::log(p)) << "," << c << "," << d.censored_step
       << "," << d.censored_height << "," << d.total << "\n";
  }
}

void write_plot_csv(std::ostream& os, const std::vector<Checkpoint>& values,
                    const std::vector<double>& predicted, const json& meta) {
  preamble(os, meta);
  os << "n,value,predicted,ratio\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double pred = i < predicted.size() ? predicted[i] : std::nan("");
    os << values[i].n << "," << fmt(values[i].value) << "," << fmt(pred) << ","
       << fmt(values[i].value / pred) << "\n";
  }
}

Table read_table_csv(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = detail::split_csv_line(line);
    break;
  }
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) col = i;
  if (header.empty() || header[0] != "n" || col == header.size())
    throw InvalidArgument(path.string() + ": need columns n and " + column);
  Table t;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != header.size()) throw InvalidArgument(path.string() + ": ragged row");
    t[std::stoll(f[0])] = std::stod(f[col]);
  }
  return t;
}

}  // namespace lampwalk
