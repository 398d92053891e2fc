#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "lampwalk/lampwalk.hpp"

namespace lampwalk::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_optional(const json& j, std::optional<T>& v) {
  if (j.is_null())
    v.reset();
  else
    v = j.get<T>();
}

}  // namespace

json to_json(const ExperimentConfig& c) {
  json j{{"command", c.command},
         {"check", c.check},
         {"K", c.K},
         {"B", c.B},
         {"sign", c.sign > 0 ? "+" : "-"},
         {"n_max", c.n_max},
         {"n", c.n},
         {"m", c.m},
         {"k", c.k},
         {"i", c.i},
         {"j", c.j},
         {"k_max", c.k_max},
         {"oracle", c.oracle},
         {"excursions", c.excursions},
         {"seed", c.seed},
         {"step_cap", c.step_cap},
         {"height_cap", c.height_cap},
         {"workers", c.workers},
         {"sequences", c.sequences},
         {"column", c.column},
         {"lo", c.lo},
         {"hi", c.hi},
         {"law", c.law},
         {"format", c.format}};
  put_optional(j, "family", c.family);
  put_optional(j, "q", c.q);
  put_optional(j, "table", c.table);
  put_optional(j, "tol", c.tol);
  put_optional(j, "input", c.input);
  put_optional(j, "expect", c.expect);
  put_optional(j, "out", c.out);
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  ExperimentConfig c;
  const std::map<std::string, std::function<void(const json&)>> fields{
      {"command", [&](const json& v) { c.command = v.get<std::string>(); }},
      {"check", [&](const json& v) { c.check = v.get<std::string>(); }},
      {"family", [&](const json& v) { get_optional(v, c.family); }},
      {"K", [&](const json& v) { c.K = v.get<int>(); }},
      {"B", [&](const json& v) { c.B = v.get<double>(); }},
      {"sign",
       [&](const json& v) {
         if (v.is_string())
           c.sign = v.get<std::string>() == "-" ? -1 : 1;
         else
           c.sign = v.get<int>() < 0 ? -1 : 1;
       }},
      {"q", [&](const json& v) { get_optional(v, c.q); }},
      {"table", [&](const json& v) { get_optional(v, c.table); }},
      {"n_max", [&](const json& v) { c.n_max = v.get<Index>(); }},
      {"n", [&](const json& v) { c.n = v.get<Index>(); }},
      {"m", [&](const json& v) { c.m = v.get<Index>(); }},
      {"k", [&](const json& v) { c.k = v.get<Index>(); }},
      {"i", [&](const json& v) { c.i = v.get<int>(); }},
      {"j", [&](const json& v) { c.j = v.get<int>(); }},
      {"k_max", [&](const json& v) { c.k_max = v.get<Index>(); }},
      {"tol", [&](const json& v) { get_optional(v, c.tol); }},
      {"oracle", [&](const json& v) { c.oracle = v.get<bool>(); }},
      {"excursions", [&](const json& v) { c.excursions = v.get<std::uint64_t>(); }},
      {"seed", [&](const json& v) { c.seed = v.get<std::uint64_t>(); }},
      {"step_cap", [&](const json& v) { c.step_cap = v.get<std::uint64_t>(); }},
      {"height_cap", [&](const json& v) { c.height_cap = v.get<Index>(); }},
      {"workers", [&](const json& v) { c.workers = v.get<unsigned>(); }},
      {"sequences", [&](const json& v) { c.sequences = v.get<std::uint64_t>(); }},
      {"input", [&](const json& v) { get_optional(v, c.input); }},
      {"column", [&](const json& v) { c.column = v.get<std::string>(); }},
      {"lo", [&](const json& v) { c.lo = v.get<Index>(); }},
      {"hi", [&](const json& v) { c.hi = v.get<Index>(); }},
      {"expect", [&](const json& v) { get_optional(v, c.expect); }},
      {"law", [&](const json& v) { c.law = v.get<bool>(); }},
      {"out", [&](const json& v) { get_optional(v, c.out); }},
      {"format", [&](const json& v) { c.format = v.get<std::string>(); }},
  };
  for (const auto& [key, value] : j.items()) {
    auto it = fields.find(key);
    if (it == fields.end()) throw InvalidArgument("unknown config key '" + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw InvalidArgument("config key '" + key + "': " + e.what());
    }
  }
  return c;
}

namespace {

// Flags land in `flags`; only the ones actually given are copied over the
// defaults (or the --config document) afterwards.
struct Binder {
  ExperimentConfig flags;
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> given;

  template <class T, class Field>
  CLI::Option* option(CLI::App* app, const std::string& name, Field ExperimentConfig::*field,
                      const std::string& help) {
    auto* o = app->add_option_function<T>(
        name, [this, field](const T& v) { flags.*field = v; }, help);
    given.emplace_back(o, [this, field](ExperimentConfig& dst) { dst.*field = flags.*field; });
    return o;
  }

  CLI::Option* flag(CLI::App* app, const std::string& name, bool ExperimentConfig::*field,
                    const std::string& help) {
    auto* o = app->add_flag(name, flags.*field, help);
    given.emplace_back(o, [this, field](ExperimentConfig& dst) { dst.*field = flags.*field; });
    return o;
  }

  void apply(ExperimentConfig& dst) const {
    for (const auto& [opt, copy] : given)
      if (opt->count() > 0) copy(dst);
  }
};

void add_model_options(CLI::App* app, Binder& b) {
  b.option<std::string>(app, "--family", &ExperimentConfig::family, "walk family: 21 or 12")
      ->check(CLI::IsMember({"21", "12"}));
  b.option<int>(app, "--K", &ExperimentConfig::K, "iterated-log depth K >= 1");
  b.option<double>(app, "--B", &ExperimentConfig::B, "perturbation exponent B");
  auto* s = app->add_option_function<std::string>(
      "--sign",
      [&b](const std::string& v) {
        if (v == "+" || v == "1" || v == "+1")
          b.flags.sign = 1;
        else if (v == "-" || v == "-1")
          b.flags.sign = -1;
        else
          throw CLI::ValidationError("--sign", "must be + or -");
      },
      "perturbation sign, + or -");
  b.given.emplace_back(s, [&b](ExperimentConfig& dst) { dst.sign = b.flags.sign; });
  b.option<double>(app, "--q", &ExperimentConfig::q, "constant 1-step probability q");
  b.option<std::string>(app, "--table", &ExperimentConfig::table,
                        "coefficient CSV (k,a,b,d) with rows (theta, theta, 1)");
}

void add_output_options(CLI::App* app, Binder& b) {
  b.option<std::string>(app, "--out", &ExperimentConfig::out, "output directory (default stdout)");
  b.option<std::string>(app, "--format", &ExperimentConfig::format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_sim_options(CLI::App* app, Binder& b) {
  b.option<std::uint64_t>(app, "--excursions", &ExperimentConfig::excursions, "number of excursions");
  b.option<std::uint64_t>(app, "--seed", &ExperimentConfig::seed, "RNG seed");
  b.option<unsigned>(app, "--workers", &ExperimentConfig::workers, "worker threads");
  b.option<std::uint64_t>(app, "--step-cap", &ExperimentConfig::step_cap, "steps before censoring");
  b.option<Index>(app, "--height-cap", &ExperimentConfig::height_cap, "height that censors");
}

WalkModel resolve_model(const ExperimentConfig& c, std::optional<Family> fallback = std::nullopt) {
  Family f;
  if (c.family)
    f = parse_family(*c.family);
  else if (fallback)
    f = *fallback;
  else
    throw UsageError("--family is required");
  if (c.table) return WalkModel::from_coefficients(f, CoeffSequence::from_csv(*c.table));
  if (c.q) return WalkModel::constant_q(f, *c.q);
  return WalkModel::lamperti(f, PerturbParams{c.K, c.B, c.sign});
}

PerturbParams params_of(const ExperimentConfig& c) {
  PerturbParams p{c.K, c.B, c.sign};
  validate(p);
  return p;
}

// Writes to <out>/<name>.<format> or, without --out, to the stream.
void emit(const ExperimentConfig& c, const std::string& name, std::ostream& out,
          const std::function<void(std::ostream&)>& write) {
  if (!c.out) {
    write(out);
    return;
  }
  fs::create_directories(*c.out);
  const fs::path path = fs::path(*c.out) / (name + "." + c.format);
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  write(f);
  out << path.string() << "\n";
}

void emit_json(const ExperimentConfig& c, const std::string& name, std::ostream& out, const json& doc) {
  emit(c, name, out, [&](std::ostream& os) { os << doc.dump(2) << "\n"; });
}

int cmd_dist(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const WalkModel model = resolve_model(c);
  const MaxDistribution d = max_distribution(model, c.n_max);
  std::vector<double> oracle;
  int code = 0;
  if (c.oracle) {
    oracle = max_dist_linear_solve(model, model.family(), c.n_max);
    const double tol = c.tol.value_or(1e-12);
    double worst = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i) worst = std::max(worst, std::fabs(oracle[i] - d.prob[i]));
    if (worst > tol) {
      err << "oracle mismatch: worst |diff| " << worst << " > " << tol << "\n";
      code = 1;
    }
  }
  if (d.mass > 1.0 + 1e-10) {
    err << "mass exceeds 1: " << d.mass << "\n";
    code = 1;
  }
  const json meta = to_json(c);
  const std::string name = "dist_" + family_name(model.family());
  if (c.format == "json") {
    json doc = to_json(d, model, meta);
    if (!oracle.empty())
      for (std::size_t i = 0; i < oracle.size(); ++i) doc["entries"][i]["oracle_prob"] = oracle[i];
    emit_json(c, name, out, doc);
  } else {
    emit(c, name, out, [&](std::ostream& os) { write_csv(os, d, meta, oracle); });
  }
  return code;
}

int cmd_simulate(const ExperimentConfig& c, std::ostream& out) {
  const WalkModel model = resolve_model(c);
  SimConfig sim;
  sim.excursions = c.excursions;
  sim.seed = c.seed;
  sim.step_cap = c.step_cap;
  sim.height_cap = c.height_cap;
  sim.workers = c.workers;
  if (sim.excursions < 1 || sim.step_cap < 1 || sim.height_cap < 2 || sim.workers < 1)
    throw UsageError("excursions, caps and workers must be positive");
  const EmpiricalDist d = empirical_max_dist(model, sim);
  const json meta = to_json(c);
  const std::string name = "simulate_" + family_name(model.family());
  if (c.format == "json")
    emit_json(c, name, out, to_json(d, model, meta));
  else
    emit(c, name, out, [&](std::ostream& os) { write_csv(os, d, meta); });
  return 0;
}

int cmd_classify(const ExperimentConfig& c, std::ostream& out) {
  const WalkModel model = resolve_model(c);
  const std::string cls = to_string(classify(model));
  if (!c.out) {
    out << cls << "\n";
    return 0;
  }
  ExperimentConfig jc = c;
  jc.format = "json";
  emit_json(jc, "classify", out,
            {{"format_version", kFormatVersion},
             {"kind", "classification"},
             {"model", to_json(model)},
             {"class", cls},
             {"meta", to_json(c)}});
  return 0;
}

struct VerifyOutcome {
  bool pass = false;
  json details = json::object();
  SeriesDiagnostic diagnostic;
  std::vector<double> predicted;
};

VerifyOutcome verify_theorem1(const ExperimentConfig& c) {
  const WalkModel model = resolve_model(c, Family::TwoOne);
  if (c.k_max < 8) throw UsageError("--k-max must be >= 8");
  const CoeffSequence seq = model.n_sequence();
  const Index m = seq.first_index();
  const Index half = c.k_max / 2;
  const auto ks = linear_checkpoints(half, c.k_max, 11);
  VerifyOutcome o;
  const auto vals = normalized_entry_series(seq, m, ks, 1, 1);
  std::vector<Checkpoint> cps;
  for (std::size_t i = 0; i < ks.size(); ++i) cps.push_back({ks[i], vals[i]});
  const double tol = c.tol.value_or(1e-4);
  o.diagnostic = convergence_check(cps, tol, half);
  o.pass = o.diagnostic.verdict == Verdict::Converged;
  o.details = {{"m", m}, {"tol", tol}};
  return o;
}

VerifyOutcome verify_rho_asymptote(const ExperimentConfig& c) {
  const PerturbParams p = params_of(c);
  const Family f = c.family ? parse_family(*c.family) : Family::TwoOne;
  const WalkModel model = WalkModel::lamperti(f, p);
  const auto ns = geometric_checkpoints(std::min<Index>(1024, c.n), c.n);
  if (ns.size() < 2) throw UsageError("--n too small for rho-asymptote");
  Table t;
  double log_prod = 0;
  Index k = 1;
  for (Index n : ns) {
    while (k < n) {
      ++k;
      log_prod += std::log(spectral_radius(model.n_matrix(k)));
    }
    t[n] = std::exp(log_prod);
  }
  // rho(N_k) = 1 - 3 u r_k with u = +sign for (2,1) and -sign for (1,2)
  const int predicted_sign = f == Family::TwoOne ? -p.sign : p.sign;
  const double tol = c.tol.value_or(0.01);
  VerifyOutcome o;
  o.diagnostic = asymptote_ratio(t, p, predicted_sign, ns, tol);
  for (Index n : ns) o.predicted.push_back(asymptote(p, static_cast<double>(n), predicted_sign));
  o.pass = o.diagnostic.verdict == Verdict::Converged;
  o.details = {{"predicted_sign", predicted_sign}, {"tol", tol}};
  return o;
}

VerifyOutcome verify_hitting_ratio(const ExperimentConfig& c) {
  const WalkModel model = resolve_model(c, Family::OneTwo);
  if (model.family() != Family::OneTwo) throw UsageError("hitting-ratio needs family 12");
  const HittingRatio h = hitting_ratio(model, c.n);
  const double tol = c.tol.value_or(0.02);
  VerifyOutcome o;
  o.pass = !h.zero_denominator && std::fabs(h.value / 2 - 1) <= tol;
  o.diagnostic.checkpoints = {{c.n, h.value}};
  o.diagnostic.limit_est = h.value;
  o.diagnostic.verdict = o.pass ? Verdict::Converged : Verdict::NotConverged;
  o.details = {{"ratio", h.value},
               {"target", 2.0},
               {"rel_tol", tol},
               {"digits_lost", h.digits_lost},
               {"state_reduction", h.cancellation}};
  return o;
}

VerifyOutcome verify_pce(const ExperimentConfig& c) {
  const WalkModel model = resolve_model(c, Family::OneTwo);
  const double tol = c.tol.value_or(0.05);
  VerifyOutcome o;
  o.diagnostic = pce_check(model, geometric_checkpoints(std::max<Index>(2, c.n / 10), c.n), tol);
  o.pass = o.diagnostic.verdict == Verdict::Converged;
  o.details = {{"tol", tol}};
  return o;
}

VerifyOutcome verify_sandwich(const ExperimentConfig& c) {
  std::mt19937_64 rng(c.seed);
  SandwichReport total;
  const double slack = c.tol.value_or(1e-12);
  for (std::uint64_t s = 0; s < c.sequences; ++s) {
    const auto r = sandwich_check(random_b1_sequence(rng, c.k_max), c.k_max, slack);
    total.pairs += r.pairs;
    total.violations += r.violations;
    total.worst_excess = std::max(total.worst_excess, r.worst_excess);
  }
  VerifyOutcome o;
  o.pass = total.violations == 0;
  o.diagnostic.verdict = o.pass ? Verdict::Converged : Verdict::NotConverged;
  o.details = {{"sequences", c.sequences},
               {"pairs", total.pairs},
               {"violations", total.violations},
               {"worst_excess", total.worst_excess},
               {"rel_slack", slack}};
  return o;
}

VerifyOutcome verify_dfr(const ExperimentConfig& c) {
  const PerturbParams p = params_of(c);
  const double v = r_increment_rate(p, c.n);
  const double tol = c.tol.value_or(0.01);
  VerifyOutcome o;
  o.pass = std::fabs(v - 1) <= tol;
  o.diagnostic.checkpoints = {{c.n, v}};
  o.diagnostic.limit_est = v;
  o.diagnostic.verdict = o.pass ? Verdict::Converged : Verdict::NotConverged;
  o.details = {{"value", v}, {"target", 1.0}, {"tol", tol}};
  return o;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out) {
  static const std::map<std::string, std::function<VerifyOutcome(const ExperimentConfig&)>> checks{
      {"theorem1", verify_theorem1}, {"rho-asymptote", verify_rho_asymptote},
      {"hitting-ratio", verify_hitting_ratio}, {"pce", verify_pce},
      {"sandwich", verify_sandwich}, {"dfr", verify_dfr}};
  auto it = checks.find(c.check);
  if (it == checks.end()) throw UsageError("unknown check '" + c.check + "'");
  const VerifyOutcome o = it->second(c);
  const std::string name = "verify_" + c.check;
  if (c.format == "csv" && c.out) {
    emit(c, name, out, [&](std::ostream& os) {
      write_plot_csv(os, o.diagnostic.checkpoints, o.predicted, to_json(c));
    });
  } else {
    emit_json(c, name, out,
              {{"format_version", kFormatVersion},
               {"kind", "verify"},
               {"check", c.check},
               {"pass", o.pass},
               {"details", o.details},
               {"diagnostic", to_json(o.diagnostic)},
               {"meta", to_json(c)}});
  }
  if (c.out) out << c.check << ": " << (o.pass ? "pass" : "fail") << "\n";
  return o.pass ? 0 : 1;
}

int cmd_cf_tail(const ExperimentConfig& c, std::ostream& out) {
  const WalkModel model = resolve_model(c, Family::OneTwo);
  if (c.n < 2) throw UsageError("--n must be >= 2");
  const double tol = c.tol.value_or(1e-12);
  const TailEstimate t = xi(model, c.n, tol);
  emit_json(c, "cf_tail", out,
            {{"format_version", kFormatVersion},
             {"kind", "xi"},
             {"model", to_json(model)},
             {"n", c.n},
             {"xi", t.value},
             {"depth_used", t.depth_used},
             {"est_error", t.est_error},
             {"meta", to_json(c)}});
  return 0;
}

int cmd_product(const ExperimentConfig& c, std::ostream& out) {
  CoeffSequence seq = c.table ? CoeffSequence::from_csv(*c.table) : resolve_model(c, Family::TwoOne).n_sequence();
  const double x = normalized_entry(seq, c.m, c.k, c.i, c.j);
  const double ratio = product_spectral_ratio(seq, c.m, c.k);
  const EigenBounds b = eigen_bounds(seq, c.m, c.k);
  emit_json(c, "product", out,
            {{"format_version", kFormatVersion},
             {"kind", "normalized_entry"},
             {"m", c.m},
             {"k", c.k},
             {"i", c.i},
             {"j", c.j},
             {"value", x},
             {"spectral_ratio", ratio},
             {"zeta", b.zeta},
             {"gamma", b.gamma},
             {"meta", to_json(c)}});
  return 0;
}

int cmd_fit(const ExperimentConfig& c, std::ostream& out) {
  if (!c.input) throw UsageError("--input is required");
  const Table t = read_table_csv(*c.input, c.column);
  const SlopeEstimate s = local_exponent(t, c.lo, c.hi);
  bool pass = true;
  json doc{{"format_version", kFormatVersion},
           {"kind", "fit"},
           {"input", *c.input},
           {"lo", c.lo},
           {"hi", c.hi},
           {"slope", s.slope},
           {"stderr", s.stderr_},
           {"points", s.points}};
  if (c.expect) {
    const double tol = c.tol.value_or(0.1);
    pass = std::fabs(s.slope - *c.expect) <= tol;
    doc["expect"] = *c.expect;
    doc["tol"] = tol;
  }
  if (c.law) {
    const PerturbParams p = params_of(c);
    const auto d = asymptote_ratio(t, decay_law(p), geometric_checkpoints(c.lo, c.hi), c.tol.value_or(0.05));
    doc["asymptote_ratio"] = to_json(d);
    pass = pass && d.verdict == Verdict::Converged;
  }
  doc["pass"] = pass;
  doc["meta"] = to_json(c);
  emit_json(c, "fit", out, doc);
  return pass ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Excursion maxima of (2,1) and (1,2) random walks in Lamperti environments"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config supplying defaults; flags override")
      ->check(CLI::ExistingFile);
  Binder b;

  auto* dist = app.add_subcommand("dist", "exact distribution of the excursion maximum");
  add_model_options(dist, b);
  add_output_options(dist, b);
  b.option<Index>(dist, "--n-max", &ExperimentConfig::n_max, "largest n in the table");
  b.flag(dist, "--oracle", &ExperimentConfig::oracle, "add a dense linear-solve column and compare");
  b.option<double>(dist, "--tol", &ExperimentConfig::tol, "oracle tolerance (default 1e-12)");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo excursion maxima");
  add_model_options(sim, b);
  add_output_options(sim, b);
  add_sim_options(sim, b);

  auto* cls = app.add_subcommand("classify", "recurrence class of the walk");
  add_model_options(cls, b);
  b.option<std::string>(cls, "--out", &ExperimentConfig::out, "output directory (default stdout)");

  auto* ver = app.add_subcommand("verify", "run a named diagnostic and report pass/fail");
  b.option<std::string>(ver, "check", &ExperimentConfig::check,
                        "theorem1 | rho-asymptote | hitting-ratio | pce | sandwich | dfr")
      ->required()
      ->check(CLI::IsMember({"theorem1", "rho-asymptote", "hitting-ratio", "pce", "sandwich", "dfr"}));
  add_model_options(ver, b);
  add_output_options(ver, b);
  b.option<Index>(ver, "--n", &ExperimentConfig::n, "index for pointwise checks");
  b.option<Index>(ver, "--k-max", &ExperimentConfig::k_max, "horizon for product checks");
  b.option<double>(ver, "--tol", &ExperimentConfig::tol, "tolerance (check-specific default)");
  b.option<std::uint64_t>(ver, "--seed", &ExperimentConfig::seed, "RNG seed (sandwich)");
  b.option<std::uint64_t>(ver, "--sequences", &ExperimentConfig::sequences, "random sequences (sandwich)");

  auto* cf = app.add_subcommand("cf-tail", "xi_n as an infinite continued-fraction tail");
  add_model_options(cf, b);
  b.option<std::string>(cf, "--out", &ExperimentConfig::out, "output directory (default stdout)");
  b.option<Index>(cf, "--n", &ExperimentConfig::n, "index n >= 2");
  b.option<double>(cf, "--tol", &ExperimentConfig::tol, "truncation tolerance (default 1e-12)");

  auto* prod = app.add_subcommand("product", "normalized product entry and eigen bounds");
  add_model_options(prod, b);
  b.option<std::string>(prod, "--out", &ExperimentConfig::out, "output directory (default stdout)");
  b.option<Index>(prod, "--m", &ExperimentConfig::m, "first factor index");
  b.option<Index>(prod, "--k", &ExperimentConfig::k, "last factor index");
  b.option<int>(prod, "--i", &ExperimentConfig::i, "row, 1 or 2");
  b.option<int>(prod, "--j", &ExperimentConfig::j, "column, 1 or 2");

  auto* fit = app.add_subcommand("fit", "log-log slope (and optional decay-law shape) of a saved table");
  b.option<std::string>(fit, "--input", &ExperimentConfig::input, "table CSV with an n column")
      ->check(CLI::ExistingFile);
  b.option<std::string>(fit, "--column", &ExperimentConfig::column, "value column (default prob)");
  b.option<Index>(fit, "--lo", &ExperimentConfig::lo, "window start");
  b.option<Index>(fit, "--hi", &ExperimentConfig::hi, "window end");
  b.option<double>(fit, "--expect", &ExperimentConfig::expect, "expected slope");
  b.option<double>(fit, "--tol", &ExperimentConfig::tol, "slope or shape tolerance");
  b.flag(fit, "--law", &ExperimentConfig::law, "also test the decay law for --K/--B/--sign");
  b.option<int>(fit, "--K", &ExperimentConfig::K, "K for --law");
  b.option<double>(fit, "--B", &ExperimentConfig::B, "B for --law");
  fit->add_option_function<std::string>(
      "--sign", [&b](const std::string& v) { b.flags.sign = v == "-" || v == "-1" ? -1 : 1; },
      "sign for --law");
  b.given.emplace_back(fit->get_option("--sign"), [&b](ExperimentConfig& dst) { dst.sign = b.flags.sign; });
  b.option<std::string>(fit, "--out", &ExperimentConfig::out, "output directory (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      cfg = config_from_json(json::parse(f));
    }
    b.apply(cfg);
    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "dist") return cmd_dist(cfg, out, err);
    if (cfg.command == "simulate") return cmd_simulate(cfg, out);
    if (cfg.command == "classify") return cmd_classify(cfg, out);
    if (cfg.command == "verify") return cmd_verify(cfg, out);
    if (cfg.command == "cf-tail") return cmd_cf_tail(cfg, out);
    if (cfg.command == "product") return cmd_product(cfg, out);
    return cmd_fit(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lampwalk::cli
