#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lampwalk/lampwalk.hpp"

namespace py = pybind11;
using namespace lampwalk;

namespace {

Family family_of(const std::string& s) { return parse_family(s); }

WalkModel make_model(const std::string& family, int K, double B, int sign) {
  return WalkModel::lamperti(family_of(family), PerturbParams{K, B, sign});
}

py::dict to_dict(const MaxDistribution& d) {
  py::dict out;
  out["walk"] = family_name(d.family);
  out["n"] = [&] {
    std::vector<Index> ns;
    for (Index n = 2; n <= d.n_max(); ++n) ns.push_back(n);
    return ns;
  }();
  out["prob"] = d.prob;
  out["log_prob"] = d.log_prob;
  out["mass"] = d.mass;
  out["cancellation_flagged"] = d.cancellation_flagged;
  out["max_digits_lost"] = d.max_digits_lost;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact and simulated excursion maxima of (2,1) and (1,2) walks";

  py::register_exception<Error>(m, "LampwalkError", PyExc_ValueError);

  py::class_<WalkModel>(m, "WalkModel")
      .def_static("lamperti", &make_model, py::arg("family"), py::arg("K") = 1, py::arg("B") = 0.0,
                  py::arg("sign") = 1)
      .def_static(
          "constant_q", [](const std::string& f, double q) { return WalkModel::constant_q(family_of(f), q); },
          py::arg("family"), py::arg("q"))
      .def_static(
          "q_table",
          [](const std::string& f, std::vector<double> q) { return WalkModel::q_table(family_of(f), std::move(q)); },
          py::arg("family"), py::arg("q"))
      .def_property_readonly("family", [](const WalkModel& w) { return family_name(w.family()); })
      .def("p", &WalkModel::p, py::arg("k"))
      .def("q", &WalkModel::q, py::arg("k"))
      .def("theta", &WalkModel::theta, py::arg("k"));

  m.def(
      "max_distribution", [](const WalkModel& w, Index n_max) { return to_dict(max_distribution(w, n_max)); },
      py::arg("model"), py::arg("n_max"), "Exact P(M = n, D < inf) for n = 2..n_max.");
  m.def("max_dist_linear_solve",
        [](const WalkModel& w, Index n_max) { return max_dist_linear_solve(w, w.family(), n_max); },
        py::arg("model"), py::arg("n_max"));
  m.def("escape_prob_21", &escape_prob_21, py::arg("model"), py::arg("m"), py::arg("k"), py::arg("n"));
  m.def(
      "hitting_ratio", [](const WalkModel& w, Index n) { return hitting_ratio(w, n).value; }, py::arg("model"),
      py::arg("n"));
  m.def(
      "xi", [](const WalkModel& w, Index n, double tol) { return xi(w, n, tol).value; }, py::arg("model"),
      py::arg("n"), py::arg("tol") = 1e-12);
  m.def(
      "classify", [](const WalkModel& w) { return to_string(classify(w)); }, py::arg("model"));
  m.def(
      "simulate",
      [](const WalkModel& w, std::uint64_t excursions, std::uint64_t seed, unsigned workers, Index height_cap,
         std::uint64_t step_cap) {
        SimConfig cfg;
        cfg.excursions = excursions;
        cfg.seed = seed;
        cfg.workers = workers;
        cfg.height_cap = height_cap;
        cfg.step_cap = step_cap;
        EmpiricalDist d;
        {
          py::gil_scoped_release release;
          d = empirical_max_dist(w, cfg);
        }
        py::dict out;
        out["counts"] = d.counts;
        out["censored_step"] = d.censored_step;
        out["censored_height"] = d.censored_height;
        out["total"] = d.total;
        return out;
      },
      py::arg("model"), py::arg("excursions"), py::arg("seed") = 0, py::arg("workers") = 1,
      py::arg("height_cap") = 1'000'000, py::arg("step_cap") = 100'000'000);
  m.def(
      "normalized_entry",
      [](double a, double b, double d, Index k, int i, int j) {
        return normalized_entry(CoeffSequence::constant(PosMat2(a, b, d)), 1, k, i, j);
      },
      py::arg("a"), py::arg("b"), py::arg("d"), py::arg("k"), py::arg("i") = 1, py::arg("j") = 1,
      "Normalized entry of the k-fold power of [[a, b], [d, 0]].");
  m.def(
      "spectral_radius", [](double a, double b, double d) { return spectral_radius(PosMat2(a, b, d)); },
      py::arg("a"), py::arg("b"), py::arg("d"));
  m.def(
      "r", [](int K, double B, int sign, Index i) { return Perturbation({K, B, sign}).r(i); }, py::arg("K"),
      py::arg("B"), py::arg("sign"), py::arg("i"));
  m.def(
      "r_increment_rate", [](int K, double B, Index n) { return r_increment_rate({K, B, 1}, n); }, py::arg("K"),
      py::arg("B"), py::arg("n"));
  m.def(
      "local_exponent",
      [](const std::map<Index, double>& table, Index lo, Index hi) {
        const auto s = local_exponent(table, lo, hi);
        return py::make_tuple(s.slope, s.stderr_);
      },
      py::arg("table"), py::arg("lo"), py::arg("hi"), "(slope, stderr) of log value against log n.");
}
