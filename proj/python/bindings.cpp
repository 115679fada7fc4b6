#include "leggett/cli/runner.hpp"
#include "leggett/coherent_algebra.hpp"
#include "leggett/errors.hpp"
#include "leggett/correlation.hpp"
#include "leggett/fock_oracle.hpp"
#include "leggett/inequality.hpp"
#include "leggett/studies.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace leggett;

namespace {

using Angles = std::pair<double, double>;

Direction dir(const Angles& a) { return {a.first, a.second}; }

SearchConfig search(int starts, std::uint64_t seed)
{
  SearchConfig c;
  c.starts = starts;
  c.seed = seed;
  c.threads = 1;
  return c;
}

py::dict bound_dict(const BoundResult& b)
{
  py::dict d;
  d["mode"] = std::string(to_string(b.mode));
  d["f_min"] = b.f_min;
  d["bound"] = b.bound;
  d["f_direct"] = b.f_direct;
  d["f_relaxed"] = b.f_relaxed;
  d["argmin_u"] = Angles{b.argmin_u.theta, b.argmin_u.phi};
  d["argmin_v"] = Angles{b.argmin_v.theta, b.argmin_v.phi};
  d["converged"] = b.converged;
  d["starts_used"] = b.starts_used;
  return d;
}

LeggettTask make_task(const std::string& state, const std::string& family, const std::string& layout,
                      const std::string& bound, bool optimize, const std::string& rotation, int starts,
                      std::uint64_t seed)
{
  LeggettTask t;
  t.state = parse_state_kind(state);
  t.family = family.empty() ? (t.state == StateKind::pes ? MeasurementFamily::qubit_projective
                                                         : MeasurementFamily::pseudo_spin)
                            : parse_family(family);
  t.layout = parse_layout_name(layout);
  t.bound_mode = parse_bound_mode(bound);
  t.optimize = optimize;
  t.rotation_mode = parse_rotation_mode(rotation);
  t.bound_search = search(starts, seed);
  t.rigid_search = search(2 * starts, seed);
  t.chsh_search = search(std::max(1, starts / 2), seed);
  t.threads = 1;
  return t;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Leggett and CHSH inequality tests for entangled coherent states.";

  py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
  py::register_exception<ConditioningError>(m, "ConditioningError", PyExc_RuntimeError);

  m.def("to_cartesian", [](double theta, double phi) {
    const Vec3 v = to_cartesian({theta, phi});
    return std::tuple{v[0], v[1], v[2]};
  });
  m.def("kappa_K", &kappa_K, py::arg("alpha"));
  m.def("pseudospin_bloch", [](double alpha) {
    const Vec3 v = pseudospin_bloch(alpha);
    return std::tuple{v[0], v[1], v[2]};
  });
  m.def("analytic_fmin", [](const std::string& layout, double phi) { return analytic_fmin(parse_layout_name(layout), phi); },
        py::arg("layout"), py::arg("phi"));

  py::class_<CorrelationModel>(m, "CorrelationModel")
      .def_static("pes", &CorrelationModel::pes)
      .def_static(
          "ecs",
          [](double alpha, int sign, const std::string& family, bool renormalize, bool mirror_b) {
            ModelOptions o;
            o.renormalize = renormalize;
            o.mirror_b = mirror_b;
            return CorrelationModel::ecs(alpha, sign, parse_family(family), o);
          },
          py::arg("alpha"), py::arg("sign"), py::arg("family") = "pseudospin", py::arg("renormalize") = true,
          py::arg("mirror_b") = true)
      .def("correlation", [](const CorrelationModel& c, Angles a, Angles b) { return c.correlation(dir(a), dir(b)); },
           py::arg("a"), py::arg("b"))
      .def("local_avg_a", [](const CorrelationModel& c, Angles u, Angles a) { return c.local_avg_a(dir(u), dir(a)); },
           py::arg("u"), py::arg("a"))
      .def("local_avg_b", [](const CorrelationModel& c, Angles v, Angles b) { return c.local_avg_b(dir(v), dir(b)); },
           py::arg("v"), py::arg("b"))
      .def_property_readonly("alpha", &CorrelationModel::alpha)
      .def("__repr__", &CorrelationModel::describe);

  m.def(
      "leggett_value",
      [](const CorrelationModel& model, const std::string& layout, double phi) {
        return leggett_value(model, build_layout(parse_layout_name(layout), phi));
      },
      py::arg("model"), py::arg("layout"), py::arg("phi"));
  m.def(
      "numeric_fmin",
      [](const CorrelationModel& model, const std::string& layout, double phi, int starts, std::uint64_t seed) {
        return bound_dict(numeric_fmin(model, build_layout(parse_layout_name(layout), phi), search(starts, seed)));
      },
      py::arg("model"), py::arg("layout"), py::arg("phi"), py::arg("starts") = 32, py::arg("seed") = 0);
  m.def(
      "optimize_chsh",
      [](const CorrelationModel& model, int starts, std::uint64_t seed) {
        const ChshEvaluation e = optimize_chsh(model, search(starts, seed));
        py::dict d;
        d["B"] = e.B;
        d["violated"] = e.violated;
        d["converged"] = e.converged;
        return d;
      },
      py::arg("model"), py::arg("starts") = 16, py::arg("seed") = 0);
  m.def(
      "evaluate",
      [](const std::string& state, double alpha, double phi, const std::string& family, const std::string& layout,
         const std::string& bound, bool optimize, const std::string& rotation, int starts, std::uint64_t seed) {
        const LeggettEvaluation e =
            make_task(state, family, layout, bound, optimize, rotation, starts, seed).evaluate(alpha, phi);
        py::dict d;
        d["L"] = e.L;
        d["L_reference"] = e.L_reference;
        d["margin"] = e.margin;
        d["violated"] = e.violated;
        d["bound"] = bound_dict(e.bound);
        return d;
      },
      py::arg("state"), py::arg("alpha"), py::arg("phi"), py::arg("family") = "", py::arg("layout") = "3p7",
      py::arg("bound") = "state_corrected", py::arg("optimize") = false, py::arg("rotation") = "shared",
      py::arg("starts") = 32, py::arg("seed") = 0);
  m.def(
      "threshold",
      [](const std::string& state, const std::string& layout, bool optimize, double lo, double hi, double step,
         double tolerance, const std::string& family, int starts, std::uint64_t seed) {
        ThresholdOptions o;
        o.lo = lo;
        o.hi = hi;
        o.scan_step = step;
        o.tolerance = tolerance;
        const ThresholdResult r =
            threshold_alpha(make_task(state, family, layout, "state_corrected", optimize, "shared", starts, seed), o);
        py::dict d;
        d["verdict"] = std::string(to_string(r.verdict));
        d["alpha_star"] = r.alpha_star;
        d["lo"] = r.lo;
        d["hi"] = r.hi;
        d["phi"] = r.phi;
        d["evaluations"] = r.evaluations;
        return d;
      },
      py::arg("state"), py::arg("layout") = "3p7", py::arg("optimize") = false, py::arg("lo") = 0.5,
      py::arg("hi") = 10.0, py::arg("step") = 0.25, py::arg("tolerance") = 1e-3, py::arg("family") = "",
      py::arg("starts") = 32, py::arg("seed") = 0);
  m.def(
      "oracle_correlation",
      [](double alpha, int sign, Angles a, Angles b) {
        const std::size_t d = fock::truncation_dim(alpha);
        const auto s = fock::pseudo_spin_ops(d);
        const fock::TwoModeState psi = fock::ecs_state(alpha, sign, d);
        return fock::expectation(psi, s.along(to_cartesian(dir(a))), s.along(to_cartesian(dir(b)))).real();
      },
      py::arg("alpha"), py::arg("sign"), py::arg("a"), py::arg("b"),
      "Pseudo-spin correlation of the ECS computed in the truncated number basis.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return std::tuple{code, out.str(), err.str()};
      },
      py::arg("args"), "Runs a leggett_lab command; returns (exit code, stdout, stderr).");
}
