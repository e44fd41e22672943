#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hopfflow/cbhd.hpp"
#include "hopfflow/faadibruno.hpp"
#include "hopfflow/idempotents.hpp"
#include "hopfflow/magnus.hpp"
#include "hopfflow/scheffers.hpp"
#include "hopfflow/verify.hpp"

namespace py = pybind11;
using namespace hopfflow;

namespace {

// Word letters -> coefficient as "p/q"; the package wraps these in Fraction.
std::vector<std::pair<std::vector<Letter>, std::string>> terms_of(const FreePoly& p) {
  std::vector<std::pair<std::vector<Letter>, std::string>> out;
  const auto& terms = p.terms();
  for (const auto& [w, c] : terms) out.emplace_back(w.letters(), c.get_str());
  return out;
}

std::vector<std::string> letter_names(std::size_t n) {
  static const char* xy[] = {"X", "Y"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(n <= 2 ? xy[i] : "X" + std::to_string(i + 1));
  return names;
}

SampledMatrixFn system_of(const py::object& spec) {
  if (py::isinstance<py::str>(spec)) return SampledMatrixFn::preset(spec.cast<std::string>());
  // Polynomial coefficients C_0, C_1, ... of A(t) = Σ C_i t^i.
  auto coeffs = spec.cast<std::vector<Eigen::MatrixXd>>();
  if (coeffs.empty()) throw ShapeMismatch("need at least one coefficient matrix");
  return SampledMatrixFn::polynomial(std::move(coeffs));
}

py::dict flow_dict(const FlowResult& r) {
  const std::size_t n = r.F.size();
  const auto k = n ? r.F[0].rows() : 0;
  py::array_t<double> F({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(k), static_cast<py::ssize_t>(k)});
  auto f = F.mutable_unchecked<3>();
  for (std::size_t s = 0; s < n; ++s)
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) f(s, i, j) = r.F[s](i, j);
  py::dict d;
  d["t"] = py::array_t<double>(r.t.size(), r.t.data());
  d["F"] = F;
  d["det"] = py::array_t<double>(r.det.size(), r.det.data());
  return d;
}

std::function<double(double)> coefficient(const py::object& c) {
  if (py::isinstance<py::float_>(c) || py::isinstance<py::int_>(c)) {
    const double v = c.cast<double>();
    return [v](double) { return v; };
  }
  auto f = c.cast<std::function<double(double)>>();
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the hopfflow C++ core";

  m.def("verify_topics", &verify_topics);
  m.def(
      "verify",
      [](const std::string& topic, unsigned order, const std::string& theta, std::uint64_t seed, unsigned trials,
         const std::string& instance, const std::string& variant) {
        VerifyConfig cfg;
        cfg.order = order;
        cfg.theta = parse_rational(theta);
        cfg.seed = seed;
        cfg.trials = trials;
        cfg.instance = instance;
        cfg.variant = variant;
        py::list out;
        for (const auto& c : verify_topic(topic, cfg)) {
          py::dict d;
          d["name"] = c.name;
          d["ref"] = c.ref;
          d["pass"] = c.pass;
          d["residual"] = c.residual;
          out.append(d);
        }
        return out;
      },
      py::arg("topic"), py::arg("order") = 4, py::arg("theta") = "1", py::arg("seed") = 0, py::arg("trials") = 100,
      py::arg("instance") = "all", py::arg("variant") = "all");

  m.def(
      "cbhd_term", [](std::size_t m, std::size_t letters) { return terms_of(phi_m(letters, m)); }, py::arg("m"),
      py::arg("letters") = 2);
  m.def(
      "cbhd_commutators",
      [](std::size_t m, std::size_t letters) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& t : to_nested_commutators(phi_m(letters, m)))
          out.emplace_back(t.coefficient.get_str(), t.tree.str(letter_names(letters)));
        return out;
      },
      py::arg("m"), py::arg("letters") = 2);
  m.def("pi1_identity", [](unsigned n) { return terms_of(descent_pi1_word(n)); }, py::arg("n"));
  m.def("omega_terms", [](std::size_t n) {
    std::vector<std::string> out;
    auto om = omega_terms(n);
    for (std::size_t i = 1; i < om.size(); ++i) out.push_back(om[i].str());
    return out;
  });

  m.def(
      "magnus_solve",
      [](const py::object& system, double t0, double t1, double h, int order) {
        return flow_dict(magnus_solve(system_of(system), t0, t1, h, order));
      },
      py::arg("system"), py::arg("t0"), py::arg("t1"), py::arg("h"), py::arg("order") = 4);
  m.def(
      "dyson_solve",
      [](const py::object& system, double t0, double t1, double h, std::size_t depth) {
        return flow_dict(dyson_solve(system_of(system), t0, t1, h, depth));
      },
      py::arg("system"), py::arg("t0"), py::arg("t1"), py::arg("h"), py::arg("depth") = 2);
  m.def(
      "reference_flow",
      [](const py::object& system, double t0, double t1, double tol) {
        return reference_flow(system_of(system), t0, t1, tol);
      },
      py::arg("system"), py::arg("t0"), py::arg("t1"), py::arg("tol") = 1e-12);

  m.def(
      "solve_riccati",
      [](const py::object& a0, const py::object& a1, const py::object& a2, double x0, double t0, double t1, double h) {
        RiccatiCoeffs c{coefficient(a0), coefficient(a1), coefficient(a2)};
        auto u = solve_u_system(c, t0, t1, h);
        auto x = riccati_general(u, x0);
        return py::make_tuple(py::array_t<double>(u.t.size(), u.t.data()), py::array_t<double>(x.size(), x.data()));
      },
      py::arg("a0"), py::arg("a1"), py::arg("a2"), py::arg("x0"), py::arg("t0"), py::arg("t1"), py::arg("h"));

  m.def("fdb_primitives", [](unsigned d) {
    std::vector<std::string> out;
    for (const auto& p : primitive_space(d)) out.push_back(p.str());
    return out;
  });
  m.def("fdb_bracket", [](unsigned n, unsigned k) { return dual_bracket(n, k).get_str(); });
}
