#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "hopfflow/cbhd.hpp"
#include "hopfflow/errors.hpp"
#include "hopfflow/expression.hpp"
#include "hopfflow/faadibruno.hpp"
#include "hopfflow/idempotents.hpp"
#include "hopfflow/magnus.hpp"
#include "hopfflow/scheffers.hpp"
#include "hopfflow/verify.hpp"

using namespace hopfflow;
using nlohmann::json;

namespace {

// Exit codes.
constexpr int kPass = 0, kCheckFailed = 1, kUsage = 2;

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(fmt::format("{}: {}", flag, e.what()));
  }
}

double real_flag(const std::string& text, const char* flag) { return rational_flag(text, flag).get_d(); }

// Accepts "inf", "+inf", "-inf" besides rationals.
double point_flag(const std::string& text, const char* flag) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  return real_flag(text, flag);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string num(double x) { return fmt::format("{:.12g}", x); }

// --out: "csv"/"json" pick the format on stdout; anything else is a path whose
// extension picks the format.
struct OutSpec {
  std::string format;
  std::string path;
};

OutSpec out_spec(const std::string& out, const std::string& fallback) {
  if (out.empty()) return {fallback, ""};
  if (out == "csv" || out == "json") return {out, ""};
  auto dot = out.rfind('.');
  std::string ext = dot == std::string::npos ? "" : out.substr(dot + 1);
  return {ext == "csv" || ext == "json" ? ext : fallback, out};
}

void emit(const OutSpec& spec, const std::string& text) {
  if (spec.path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(spec.path);
  if (!f) throw UsageError(fmt::format("cannot write '{}'", spec.path));
  f << text;
}

// ---- expand ----

struct ExpandOpts {
  std::size_t n = 1, degree = 3, letters = 2, order = 4, k = 1;
  bool commutators = false, as_json = false;
  std::string op = "bell";
};

std::string expand_eulerian(const ExpandOpts& o) {
  if (o.n > o.degree) return o.as_json ? "[]\n" : "0\n";
  std::vector<Letter> l(o.degree);
  for (std::size_t i = 0; i < o.degree; ++i) l[i] = static_cast<Letter>(i);
  FreePoly p = o.n == 1 ? pi1_word(Word(l)) : eulerian(o.n, o.degree, o.degree).apply(Word(l));
  return (o.as_json ? p.to_json().dump() : p.str()) + "\n";
}

std::string expand_cbhd(const ExpandOpts& o) {
  if (o.letters < 1 || o.letters > 6) throw UsageError("--letters must lie in 1..6");
  const auto names = default_letter_names(o.letters);
  json arr = json::array();
  std::string text;
  for (std::size_t m = 1; m <= o.order; ++m) {
    FreePoly p = phi_m(o.letters, m);
    if (o.commutators) {
      std::string line;
      json terms = json::array();
      for (const auto& t : to_nested_commutators(p)) {
        const std::string c = t.coefficient.get_str();
        terms.push_back({{"coefficient", c}, {"bracket", t.tree.str(names)}});
        const Rational& q = t.coefficient;
        const std::string mag = abs(q) == 1 ? "" : Rational(abs(q)).get_str() + " ";
        line += fmt::format("{}{}{}", line.empty() ? (q < 0 ? "-" : "") : (q < 0 ? " - " : " + "), mag,
                            t.tree.str(names));
      }
      arr.push_back({{"degree", m}, {"terms", terms}});
      text += fmt::format("Phi_{} = {}\n", m, line.empty() ? "0" : line);
    } else {
      arr.push_back({{"degree", m}, {"poly", p.to_json()}});
      text += fmt::format("Phi_{} = {}\n", m, p.pretty(names));
    }
  }
  return o.as_json ? arr.dump(2) + "\n" : text;
}

std::string expand_omega(const ExpandOpts& o) {
  auto om = omega_terms(o.order);
  std::string text;
  json arr = json::array();
  for (std::size_t n = 1; n <= o.order; ++n) {
    text += fmt::format("Omega_{} = {}\n", n, om[n].str());
    arr.push_back({{"order", n}, {"terms", om[n].str()}});
  }
  return o.as_json ? arr.dump(2) + "\n" : text;
}

std::string expand_faadibruno(const ExpandOpts& o) {
  const auto n = static_cast<unsigned>(o.n), k = static_cast<unsigned>(o.k);
  if (o.op == "bell") {
    // Symbolic B_{n,k}(a_1, a_2, …) with a_1 = 1.
    std::vector<FdbPoly> g;
    for (unsigned i = 1; i + k <= n + 1; ++i) g.push_back(FdbPoly::generator(i));
    return bell(n, k, g, FdbPoly(1)).str() + "\n";
  }
  if (o.op == "coproduct") return fdb_coproduct(n).str() + "\n";
  if (o.op == "antipode") return antipode(n).str() + "\n";
  if (o.op == "bracket") return fmt::format("[b'_{}, b'_{}] = {} b'_{}\n", n, k, dual_bracket(n, k).get_str(), n + k);
  if (o.op == "primitives") {
    std::string text;
    for (const auto& p : primitive_space(n)) text += p.str() + "\n";
    return text.empty() ? "0\n" : text;
  }
  throw UsageError(fmt::format("unknown --op '{}'", o.op));
}

// ---- verify ----

struct VerifyOpts {
  std::string topic, theta = "1", out;
  unsigned order = 4, trials = 100;
  std::uint64_t seed = 0;
  std::string instance = "all", variant = "all";
  bool timing = false;
};

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HOPFFLOW_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end || v < 1) throw UsageError("HOPFFLOW_THREADS must be a positive integer");
    n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

std::vector<Check> run_topics(const std::vector<std::string>& topics, const VerifyConfig& cfg) {
  std::vector<std::vector<Check>> results(topics.size());
  std::vector<std::exception_ptr> errors(topics.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < topics.size();) {
      try {
        results[i] = verify_topic(topics[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(thread_cap(), topics.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Check> all;
  for (auto& r : results) all.insert(all.end(), r.begin(), r.end());
  std::sort(all.begin(), all.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return all;
}

json residual_json(double r) { return std::isfinite(r) ? json(r) : json(nullptr); }

int run_verify(const VerifyOpts& o) {
  VerifyConfig cfg;
  cfg.order = o.order;
  cfg.theta = rational_flag(o.theta, "--theta");
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.instance = o.instance;
  cfg.variant = o.variant;
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> topics = o.topic == "all" ? verify_topics() : std::vector<std::string>{o.topic};
  auto checks = run_topics(topics, cfg);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  const OutSpec spec = out_spec(o.out, "json");
  if (spec.format == "csv") {
    std::string text = "name,paper_ref,status,residual\n";
    for (const auto& c : checks)
      text += fmt::format("{},\"{}\",{},{}\n", c.name, c.ref, c.pass ? "pass" : "fail", num(c.residual));
    emit(spec, text);
  } else {
    json report;
    report["command"] = "verify " + o.topic;
    report["config"] = {{"order", cfg.order},   {"theta", cfg.theta.get_str()}, {"seed", cfg.seed},
                        {"trials", cfg.trials}, {"instance", cfg.instance},     {"variant", cfg.variant}};
    json arr = json::array();
    for (const auto& c : checks)
      arr.push_back({{"name", c.name},
                     {"paper_ref", c.ref},
                     {"status", c.pass ? "pass" : "fail"},
                     {"residual", residual_json(c.residual)}});
    report["checks"] = arr;
    report["elapsed_ms"] = o.timing ? ms.count() : 0;
    emit(spec, report.dump(2) + "\n");
  }
  for (const auto& c : checks)
    if (!c.pass) throw CheckFailed(fmt::format("check failed: {} (residual {})", c.name, num(c.residual)));
  return kPass;
}

// ---- solve ----

SampledMatrixFn parse_system(const std::string& system) {
  if (system == "airy") return SampledMatrixFn::airy();
  if (system.rfind("preset:", 0) == 0) {
    const std::string name = system.substr(7);
    auto names = SampledMatrixFn::preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw UsageError(fmt::format("unknown preset '{}'", name));
    return SampledMatrixFn::preset(name);
  }
  if (system.rfind("coeffs:", 0) == 0) {
    // [C0, C1, …] with A(t) = Σ C_i t^i, each C_i a square list of rows.
    json j;
    try {
      j = json::parse(system.substr(7));
    } catch (const json::exception& e) {
      throw UsageError(fmt::format("--system coeffs: {}", e.what()));
    }
    if (!j.is_array() || j.empty()) throw UsageError("--system coeffs: expected a non-empty list of matrices");
    std::vector<Eigen::MatrixXd> mats;
    const std::size_t k = j[0].size();
    for (const auto& m : j) {
      if (!m.is_array() || m.size() != k || k == 0) throw UsageError("--system coeffs: matrices must be square");
      Eigen::MatrixXd M(k, k);
      for (std::size_t r = 0; r < k; ++r) {
        if (!m[r].is_array() || m[r].size() != k) throw UsageError("--system coeffs: matrices must be square");
        for (std::size_t c = 0; c < k; ++c) {
          const auto& v = m[r][c];
          if (v.is_number()) M(r, c) = v.get<double>();
          else if (v.is_string()) M(r, c) = real_flag(v.get<std::string>(), "--system");
          else throw UsageError("--system coeffs: entries must be numbers or \"p/q\" strings");
        }
      }
      mats.push_back(M);
    }
    return SampledMatrixFn::polynomial(std::move(mats), "coeffs");
  }
  throw UsageError(fmt::format("unknown --system '{}'", system));
}

struct SolveOpts {
  std::string system = "airy", method = "magnus4", out;
  std::string t0 = "0", t1 = "1", h = "1/64";
  std::string a0 = "0", a1 = "0", a2 = "0", x0 = "0";
  bool oracle = false;
};

int run_linear_ode(const SolveOpts& o) {
  const auto A = parse_system(o.system);
  const double t0 = real_flag(o.t0, "--t0"), t1 = real_flag(o.t1, "--t1"), h = real_flag(o.h, "--h");
  FlowResult r;
  try {
    r = solve_flow(A, t0, t1, h, o.method);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto k = static_cast<Eigen::Index>(A.size());
  std::vector<double> err;
  if (o.oracle)
    for (std::size_t i = 0; i < r.t.size(); ++i) err.push_back((r.F[i] - reference_flow(A, t0, r.t[i])).norm());
  const OutSpec spec = out_spec(o.out, "csv");
  if (spec.format == "json") {
    json j;
    j["command"] = "solve linear-ode";
    j["config"] = {{"system", o.system}, {"method", o.method}, {"t0", t0}, {"t1", t1}, {"h", h}};
    json rows = json::array();
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      json row = {{"t", r.t[i]}, {"det", r.det[i]}};
      json F = json::array();
      for (Eigen::Index a = 0; a < k; ++a) {
        json rr = json::array();
        for (Eigen::Index b = 0; b < k; ++b) rr.push_back(r.F[i](a, b));
        F.push_back(rr);
      }
      row["F"] = F;
      if (o.oracle) row["err"] = err[i];
      rows.push_back(row);
    }
    j["trajectory"] = rows;
    emit(spec, j.dump(2) + "\n");
    return kPass;
  }
  std::string text = "t";
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) text += fmt::format(",F{}{}", a, b);
  text += o.oracle ? ",det,err\n" : ",det\n";
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    text += num(r.t[i]);
    for (Eigen::Index a = 0; a < k; ++a)
      for (Eigen::Index b = 0; b < k; ++b) text += "," + num(r.F[i](a, b));
    text += "," + num(r.det[i]);
    if (o.oracle) text += "," + num(err[i]);
    text += "\n";
  }
  emit(spec, text);
  return kPass;
}

int run_riccati(const SolveOpts& o) {
  const RiccatiCoeffs c{parse_expression(o.a0), parse_expression(o.a1), parse_expression(o.a2)};
  const double t0 = real_flag(o.t0, "--t0"), t1 = real_flag(o.t1, "--t1"), h = real_flag(o.h, "--h");
  if (!(h > 0) || !(t1 >= t0)) throw UsageError("need h > 0 and t1 >= t0");
  std::vector<double> x0s;
  std::vector<std::string> labels = split(o.x0, ',');
  if (labels.empty()) throw UsageError("--x0 needs at least one value");
  for (const auto& s : labels) x0s.push_back(point_flag(s, "--x0"));
  auto u = solve_u_system(c, t0, t1, h);
  std::vector<std::vector<double>> xs;
  for (double x0 : x0s) xs.push_back(riccati_general(u, x0));
  const OutSpec spec = out_spec(o.out, "csv");
  if (spec.format == "json") {
    json j;
    j["command"] = "solve riccati";
    j["config"] = {{"a0", o.a0}, {"a1", o.a1}, {"a2", o.a2}, {"x0", labels}, {"t0", t0}, {"t1", t1}, {"h", h}};
    j["t"] = u.t;
    json sols = json::array();
    for (const auto& x : xs) {
      json col = json::array();
      for (double v : x) col.push_back(residual_json(v));
      sols.push_back(col);
    }
    j["x"] = sols;
    emit(spec, j.dump(2) + "\n");
    return kPass;
  }
  std::string text = "t";
  for (const auto& l : labels) text += fmt::format(",x[{}]", l);
  text += "\n";
  for (std::size_t i = 0; i < u.t.size(); ++i) {
    text += num(u.t[i]);
    for (const auto& x : xs) text += "," + num(x[i]);
    text += "\n";
  }
  emit(spec, text);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf-algebraic expansions, identity checks and flow solvers"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.1.0");

  ExpandOpts eo;
  auto* expand = app.add_subcommand("expand", "print expansions")->require_subcommand(1);
  expand->add_flag("--json", eo.as_json, "JSON output");
  auto* ex_eul = expand->add_subcommand("eulerian", "pi_n applied to the multilinear word x0…x(d-1)");
  ex_eul->add_option("--n", eo.n)->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  ex_eul->add_option("--degree", eo.degree)->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  auto* ex_cbhd = expand->add_subcommand("cbhd", "homogeneous terms Phi_m of log(e^X1 … e^Xn)");
  ex_cbhd->add_option("--letters", eo.letters);
  ex_cbhd->add_option("--order", eo.order)->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  ex_cbhd->add_flag("--commutators", eo.commutators, "print nested commutators");
  auto* ex_om = expand->add_subcommand("omega", "Omega_n as Rota-Baxter expressions");
  ex_om->add_option("--order", eo.order)->check(CLI::Range(std::size_t{1}, std::size_t{5}));
  auto* ex_fdb = expand->add_subcommand("faadibruno", "Faa di Bruno Hopf algebra");
  ex_fdb->add_option("--op", eo.op)->check(CLI::IsMember({"bell", "coproduct", "antipode", "bracket", "primitives"}));
  ex_fdb->add_option("--n", eo.n, "degree; left index for bracket")->check(CLI::Range(std::size_t{1}, std::size_t{12}));
  ex_fdb->add_option("--k", eo.k, "Bell k; right index for bracket")->check(CLI::Range(std::size_t{1}, std::size_t{12}));

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run identity checks; exit 1 if any fails");
  std::vector<std::string> topic_names = verify_topics();
  topic_names.push_back("all");
  verify->add_option("topic", vo.topic)->required()->check(CLI::IsMember(topic_names));
  verify->add_option("--order", vo.order);
  verify->add_option("--theta", vo.theta, "weight, p/q accepted");
  verify->add_option("--seed", vo.seed);
  verify->add_option("--trials", vo.trials);
  verify->add_option("--instance", vo.instance, "rb carrier");
  verify->add_option("--variant", vo.variant, "spitzer variant");
  verify->add_option("--out", vo.out, "csv, json or a file path");
  verify->add_flag("--timing", vo.timing, "record elapsed_ms");

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "integrate ODEs")->require_subcommand(1);
  auto* lin = solve->add_subcommand("linear-ode", "fundamental matrix of F' = A(t)F");
  lin->add_option("--system", so.system, "airy, preset:<name> or coeffs:<json>");
  lin->add_option("--method", so.method, "magnus4, magnus2 or dyson:<depth>");
  lin->add_flag("--oracle", so.oracle, "add an adaptive Dormand-Prince error column");
  auto* ric = solve->add_subcommand("riccati", "x' = a0(t) + a1(t)x + a2(t)x^2");
  ric->add_option("--a0", so.a0);
  ric->add_option("--a1", so.a1);
  ric->add_option("--a2", so.a2);
  ric->add_option("--x0", so.x0, "comma-separated initial values, inf allowed");
  for (auto* sub : {lin, ric}) {
    sub->add_option("--t0", so.t0);
    sub->add_option("--t1", so.t1);
    sub->add_option("--h", so.h);
    sub->add_option("--out", so.out, "csv, json or a file path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  try {
    if (ex_eul->parsed()) std::cout << expand_eulerian(eo);
    else if (ex_cbhd->parsed()) std::cout << expand_cbhd(eo);
    else if (ex_om->parsed()) std::cout << expand_omega(eo);
    else if (ex_fdb->parsed()) std::cout << expand_faadibruno(eo);
    else if (verify->parsed()) return run_verify(vo);
    else if (lin->parsed()) return run_linear_ode(so);
    else if (ric->parsed()) return run_riccati(so);
    return kPass;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CheckFailed& e) {
    std::cerr << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}
