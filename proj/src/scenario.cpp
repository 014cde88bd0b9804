#include "ncgeo/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>

#include "ncgeo/classifier.hpp"
#include "ncgeo/expr.hpp"
#include "ncgeo/spherical.hpp"
#include "ncgeo/verify.hpp"

namespace ncgeo {

namespace {

const char* kSchemaTag = "ncgeo-report/1";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void canonical_dump(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keys: sorted
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        canonical_dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        canonical_dump(j[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      out += fmt_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

double require_number(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    throw SchemaError("missing or non-numeric field '" + key + "'");
  return j[key].get<double>();
}

GridAxis axis_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) return GridAxis{};
  const nlohmann::json& a = j[key];
  if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
      !a[2].is_number_integer())
    throw SchemaError("grid axis '" + key + "' must be [lo, hi, count]");
  GridAxis axis{a[0].get<double>(), a[1].get<double>(), a[2].get<int>()};
  if (axis.count < 1) throw SchemaError("grid axis '" + key + "' needs count >= 1");
  return axis;
}

ScalarField field_from_expr(const std::string& src) {
  Expr e = Expr::parse(src);
  return ScalarField([e](double t, double r) { return e.eval(t, r); });
}

AnsatzFields fields_from_scenario(const Scenario& scenario) {
  const std::map<std::string, std::string> defaults = {
      {"a_t", "0"},    {"a_r", "0"},    {"psi_re", "0"}, {"psi_im", "0"},
      {"phi_re", "1"}, {"phi_im", "0"}, {"eta", "1"}};
  auto pick = [&](const std::string& key) {
    auto it = scenario.fields.find(key);
    const std::string src = it != scenario.fields.end() ? it->second : defaults.at(key);
    try {
      return field_from_expr(src);
    } catch (const ExprError& err) {
      throw SchemaError("field '" + key + "': " + err.what());
    }
  };
  AnsatzFields f;
  f.a_t = pick("a_t");
  f.a_r = pick("a_r");
  f.psi = {pick("psi_re"), pick("psi_im")};
  f.phi = {pick("phi_re"), pick("phi_im")};
  f.eta = pick("eta");
  return f;
}

nlohmann::json judged(double value, double tol, bool pass) {
  return {{"value", value}, {"tol", tol}, {"pass", pass}};
}

nlohmann::json checks_to_json(const std::vector<CheckResult>& checks) {
  nlohmann::json out = nlohmann::json::array();
  for (const CheckResult& c : checks)
    out.push_back({{"name", c.name},
                   {"trials", c.trials},
                   {"max_residual", c.max_residual},
                   {"tol", c.tol},
                   {"pass", c.pass}});
  return out;
}

Report run_classify(const Scenario& scenario) {
  ClassificationReport rec;
  if (!scenario.partition.empty()) {
    rec = classify_partition(scenario.n, scenario.partition, scenario.traceless);
  } else if (!scenario.generators.empty()) {
    LieRep rep;
    try {
      std::vector<Matrix> gens = scenario.generators;
      rep.domain = std::make_shared<const LieBasis>(gens, false);
      rep.images = gens;
      rep.n = scenario.n;
    } catch (const std::invalid_argument& err) {
      throw SchemaError(std::string("rep.generators: ") + err.what());
    }
    rec = classify(rep, scenario.traceless);
  } else {
    throw SchemaError("classify mode needs rep.partition or rep.generators");
  }

  nlohmann::json results;
  results["scalar_field_count"] = rec.scalar_field_count;
  results["w0_dim"] = rec.w0_dim;
  nlohmann::json basis = nlohmann::json::array();
  for (const Matrix& m : rec.w0_basis) basis.push_back(matrix_to_json(m));
  results["w0_basis"] = basis;
  results["z0_dim"] = rec.z0_dim;
  if (rec.isotypic) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const auto& [dim, mult] : rec.isotypic->blocks)
      blocks.push_back({{"dim", dim}, {"mult", mult}});
    results["isotypic"] = blocks;
  } else {
    results["isotypic"] = nullptr;
  }
  results["counting_space"] = rec.traceless ? "sl_n" : "M_n";
  results["rank_rel_tol"] = kRankRelTol;

  Report report;
  report.doc["results"] = results;
  return report;
}

Report run_verify_calculus(const Scenario& scenario) {
  const double tol_identity = scenario.tol.value_or(1e-10);
  std::vector<CheckResult> checks =
      calculus_identity_suite(scenario.n, scenario.trials, scenario.seed, tol_identity);
  const std::vector<CheckResult> conn =
      connection_gauge_suite(scenario.n, scenario.trials, scenario.seed, tol_identity);
  checks.insert(checks.end(), conn.begin(), conn.end());

  Report report;
  report.pass = all_pass(checks);
  report.doc["results"]["checks"] = checks_to_json(checks);
  report.doc["results"]["pass"] = report.pass;
  return report;
}

Report run_spherical(const Scenario& scenario) {
  if (scenario.n != 2)
    throw SchemaError("spherical mode is defined for n = 2");
  const AnsatzFields fields = fields_from_scenario(scenario);
  const double tol = scenario.tol.value_or(1e-8);

  // Component sweep over the grid, radial gauge, deterministic row order.
  const std::vector<double> ts = scenario.grid.t.points();
  const std::vector<double> rs = scenario.grid.r.points();
  const std::vector<double> thetas = scenario.grid.theta.points();
  const std::vector<double> phis = scenario.grid.phi.points();
  const char* axes[4] = {"t", "x", "y", "z"};

  struct PointTask {
    double t, r, theta, phi;
  };
  std::vector<PointTask> tasks;
  for (double t : ts)
    for (double r : rs)
      for (double theta : thetas)
        for (double phi : phis) tasks.push_back({t, r, theta, phi});

  std::vector<nlohmann::json> rows_per_task(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), [&](int i) {
    const PointTask& task = tasks[i];
    SamplePoint p;
    p.t = task.t;
    p.x = task.r * std::sin(task.theta) * std::cos(task.phi);
    p.y = task.r * std::sin(task.theta) * std::sin(task.phi);
    p.z = task.r * std::cos(task.theta);
    const LocalNCOneForm form = radial_gauge_form(fields, p);
    nlohmann::json rows = nlohmann::json::array();
    auto row = [&](const std::string& id, double re) {
      rows.push_back({task.t, task.r, task.theta, task.phi, id, re, 0.0});
    };
    for (int mu = 0; mu < 4; ++mu)
      for (int a = 0; a < 3; ++a)
        row(std::string("A_") + axes[mu] + "^" + std::to_string(a + 1),
            form.spacetime[mu](a));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        row("phi^" + std::to_string(a + 1) + "_" + std::to_string(b + 1),
            form.algebraic(a, b));
    rows_per_task[i] = std::move(rows);
  });

  nlohmann::json sweep = nlohmann::json::array();
  for (const nlohmann::json& rows : rows_per_task)
    for (const nlohmann::json& row : rows) sweep.push_back(row);

  // Rotation-invariance defect over random (rotation, point) pairs.
  std::uint64_t state = scenario.seed * 0x9e3779b97f4a7c15ull + 17;
  double max_defect = 0.0;
  for (int trial = 0; trial < scenario.trials; ++trial) {
    Eigen::Vector3d axis(uniform_pm1(state), uniform_pm1(state), uniform_pm1(state));
    if (axis.norm() < 1e-3) axis = Eigen::Vector3d::UnitZ();
    const double angle = M_PI * uniform_pm1(state);
    SamplePoint p;
    p.t = uniform_pm1(state);
    p.x = 0.3 + uniform_pm1(state);
    p.y = 0.3 + uniform_pm1(state);
    p.z = 0.3 + uniform_pm1(state);
    if (p.r() < 1e-3) p.z += 1.0;
    max_defect = std::max(
        max_defect,
        rotation_invariance_defect(fields, rotation_from_axis_angle(axis, angle), p));
  }

  Report report;
  report.pass = max_defect < tol;
  report.doc["results"]["rotation_defect_max"] = judged(max_defect, tol, report.pass);
  report.doc["results"]["rotation_trials"] = scenario.trials;
  report.doc["results"]["sweep"] = sweep;
  return report;
}

Report run_transition(const Scenario& scenario) {
  const double tol = scenario.tol.value_or(1e-10);
  std::uint64_t state = scenario.seed * 0x6c62272e07bb0142ull + 3;
  const LieBasisPtr su2 = su2_basis();

  auto random_axis = [&](std::uint64_t& s) {
    Eigen::Vector3d v(uniform_pm1(s), uniform_pm1(s), uniform_pm1(s));
    if (v.norm() < 1e-3) v = Eigen::Vector3d::UnitX();
    v.normalize();
    Matrix axis = Matrix::Zero(2, 2);
    for (int a = 0; a < 3; ++a) axis += v(a) * su2->element(a);
    return axis;
  };
  // Smooth phase c0 + c1 t + c2 r + c3 sin(t) cos(r) with analytic partials.
  auto random_phase = [&](std::uint64_t& s) {
    const double c0 = uniform_pm1(s), c1 = uniform_pm1(s), c2 = uniform_pm1(s),
                 c3 = uniform_pm1(s);
    GaugeFunction::AngleFn value = [=](const GaugeFunction::Point& x) {
      return c0 + c1 * x[0] + c2 * x[1] + c3 * std::sin(x[0]) * std::cos(x[1]);
    };
    std::vector<GaugeFunction::AngleFn> parts = {
        [=](const GaugeFunction::Point& x) { return c1 + c3 * std::cos(x[0]) * std::cos(x[1]); },
        [=](const GaugeFunction::Point& x) { return c2 - c3 * std::sin(x[0]) * std::sin(x[1]); }};
    return std::make_pair(value, parts);
  };

  double max_residual = 0.0;
  for (int trial = 0; trial < scenario.trials; ++trial) {
    LocalNCOneForm form;
    form.coords = {"t", "r"};
    form.spacetime.assign(2, Eigen::Vector3d::Zero());
    for (int mu = 0; mu < 2; ++mu)
      for (int a = 0; a < 3; ++a) form.spacetime[mu](a) = uniform_pm1(state);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) form.algebraic(a, b) = uniform_pm1(state);

    auto [phase1, parts1] = random_phase(state);
    auto [phase2, parts2] = random_phase(state);
    const GaugeFunction g1 = GaugeFunction::axis_exponential(random_axis(state), phase1, parts1);
    const GaugeFunction g2 = GaugeFunction::axis_exponential(random_axis(state), phase2, parts2);
    const GaugeFunction g12 = GaugeFunction::product(g1, g2);

    const GaugeFunction::Point x = {uniform_pm1(state), 1.2 + uniform_pm1(state)};
    const LocalNCOneForm two_step = local_transition(local_transition(form, g1, x), g2, x);
    const LocalNCOneForm one_step = local_transition(form, g12, x);
    max_residual = std::max(max_residual, form_distance(two_step, one_step));
  }

  Report report;
  report.pass = max_residual < tol;
  report.doc["results"]["cocycle_residual_max"] = judged(max_residual, tol, report.pass);
  report.doc["results"]["trials"] = scenario.trials;
  return report;
}

}  // namespace

std::vector<double> GridAxis::points() const {
  std::vector<double> out;
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < count; ++i)
    out.push_back(lo + (hi - lo) * double(i) / double(count - 1));
  return out;
}

Scenario Scenario::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("scenario must be a JSON object");
  Scenario s;
  if (!j.contains("mode") || !j["mode"].is_string())
    throw SchemaError("missing string field 'mode'");
  s.mode = j["mode"].get<std::string>();
  if (s.mode != "classify" && s.mode != "verify-calculus" && s.mode != "spherical" &&
      s.mode != "transition")
    throw SchemaError("unknown mode '" + s.mode + "'");

  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw SchemaError("field 'n' must be an integer");
    s.n = j["n"].get<int>();
  }
  if (s.n < 2 || s.n > 6) throw SchemaError("n must lie in [2, 6]");

  if (j.contains("rep")) {
    const nlohmann::json& rep = j["rep"];
    if (rep.contains("partition")) {
      if (!rep["partition"].is_array())
        throw SchemaError("rep.partition must be an array of integers");
      for (const auto& part : rep["partition"]) {
        if (!part.is_number_integer()) throw SchemaError("rep.partition entries must be integers");
        s.partition.push_back(part.get<int>());
      }
    }
    if (rep.contains("generators")) {
      if (!rep["generators"].is_array())
        throw SchemaError("rep.generators must be an array of matrices");
      for (const auto& g : rep["generators"]) s.generators.push_back(matrix_from_json(g));
    }
  }
  if (j.contains("traceless")) {
    if (!j["traceless"].is_boolean()) throw SchemaError("field 'traceless' must be boolean");
    s.traceless = j["traceless"].get<bool>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw SchemaError("field 'seed' must be an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer() || j["trials"].get<int>() < 1)
      throw SchemaError("field 'trials' must be a positive integer");
    s.trials = j["trials"].get<int>();
  }
  if (j.contains("tol")) s.tol = require_number(j, "tol");
  if (j.contains("grid")) {
    const nlohmann::json& g = j["grid"];
    if (!g.is_object()) throw SchemaError("field 'grid' must be an object");
    GridSpec spec;
    spec.t = g.contains("t") ? axis_from_json(g, "t") : spec.t;
    spec.r = g.contains("r") ? axis_from_json(g, "r") : spec.r;
    spec.theta = g.contains("theta") ? axis_from_json(g, "theta") : spec.theta;
    spec.phi = g.contains("phi") ? axis_from_json(g, "phi") : spec.phi;
    if (spec.r.lo <= 0.0 || (spec.r.count > 1 && spec.r.hi <= 0.0))
      throw SchemaError("grid.r must stay strictly positive");
    s.grid = spec;
  }
  if (j.contains("fields")) {
    if (!j["fields"].is_object()) throw SchemaError("field 'fields' must be an object");
    for (auto it = j["fields"].begin(); it != j["fields"].end(); ++it) {
      if (!it.value().is_string()) throw SchemaError("field expressions must be strings");
      s.fields[it.key()] = it.value().get<std::string>();
    }
  }

  if (s.mode == "classify" && s.partition.empty() && s.generators.empty())
    throw SchemaError("classify mode needs rep.partition or rep.generators");
  if (!s.partition.empty()) {
    int total = 0;
    for (int part : s.partition) {
      if (part < 1) throw SchemaError("partition parts must be positive");
      total += part;
    }
    if (total != s.n) throw SchemaError("partition must sum to n");
  }
  for (const Matrix& g : s.generators)
    if (g.rows() != s.n || g.cols() != s.n)
      throw SchemaError("generator matrices must be n x n");
  return s;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& err) {
    throw SchemaError(std::string("scenario parse error: ") + err.what());
  }
  return from_json(j);
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json j;
  j["mode"] = mode;
  j["n"] = n;
  j["seed"] = seed;
  j["trials"] = trials;
  j["traceless"] = traceless;
  if (tol) j["tol"] = *tol;
  if (!partition.empty()) j["rep"]["partition"] = partition;
  if (!generators.empty()) {
    nlohmann::json gens = nlohmann::json::array();
    for (const Matrix& g : generators) gens.push_back(matrix_to_json(g));
    j["rep"]["generators"] = gens;
  }
  if (mode == "spherical") {
    auto axis = [](const GridAxis& a) {
      return nlohmann::json::array({a.lo, a.hi, a.count});
    };
    j["grid"] = {{"t", axis(grid.t)},
                 {"r", axis(grid.r)},
                 {"theta", axis(grid.theta)},
                 {"phi", axis(grid.phi)}};
    j["fields"] = fields;
  }
  return j;
}

Report run_scenario(const Scenario& scenario) {
  Report report;
  if (scenario.mode == "classify") report = run_classify(scenario);
  else if (scenario.mode == "verify-calculus") report = run_verify_calculus(scenario);
  else if (scenario.mode == "spherical") report = run_spherical(scenario);
  else if (scenario.mode == "transition") report = run_transition(scenario);
  else throw SchemaError("unknown mode '" + scenario.mode + "'");

  report.doc["schema"] = kSchemaTag;
  report.doc["scenario"] = scenario.to_json();
  return report;
}

std::string canonical_json(const nlohmann::json& j) {
  std::string out;
  canonical_dump(j, out);
  return out;
}

namespace {

void emit_csv(const Report& report, std::ostream& out) {
  const nlohmann::json& results = report.doc.contains("results")
                                      ? report.doc["results"]
                                      : nlohmann::json::object();
  if (results.contains("sweep")) {
    out << "t,r,theta,phi,component,re,im\n";
    for (const nlohmann::json& row : results["sweep"]) {
      out << fmt_double(row[0].get<double>()) << ',' << fmt_double(row[1].get<double>())
          << ',' << fmt_double(row[2].get<double>()) << ','
          << fmt_double(row[3].get<double>()) << ',' << row[4].get<std::string>() << ','
          << fmt_double(row[5].get<double>()) << ',' << fmt_double(row[6].get<double>())
          << '\n';
    }
    return;
  }
  // Generic flattening: sorted key,value rows.
  out << "key,value\n";
  std::function<void(const nlohmann::json&, const std::string&)> walk =
      [&](const nlohmann::json& node, const std::string& prefix) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it)
            walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
          for (size_t i = 0; i < node.size(); ++i)
            walk(node[i], prefix + "[" + std::to_string(i) + "]");
        } else if (node.is_number_float()) {
          out << prefix << ',' << fmt_double(node.get<double>()) << '\n';
        } else {
          out << prefix << ',' << node.dump() << '\n';
        }
      };
  walk(results, "");
}

}  // namespace

void emit_report(const Report& report, ReportFormat format, std::ostream& out) {
  if (format == ReportFormat::Json) {
    out << canonical_json(report.doc) << '\n';
    return;
  }
  emit_csv(report, out);
}

void emit_report_file(const Report& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  emit_report(report, format, out);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("matrix must be a non-empty array");
  const size_t rows = j.size();
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw SchemaError("matrix rows must be arrays");
  Matrix m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw SchemaError("matrix rows must have equal lengths");
    for (size_t k = 0; k < cols; ++k) {
      const nlohmann::json& cell = j[i][k];
      if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
          !cell[1].is_number())
        throw SchemaError("matrix entries must be [re, im] pairs");
      m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  return m;
}

nlohmann::json ncform_to_json(const NCForm& form) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int flat = 0; flat < form.num_components(); ++flat)
    coeffs.push_back({{"idx", form.component_tuple(flat)},
                      {"value", matrix_to_json(form.component(flat))}});
  return {{"degree", form.degree()}, {"n", form.n()}, {"coeffs", coeffs}};
}

NCForm ncform_from_json(const nlohmann::json& j) {
  if (!j.contains("degree") || !j.contains("n") || !j.contains("coeffs"))
    throw SchemaError("NCForm needs degree, n and coeffs");
  NCForm form(j["n"].get<int>(), j["degree"].get<int>());
  for (const nlohmann::json& entry : j["coeffs"]) {
    const std::vector<int> idx = entry["idx"].get<std::vector<int>>();
    const Matrix value = matrix_from_json(entry["value"]);
    // locate the flat slot carrying this increasing tuple
    bool placed = false;
    for (int flat = 0; flat < form.num_components(); ++flat) {
      if (form.component_tuple(flat) == idx) {
        form.component(flat) = value;
        placed = true;
        break;
      }
    }
    if (!placed) throw SchemaError("NCForm coefficient index out of range");
  }
  return form;
}

}  // namespace ncgeo
