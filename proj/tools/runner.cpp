#include "runner.hpp"

#include "oqw/walk_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace oqw::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "scenario", "steps",  "record_every", "output",   "format", "mode",      "tol",
      "max_iter", "theta",  "theta_cos",    "window",   "p",      "q",         "sqrt_p",
      "alpha",    "beta",   "omega",        "lambda",   "N",      "T",         "seed",
      "gate",     "unitary", "gates",       "unitaries", "psi0",  "psi1",      "psi2",
      "start",    "initial", "initial_state", "walk"};
  return keys;
}

double number(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

long long integer(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  return v.get<long long>();
}

std::string string_field(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ConfigError(std::string("'") + key + "' must be a string");
}

double probability(const json& doc, const char* key) {
  const double v = number(doc, key);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ConfigError(std::string("'") + key + "' must lie in [0, 1], got " + std::to_string(v));
  }
  return v;
}

Ket ket_from(const json& v, const char* key) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "0") return kets::zero();
    if (name == "1") return kets::one();
    if (name == "+") return kets::plus();
    if (name == "-") return kets::minus();
    throw ConfigError(std::string("'") + key + "': unknown ket name '" + name +
                      "' (use 0, 1, +, - or an amplitude list)");
  }
  if (!v.is_array() || v.empty()) {
    throw ConfigError(std::string("'") + key + "' must be a ket name or an amplitude list");
  }
  std::vector<Complex> amps;
  for (const auto& z : v) {
    if (z.is_number()) {
      amps.emplace_back(z.get<double>(), 0.0);
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      amps.emplace_back(z[0].get<double>(), z[1].get<double>());
    } else {
      throw ConfigError(std::string("'") + key + "': amplitudes must be numbers or [re, im]");
    }
  }
  try {
    return Ket::normalized(std::move(amps));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'") + key + "': " + e.what());
  }
}

ComplexMatrix matrix_field(const json& v, const char* key) {
  try {
    return matrix_from_json(v.dump());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("'") + key + "': " + e.what());
  }
}

ComplexMatrix gate_field(const json& v, const char* key) {
  if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must name a gate");
  try {
    return gates::by_name(v.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'") + key + "': " + e.what());
  }
}

void write_ordered_occupations(ordered_json& obj, const OccupationDistribution& dist) {
  for (const auto& [node, prob] : dist.entries()) {
    obj[node] = std::stod(format_probability(prob));
  }
}

ordered_json matrix_value(const ComplexMatrix& m) { return ordered_json::parse(matrix_to_json(m)); }

bool write_output(const std::string& path, const std::string& content, std::ostream& fallback,
                  std::ostream& log) {
  if (path.empty() || path == "-") {
    fallback << content;
    return true;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    log << "error: cannot open output file '" << path << "'\n";
    return false;
  }
  out << content;
  out.close();
  if (!out) {
    log << "error: failed writing '" << path << "'\n";
    return false;
  }
  return true;
}

std::string valid_scenarios() {
  std::string s;
  for (const auto& n : scenario_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

double default_tolerance() {
  const char* env = std::getenv("OQW_TOL");
  if (!env || !*env) return kDefaultTol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(std::string("OQW_TOL must be a positive number, got '") + env + "'");
  }
  return v;
}

RunConfig parse_config(std::string_view text, double default_tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) throw ConfigError("unknown configuration field '" + key + "'");
  }
  if (!doc.contains("scenario")) {
    throw ConfigError("missing 'scenario'; valid scenarios: " + valid_scenarios());
  }

  RunConfig cfg;
  cfg.tol = default_tol;
  auto& p = cfg.params;
  p.name = string_field(doc, "scenario");
  const auto names = scenario_names();
  if (std::find(names.begin(), names.end(), p.name) == names.end()) {
    throw ConfigError("unknown scenario '" + p.name + "'; valid scenarios: " + valid_scenarios());
  }

  if (doc.contains("steps")) {
    const auto v = integer(doc, "steps");
    if (v < 0) throw ConfigError("'steps' must be >= 0");
    cfg.steps = static_cast<std::size_t>(v);
  }
  if (doc.contains("record_every")) {
    const auto v = integer(doc, "record_every");
    if (v < 1) throw ConfigError("'record_every' must be >= 1");
    cfg.record_every = static_cast<std::size_t>(v);
  }
  if (doc.contains("output")) cfg.output = string_field(doc, "output");
  if (doc.contains("format")) {
    const auto f = string_field(doc, "format");
    if (f == "csv") cfg.format = Format::csv;
    else if (f == "json") cfg.format = Format::json;
    else throw ConfigError("'format' must be csv or json");
  }
  if (doc.contains("mode")) {
    const auto m = string_field(doc, "mode");
    if (m == "run") cfg.mode = Mode::run;
    else if (m == "steady") cfg.mode = Mode::steady;
    else throw ConfigError("'mode' must be run or steady");
  }
  if (doc.contains("tol")) {
    cfg.tol = number(doc, "tol");
    if (!(cfg.tol > 0.0)) throw ConfigError("'tol' must be positive");
  }
  if (doc.contains("max_iter")) {
    const auto v = integer(doc, "max_iter");
    if (v < 1) throw ConfigError("'max_iter' must be >= 1");
    cfg.max_iter = static_cast<std::size_t>(v);
  }

  if (doc.contains("theta") && doc.contains("theta_cos")) {
    throw ConfigError("give either 'theta' or 'theta_cos', not both");
  }
  if (doc.contains("theta")) p.theta = number(doc, "theta");
  if (doc.contains("theta_cos")) {
    const double c = number(doc, "theta_cos");
    if (!(c >= -1.0 && c <= 1.0)) throw ConfigError("'theta_cos' must lie in [-1, 1]");
    p.theta = std::acos(c);
  }
  if (doc.contains("window")) {
    const auto v = integer(doc, "window");
    if (v < 1) throw ConfigError("'window' must be >= 1");
    p.window = static_cast<int>(v);
  }
  if (doc.contains("sqrt_p") && doc.contains("p")) {
    throw ConfigError("give either 'p' or 'sqrt_p', not both");
  }
  if (doc.contains("p")) p.p = probability(doc, "p");
  if (doc.contains("sqrt_p")) {
    const double s = probability(doc, "sqrt_p");
    p.p = s * s;
  }
  if (doc.contains("q")) p.q = probability(doc, "q");
  if (p.p && p.q && std::abs(*p.p + *p.q - 1.0) > 1e-12) throw ConfigError("p + q must equal 1");
  if (doc.contains("omega")) p.omega = probability(doc, "omega");
  if (doc.contains("lambda")) p.lambda = probability(doc, "lambda");
  if (p.omega && p.lambda && std::abs(*p.omega + *p.lambda - 1.0) > 1e-12) {
    throw ConfigError("omega + lambda must equal 1");
  }
  if (doc.contains("alpha")) p.alpha = number(doc, "alpha");
  if (doc.contains("beta")) p.beta = number(doc, "beta");
  if (doc.contains("N")) {
    const auto v = integer(doc, "N");
    if (v < 2) throw ConfigError("'N' must be >= 2");
    p.n_nodes = static_cast<int>(v);
  }
  if (doc.contains("T")) {
    const auto v = integer(doc, "T");
    if (v < 1) throw ConfigError("'T' must be >= 1");
    p.registers = static_cast<int>(v);
  }
  if (doc.contains("seed")) {
    const auto v = integer(doc, "seed");
    if (v < 0) throw ConfigError("'seed' must be >= 0");
    p.seed = static_cast<unsigned long long>(v);
  }

  if (doc.contains("gate")) p.unitaries.push_back(gate_field(doc["gate"], "gate"));
  if (doc.contains("unitary")) p.unitaries.push_back(matrix_field(doc["unitary"], "unitary"));
  if (doc.contains("gates")) {
    if (!doc["gates"].is_array()) throw ConfigError("'gates' must be a list of gate names");
    for (const auto& g : doc["gates"]) p.unitaries.push_back(gate_field(g, "gates"));
  }
  if (doc.contains("unitaries")) {
    if (!doc["unitaries"].is_array()) throw ConfigError("'unitaries' must be a list of matrices");
    for (const auto& u : doc["unitaries"]) p.unitaries.push_back(matrix_field(u, "unitaries"));
  }
  for (const auto& u : p.unitaries) {
    if (!is_unitary(u)) throw ConfigError("unitary input is not unitary within 1e-10");
  }

  if (doc.contains("psi0")) p.psi0 = ket_from(doc["psi0"], "psi0");
  if (doc.contains("psi1")) p.target = ket_from(doc["psi1"], "psi1");
  if (doc.contains("psi2")) p.orthogonal = ket_from(doc["psi2"], "psi2");
  if (doc.contains("start")) p.start = string_field(doc, "start");
  if (doc.contains("initial")) p.initial = string_field(doc, "initial");
  try {
    if (doc.contains("initial_state")) p.initial_state = walker_state_from_json(doc["initial_state"].dump());
    if (doc.contains("walk")) p.custom = walk_spec_from_json(doc["walk"].dump());
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig parse_quick(const std::string& scenario, const std::vector<std::string>& assignments,
                      double default_tol) {
  json doc = json::object();
  doc["scenario"] = scenario;
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("expected key=value, got '" + a + "'");
    }
    const auto key = a.substr(0, eq);
    const auto value = a.substr(eq + 1);
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      parsed = value;
    }
    doc[key] = std::move(parsed);
  }
  return parse_config(doc.dump(), default_tol);
}

OccupationTrajectory occupations(const Trajectory& trajectory) {
  OccupationTrajectory out;
  out.reserve(trajectory.size());
  for (const auto& snap : trajectory) out.emplace_back(snap.step, occupation(snap.state));
  return out;
}

std::string format_probability(double p) {
  double rounded = std::round(p * 1e12) / 1e12;
  rounded += 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", rounded);
  return buf;
}

std::string emit_csv(const OccupationTrajectory& trajectory) {
  std::string out = "step,node,probability\n";
  for (const auto& [step, dist] : trajectory) {
    for (const auto& [node, prob] : dist.entries()) {
      out += std::to_string(step);
      out += ',';
      out += node;
      out += ',';
      out += format_probability(prob);
      out += '\n';
    }
  }
  return out;
}

std::string emit_json(const OccupationTrajectory& trajectory) {
  ordered_json doc = ordered_json::array();
  for (const auto& [step, dist] : trajectory) {
    ordered_json rec;
    rec["step"] = step;
    ordered_json occ = ordered_json::object();
    write_ordered_occupations(occ, dist);
    rec["occupations"] = std::move(occ);
    doc.push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

std::string emit(const OccupationTrajectory& trajectory, Format format) {
  return format == Format::csv ? emit_csv(trajectory) : emit_json(trajectory);
}

std::string steady_report(const BuiltScenario& scenario, const SteadyStateResult& result,
                          double tol) {
  ordered_json doc;
  doc["scenario"] = scenario.name;
  doc["converged"] = result.converged;
  doc["iterations"] = result.iterations;
  doc["residual"] = result.residual;
  doc["tolerance"] = tol;

  ordered_json occ = ordered_json::object();
  write_ordered_occupations(occ, occupation(result.state));
  doc["occupations"] = std::move(occ);

  if (scenario.readout_node) {
    ordered_json readout;
    readout["node"] = *scenario.readout_node;
    readout["probability"] = readout_probability(scenario.spec, result.state, *scenario.readout_node);
    doc["readout"] = std::move(readout);
  }
  ordered_json fid = ordered_json::object();
  for (const auto& t : scenario.targets) {
    const auto f = node_fidelity(scenario.spec, result.state, t.node, t.ket);
    fid[t.node] = f ? ordered_json(*f) : ordered_json(nullptr);
  }
  doc["fidelities"] = std::move(fid);

  ordered_json blocks = ordered_json::object();
  for (const auto& [node, block] : result.state.blocks()) blocks[node] = matrix_value(block);
  doc["blocks"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

std::string validation_summary(const BuiltScenario& scenario, const ValidationReport& report) {
  std::ostringstream os;
  os << "scenario " << scenario.name << ": " << scenario.spec.node_count() << " nodes, "
     << scenario.spec.edges().size() << " transitions, internal dimension " << scenario.spec.dim()
     << "\n";
  os << "node,residual\n";
  char buf[64];
  for (const auto& r : report.residuals) {
    std::snprintf(buf, sizeof buf, "%.3e", r.residual);
    os << r.node << ',' << buf << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.3e", report.max_residual());
  os << (report.accepted() ? "accepted" : "rejected") << ": max residual " << buf
     << " (tolerance ";
  std::snprintf(buf, sizeof buf, "%.1e", report.tolerance);
  os << buf << ")\n";
  return os.str();
}

int execute_validate(const RunConfig& config, std::ostream& out) {
  BuiltScenario scenario = build_scenario(config.params, config.steps);
  const auto report = validate_walk(scenario.spec, config.tol);
  out << validation_summary(scenario, report);
  const auto check = check_state(scenario.initial);
  const bool state_ok = check.trace_error <= config.tol && check.hermitian_error <= config.tol &&
                        check.min_eigenvalue >= -config.tol;
  out << "initial state: trace error " << check.trace_error << ", min eigenvalue "
      << check.min_eigenvalue << (state_ok ? " (ok)" : " (invalid)") << "\n";
  return report.accepted() && state_ok ? kOk : kInvalid;
}

int execute(const RunConfig& config, std::ostream& data, std::ostream& log) {
  BuiltScenario scenario = build_scenario(config.params, config.steps);
  const auto report = validate_walk(scenario.spec, config.tol);
  if (!report.accepted()) {
    log << validation_summary(scenario, report);
    return kInvalid;
  }

  if (config.mode == Mode::steady) {
    const auto result = find_steady_state(scenario.spec, scenario.initial, config.tol, config.max_iter);
    if (!write_output(config.output, steady_report(scenario, result, config.tol), data, log)) {
      return kIoError;
    }
    if (!result.converged) {
      log << "no steady state within " << config.max_iter << " iterations (residual "
          << result.residual << ")\n";
      return kNotConverged;
    }
    log << "steady state after " << result.iterations << " iterations";
    if (scenario.readout_node) {
      log << "; node " << *scenario.readout_node << " read-out "
          << format_probability(readout_probability(scenario.spec, result.state, *scenario.readout_node));
    }
    log << "\n";
    return kOk;
  }

  const auto traj = run(scenario.spec, scenario.initial, config.steps, config.record_every);
  const auto occ = occupations(traj);
  if (!write_output(config.output, emit(occ, config.format), data, log)) return kIoError;

  const auto& last = traj.back();
  log << "step " << last.step << ": total probability "
      << format_probability(last.state.total_trace()) << "\n";
  if (scenario.readout_node) {
    const auto& node = *scenario.readout_node;
    log << "node " << node << " occupation "
        << format_probability(readout_probability(scenario.spec, last.state, node)) << " at step "
        << last.step << "\n";
    for (const auto& [step, dist] : occ) {
      if (dist.at(node) >= 0.999) {
        log << "node " << node << " occupation >= 0.999 first recorded at step " << step << "\n";
        break;
      }
    }
  }
  return kOk;
}

std::string scenario_listing() {
  std::ostringstream os;
  for (const auto& info : scenario_catalog()) {
    os << info.name << "  " << info.summary << "\n";
    for (const auto& param : info.parameters) os << "    " << param << "\n";
  }
  return os.str();
}

}  // namespace oqw::cli
