#include "oqw/scenarios.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace oqw {

namespace {

constexpr double kParamTol = 1e-12;

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                std::to_string(v));
  }
}

void require_validates(const WalkSpec& spec, const char* who) {
  const auto report = validate_walk(spec, kDefaultTol);
  if (!report.accepted()) {
    throw std::invalid_argument(std::string(who) +
                                ": completeness relation violated, residual " +
                                std::to_string(report.max_residual()));
  }
}

ComplexMatrix scaled(ComplexMatrix m, double s) { return m *= s; }

// Resolves a complementary pair (p, q) with p + q = 1.
double complementary(const std::optional<double>& a, const std::optional<double>& b,
                     double fallback, const char* a_name, const char* b_name) {
  if (a && b) {
    require_probability(*a, a_name);
    require_probability(*b, b_name);
    if (std::abs(*a + *b - 1.0) > kParamTol) {
      throw std::invalid_argument(std::string(a_name) + " + " + b_name + " must equal 1");
    }
    return *a;
  }
  if (a) {
    require_probability(*a, a_name);
    return *a;
  }
  if (b) {
    require_probability(*b, b_name);
    return 1.0 - *b;
  }
  return fallback;
}

}  // namespace

// ---------------------------------------------------------------------------
// Line walk

Scenario build_line_walk(double theta, int window) {
  if (window < 1) throw std::invalid_argument("build_line_walk: window must be >= 1");
  const auto minus = kets::minus().projector();
  const auto plus = kets::plus().projector();
  const ComplexMatrix right = std::sin(theta) * minus + plus;
  const ComplexMatrix left = std::cos(theta) * minus;

  std::vector<std::string> nodes;
  for (int site = -window; site <= window; ++site) nodes.push_back(std::to_string(site));

  const auto wrap = [window](int site) {
    if (site > window) return -window;
    if (site < -window) return window;
    return site;
  };
  std::vector<Transition> transitions;
  for (int site = -window; site <= window; ++site) {
    transitions.push_back({std::to_string(site), std::to_string(wrap(site + 1)), right});
    transitions.push_back({std::to_string(site), std::to_string(wrap(site - 1)), left});
  }
  WalkSpec spec(std::move(nodes), 2, std::move(transitions));
  require_validates(spec, "build_line_walk");
  auto initial = WalkerState::localized("0", 0.5 * ComplexMatrix::identity(2));
  return {std::move(spec), std::move(initial)};
}

// ---------------------------------------------------------------------------
// Gate walk

WalkSpec build_gate_walk(const ComplexMatrix& unitary, double p) {
  require_probability(p, "p");
  if (!is_unitary(unitary)) throw std::invalid_argument("build_gate_walk: U is not unitary");
  const double q = 1.0 - p;
  const auto id = ComplexMatrix::identity(unitary.dim());
  WalkSpec spec({"1", "2"}, unitary.dim(),
                {
                    {"1", "2", scaled(unitary, std::sqrt(p))},
                    {"1", "1", scaled(id, std::sqrt(q))},
                    {"2", "1", scaled(adjoint(unitary), std::sqrt(q))},
                    {"2", "2", scaled(id, std::sqrt(p))},
                });
  require_validates(spec, "build_gate_walk");
  return spec;
}

// ---------------------------------------------------------------------------
// State preparation

StatePrepKets state_prep_kets(double alpha, double beta) {
  const Complex phase = std::polar(1.0, -beta);
  return {Ket{std::cos(alpha), std::sin(alpha) * phase},
          Ket{-std::sin(alpha), std::cos(alpha) * phase}};
}

WalkSpec build_state_prep(double alpha, double beta, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("build_state_prep: p must lie in (0, 1), got " + std::to_string(p));
  }
  const double q = 1.0 - p;
  const auto [target, orth] = state_prep_kets(alpha, beta);
  const auto half = scaled(ComplexMatrix::identity(2), 1.0 / std::sqrt(2.0));
  WalkSpec spec({"1", "2"}, 2,
                {
                    {"1", "2", half},
                    {"1", "1", half},
                    {"2", "1", scaled(outer(target, orth), std::sqrt(p))},
                    {"2", "2", scaled(orth.projector(), std::sqrt(q)) + target.projector()},
                });
  require_validates(spec, "build_state_prep");
  return spec;
}

// ---------------------------------------------------------------------------
// Bell grid

namespace bell {

namespace {
Ket two_qubit(Complex a00, Complex a01, Complex a10, Complex a11) {
  return Ket::normalized({a00, a01, a10, a11});
}
}  // namespace

Ket psi_minus() { return two_qubit(0.0, 1.0, -1.0, 0.0); }
Ket psi_plus() { return two_qubit(0.0, 1.0, 1.0, 0.0); }
Ket phi_minus() { return two_qubit(1.0, 0.0, 0.0, -1.0); }
Ket phi_plus() { return two_qubit(1.0, 0.0, 0.0, 1.0); }

Ket target_for(std::string_view node) {
  if (node == kUpLeft) return psi_minus();
  if (node == kUpRight) return phi_minus();
  if (node == kDownLeft) return psi_plus();
  if (node == kDownRight) return phi_plus();
  throw std::out_of_range("bell::target_for: unknown node '" + std::string(node) + "'");
}

std::vector<std::string> nodes() { return {kUpLeft, kUpRight, kDownLeft, kDownRight}; }

}  // namespace bell

WalkSpec build_bell_grid() {
  const auto id = ComplexMatrix::identity(4);
  const auto zz = kron(gates::pauli_z(), gates::pauli_z());
  const auto xx = kron(gates::pauli_x(), gates::pauli_x());
  const ComplexMatrix z_odd = 0.5 * (id - zz);
  const ComplexMatrix z_even = 0.5 * (id + zz);
  const ComplexMatrix x_odd = 0.5 * (id - xx);
  const ComplexMatrix x_even = 0.5 * (id + xx);

  // Sub-walk operators indexed [from][to]; 0 = U/L, 1 = D/R.
  const ComplexMatrix* up_down[2][2] = {{&x_odd, &x_even}, {&x_odd, &x_even}};
  const ComplexMatrix* left_right[2][2] = {{&z_odd, &z_even}, {&z_odd, &z_even}};
  const char* labels[2][2] = {{bell::kUpLeft, bell::kUpRight}, {bell::kDownLeft, bell::kDownRight}};

  std::vector<Transition> transitions;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < 2; ++b2)
          transitions.push_back(
              {labels[a][b], labels[a2][b2], (*up_down[a][a2]) * (*left_right[b][b2])});

  WalkSpec spec(bell::nodes(), 4, std::move(transitions));
  require_validates(spec, "build_bell_grid");
  return spec;
}

// ---------------------------------------------------------------------------
// Transport chain

Scenario build_transport_chain(int n_nodes, double p, const Ket& target, const Ket& orthogonal) {
  if (n_nodes < 2) throw std::invalid_argument("build_transport_chain: N must be >= 2");
  require_probability(p, "p");
  if (target.dim() != 2 || orthogonal.dim() != 2) {
    throw std::invalid_argument("build_transport_chain: kets must be single-qubit");
  }
  if (std::abs(inner(target, orthogonal)) > kDefaultTol) {
    throw std::invalid_argument("build_transport_chain: kets are not orthogonal");
  }
  const ComplexMatrix forward =
      scaled(orthogonal.projector(), std::sqrt(1.0 - p)) + target.projector();
  const ComplexMatrix stay = scaled(outer(target, orthogonal), std::sqrt(p));

  std::vector<std::string> nodes;
  for (int k = 1; k <= n_nodes; ++k) nodes.push_back(std::to_string(k));
  std::vector<Transition> transitions;
  for (int k = 1; k < n_nodes; ++k) {
    transitions.push_back({std::to_string(k), std::to_string(k + 1), forward});
    transitions.push_back({std::to_string(k), std::to_string(k), stay});
  }
  transitions.push_back(
      {std::to_string(n_nodes), std::to_string(n_nodes), ComplexMatrix::identity(2)});

  WalkSpec spec(std::move(nodes), 2, std::move(transitions));
  require_validates(spec, "build_transport_chain");
  auto initial = WalkerState::localized("1", 0.5 * ComplexMatrix::identity(2));
  return {std::move(spec), std::move(initial)};
}

// ---------------------------------------------------------------------------
// Dissipative computation chain

Scenario build_dqc_chain(std::span<const ComplexMatrix> unitaries, double omega,
                         const std::optional<Ket>& psi0) {
  if (unitaries.empty()) throw std::invalid_argument("build_dqc_chain: need at least one unitary");
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("build_dqc_chain: omega must lie in (0, 1)");
  }
  const std::size_t d = unitaries.front().dim();
  for (const auto& u : unitaries) {
    if (u.dim() != d) throw DimensionMismatch("build_dqc_chain: unitaries differ in dimension");
    if (!is_unitary(u)) throw std::invalid_argument("build_dqc_chain: non-unitary entry");
  }
  const Ket start = psi0.value_or(Ket::basis(d, 0));
  if (start.dim() != d) throw DimensionMismatch("build_dqc_chain: psi0 has wrong dimension");

  const double lambda = 1.0 - omega;
  const auto id = ComplexMatrix::identity(d);
  const auto last = static_cast<int>(unitaries.size());

  std::vector<std::string> nodes;
  for (int t = 0; t <= last; ++t) nodes.push_back(std::to_string(t));
  std::vector<Transition> transitions;
  for (int t = 0; t <= last; ++t) {
    const auto here = std::to_string(t);
    if (t < last) {
      transitions.push_back(
          {here, std::to_string(t + 1), scaled(unitaries[static_cast<std::size_t>(t)], std::sqrt(omega))});
    } else {
      transitions.push_back({here, here, scaled(id, std::sqrt(omega))});
    }
    if (t > 0) {
      transitions.push_back({here, std::to_string(t - 1),
                             scaled(adjoint(unitaries[static_cast<std::size_t>(t - 1)]),
                                    std::sqrt(lambda))});
    } else {
      transitions.push_back({here, here, scaled(id, std::sqrt(lambda))});
    }
  }
  WalkSpec spec(std::move(nodes), d, std::move(transitions));
  require_validates(spec, "build_dqc_chain");
  auto initial = WalkerState::localized("0", start.projector());
  return {std::move(spec), std::move(initial)};
}

// ---------------------------------------------------------------------------
// Catalog and dispatch

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog = {
      {"line", "walk on an integer window with the |+>/|-> sector operators",
       {"theta | theta_cos (default cos theta = 0.8)", "window (default: steps)"}},
      {"gate", "two-node gate walk realizing U at node 2 with probability p",
       {"gate (I,X,Y,Z,H,S,T,CNOT; default X) | unitary", "p (default 0.5) | q", "psi0"}},
      {"state_prep", "two-node dissipative preparation of (cos a, sin a e^{-ib})",
       {"alpha", "beta", "p (default 0.5) | q", "initial (mixed|psi0)", "start (1|2)"}},
      {"bell", "two walkers on a 2x2 grid sorting Z1Z2 and X1X2 parities",
       {"start (U,L|U,R|D,L|D,R)", "psi0 (default: unpolarized)"}},
      {"transport", "chain with an absorbing last node",
       {"N", "p (default 0.64) | sqrt_p", "psi1/psi2 (default |+>, |->)", "initial (mixed|target)"}},
      {"dqc", "time-register chain for dissipative computation",
       {"T + seed (random unitaries) | gates | unitaries", "omega (default 0.5) | lambda", "psi0"}},
      {"custom", "explicit walk and initial state", {"walk", "initial_state"}},
  };
  return catalog;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& info : scenario_catalog()) names.push_back(info.name);
  return names;
}

BuiltScenario build_scenario(const ScenarioParams& params, std::size_t planned_steps) {
  const auto& name = params.name;
  const auto localized_initial = [&](const std::string& node, std::size_t dim) {
    if (params.initial_state) return *params.initial_state;
    if (params.psi0) {
      if (params.psi0->dim() != dim) throw DimensionMismatch("psi0 has the wrong dimension");
      return WalkerState::localized(node, params.psi0->projector());
    }
    return WalkerState::localized(node, ComplexMatrix::identity(dim) * (1.0 / double(dim)));
  };

  if (name == "line") {
    const double theta = params.theta.value_or(std::acos(0.8));
    const int window = params.window.value_or(static_cast<int>(std::max<std::size_t>(planned_steps, 1)));
    if (params.window && static_cast<std::size_t>(*params.window) < planned_steps) {
      throw std::invalid_argument("line: window must be >= the number of steps");
    }
    auto sc = build_line_walk(theta, window);
    BuiltScenario out{name, std::move(sc.spec), std::move(sc.initial), std::nullopt, {}};
    if (params.initial_state) out.initial = *params.initial_state;
    return out;
  }

  if (name == "gate") {
    if (params.unitaries.size() > 1) throw std::invalid_argument("gate: expected one unitary");
    const ComplexMatrix u = params.unitaries.empty() ? gates::pauli_x() : params.unitaries.front();
    const double p = complementary(params.p, params.q, 0.5, "p", "q");
    auto spec = build_gate_walk(u, p);
    const Ket psi0 = params.psi0.value_or(Ket::basis(u.dim(), 0));
    if (psi0.dim() != u.dim()) throw DimensionMismatch("gate: psi0 has the wrong dimension");
    WalkerState initial = params.initial_state ? *params.initial_state
                                               : WalkerState::localized("1", psi0.projector());
    return {name, std::move(spec), std::move(initial), "2", {{"1", psi0}, {"2", apply(u, psi0)}}};
  }

  if (name == "state_prep") {
    const double alpha = params.alpha.value_or(0.0);
    const double beta = params.beta.value_or(0.0);
    const double p = complementary(params.p, params.q, 0.5, "p", "q");
    auto spec = build_state_prep(alpha, beta, p);
    const std::string start = params.start.empty() ? "1" : params.start;
    spec.require_index(start);
    auto initial = localized_initial(start, 2);
    return {name, std::move(spec), std::move(initial), "2",
            {{"2", state_prep_kets(alpha, beta).target}}};
  }

  if (name == "bell") {
    auto spec = build_bell_grid();
    const std::string start = params.start.empty() ? bell::kUpLeft : params.start;
    spec.require_index(start);
    auto initial = localized_initial(start, 4);
    std::vector<NodeTarget> targets;
    for (const auto& node : bell::nodes()) targets.push_back({node, bell::target_for(node)});
    return {name, std::move(spec), std::move(initial), std::nullopt, std::move(targets)};
  }

  if (name == "transport") {
    if (!params.n_nodes) throw std::invalid_argument("transport: N is required");
    if (*params.n_nodes < 2) throw std::invalid_argument("transport: N must be >= 2");
    const double p = complementary(params.p, params.q, 16.0 / 25.0, "p", "q");
    const Ket target = params.target.value_or(kets::plus());
    const Ket orth = params.orthogonal.value_or(kets::minus());
    auto sc = build_transport_chain(*params.n_nodes, p, target, orth);
    WalkerState initial = std::move(sc.initial);
    if (params.initial_state) {
      initial = *params.initial_state;
    } else if (params.initial == "target") {
      initial = WalkerState::localized("1", target.projector());
    } else if (!params.initial.empty() && params.initial != "mixed") {
      throw std::invalid_argument("transport: initial must be 'mixed' or 'target'");
    }
    return {name, std::move(sc.spec), std::move(initial), std::to_string(*params.n_nodes), {}};
  }

  if (name == "dqc") {
    const double omega = complementary(params.omega, params.lambda, 0.5, "omega", "lambda");
    std::vector<ComplexMatrix> unitaries = params.unitaries;
    if (unitaries.empty()) {
      if (!params.registers) throw std::invalid_argument("dqc: give T or a list of unitaries");
      if (*params.registers < 1) throw std::invalid_argument("dqc: T must be >= 1");
      std::mt19937_64 rng(params.seed);
      for (int t = 0; t < *params.registers; ++t) unitaries.push_back(random_unitary(2, rng));
    } else if (params.registers &&
               static_cast<std::size_t>(*params.registers) != unitaries.size()) {
      throw std::invalid_argument("dqc: T does not match the number of unitaries");
    }
    const std::size_t d = unitaries.front().dim();
    const Ket psi0 = params.psi0.value_or(Ket::basis(d, 0));
    auto sc = build_dqc_chain(unitaries, omega, psi0);
    Ket final_state = psi0;
    for (const auto& u : unitaries) final_state = apply(u, final_state);
    const auto last = std::to_string(unitaries.size());
    WalkerState initial = params.initial_state ? *params.initial_state : std::move(sc.initial);
    return {name, std::move(sc.spec), std::move(initial), last, {{last, final_state}}};
  }

  if (name == "custom") {
    if (!params.custom || !params.initial_state) {
      throw std::invalid_argument("custom: both 'walk' and 'initial_state' are required");
    }
    return {name, *params.custom, *params.initial_state, std::nullopt, {}};
  }

  std::string valid;
  for (const auto& n : scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown scenario '" + name + "'; valid scenarios: " + valid);
}

}  // namespace oqw
