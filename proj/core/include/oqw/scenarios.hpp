#pragma once

// Builders for the standard open-quantum-walk constructions. Every builder
// returns a walk that satisfies the completeness relation; builders throw
// std::invalid_argument when their parameters cannot produce one.

#include "oqw/walk.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace oqw {

struct Scenario {
  WalkSpec spec;
  WalkerState initial;
};

/// Walk on the integer window -window..window. Right hop
/// B = sin(theta)|-><-| + |+><+|, left hop C = cos(theta)|-><-|. The window is
/// closed into a ring so completeness holds at the end nodes; a run of at most
/// `window` steps from site 0 never reaches the wrap-around edges.
/// Initial state I/2 at site 0.
Scenario build_line_walk(double theta, int window);

/// Two-node gate walk on nodes "1", "2":
///   1 -> 2 : sqrt(p) U      1 -> 1 : sqrt(q) I
///   2 -> 1 : sqrt(q) U^dag  2 -> 2 : sqrt(p) I
/// Its fixed point from |psi><psi| at node 1 is
/// q|psi><psi| (x) |1><1| + p U|psi><psi|U^dag (x) |2><2|.
WalkSpec build_gate_walk(const ComplexMatrix& unitary, double p);

struct StatePrepKets {
  Ket target;      // (cos a, sin a e^{-ib})
  Ket orthogonal;  // (-sin a, cos a e^{-ib})
};
StatePrepKets state_prep_kets(double alpha, double beta);

/// Two-node dissipative preparation of state_prep_kets(alpha, beta).target at
/// node "2". Node 1 splits evenly (I/sqrt2 each way); node 2 returns the
/// orthogonal component with sqrt(p)|t><o| and keeps sqrt(q)|o><o| + |t><t|.
/// Requires 0 < p < 1.
WalkSpec build_state_prep(double alpha, double beta, double p);

namespace bell {
inline constexpr const char* kUpLeft = "U,L";
inline constexpr const char* kUpRight = "U,R";
inline constexpr const char* kDownLeft = "D,L";
inline constexpr const char* kDownRight = "D,R";

Ket psi_minus();
Ket psi_plus();
Ket phi_minus();
Ket phi_plus();

/// Bell state collected at each grid node in the steady state.
Ket target_for(std::string_view node);
std::vector<std::string> nodes();
}  // namespace bell

/// 2x2 grid with internal dimension 4. The left/right coordinate sorts Z1Z2
/// parity (odd stays at L, even at R); the up/down coordinate sorts X1X2
/// parity (odd at U, even at D).
WalkSpec build_bell_grid();

/// Chain "1".."N". Nodes 1..N-1 hop forward with sqrt(1-p)|o><o| + |t><t| and
/// stay with sqrt(p)|t><o|; node N absorbs. Initial state I/2 at node 1.
Scenario build_transport_chain(int n_nodes, double p, const Ket& target, const Ket& orthogonal);

/// Time-register chain "0".."T" for discrete dissipative computation:
/// forward sqrt(w) U_{t+1}, backward sqrt(1-w) U_t^dag, with stays sqrt(1-w) I
/// at register 0 and sqrt(w) I at register T. Initial |psi0><psi0| at "0".
Scenario build_dqc_chain(std::span<const ComplexMatrix> unitaries, double omega,
                         const std::optional<Ket>& psi0 = std::nullopt);

// ---------------------------------------------------------------------------
// Declarative scenario parameters, as consumed by the CLI.

struct ScenarioParams {
  std::string name;
  std::optional<double> theta;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> omega;
  std::optional<double> lambda;
  std::optional<int> n_nodes;   // transport N
  std::optional<int> registers; // DQC T
  std::optional<int> window;    // line walk
  std::vector<ComplexMatrix> unitaries;  // gate U, or DQC U_1..U_T
  std::optional<Ket> psi0;
  std::optional<Ket> target;      // transport psi1
  std::optional<Ket> orthogonal;  // transport psi2
  std::string start;              // initial-node selector
  std::string initial;            // initial-state selector ("mixed", "target", ...)
  std::optional<WalkerState> initial_state;  // explicit initial state
  std::optional<WalkSpec> custom;            // "custom" scenario
  unsigned long long seed = 1;
};

struct NodeTarget {
  std::string node;
  Ket ket;
};

struct BuiltScenario {
  std::string name;
  WalkSpec spec;
  WalkerState initial;
  std::optional<std::string> readout_node;
  std::vector<NodeTarget> targets;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> parameters;
};

const std::vector<ScenarioInfo>& scenario_catalog();
std::vector<std::string> scenario_names();

/// Checks ranges (p, q, omega, lambda in [0, 1], p + q = 1, omega + lambda = 1,
/// N >= 2, T >= 1) and builds the walk. Throws std::invalid_argument.
BuiltScenario build_scenario(const ScenarioParams& params, std::size_t planned_steps = 0);

}  // namespace oqw
