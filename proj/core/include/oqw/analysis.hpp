#pragma once

// Observables and closed-form predictions for walker states.

#include "oqw/walk.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oqw {

/// node -> Tr rho_node, in the state's block order.
class OccupationDistribution {
 public:
  using Entry = std::pair<std::string, double>;

  OccupationDistribution() = default;
  explicit OccupationDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// 0 for nodes absent from the distribution.
  double at(std::string_view node) const;
  double total() const;

 private:
  std::vector<Entry> entries_;
};

OccupationDistribution occupation(const WalkerState& state);

/// node -> <k|rho_node|k>: the weight carried by the internal direction |k>.
OccupationDistribution sector_occupation(const WalkerState& state, const Ket& k);

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of the position, treating labels as integers. The
/// distribution does not need to be normalized (sub-distributions such as a
/// single sector are normalized by their own total). Throws
/// std::invalid_argument for non-integer labels or zero total weight.
Moments position_moments(const OccupationDistribution& dist);

/// Tr rho_node; throws std::out_of_range if the walk has no such node.
double readout_probability(const WalkSpec& spec, const WalkerState& state, std::string_view node);

/// <k|rho_node|k> / Tr rho_node. nullopt when the block is empty
/// (trace < 1e-14); throws for unknown nodes or mismatched dimensions.
std::optional<double> node_fidelity(const WalkSpec& spec, const WalkerState& state,
                                    std::string_view node, const Ket& target);

/// Stationary weight of the last register of a reflecting chain that moves
/// forward with probability omega: r^T / sum_t r^t, r = omega / (1 - omega).
double dqc_predicted_readout(double omega, int registers);

/// <i, psi_j | rho(0) | i, psi_j> for node i and preparation basis psi_j
/// (psi_1 = target, psi_2 = orthogonal).
struct StatePrepElements {
  double node1_target;      // rho^(1)_11
  double node1_orthogonal;  // rho^(1)_22
  double node2_target;      // rho^(2)_11
  double node2_orthogonal;  // rho^(2)_22
};

StatePrepElements state_prep_elements(const WalkerState& state, const Ket& target,
                                      const Ket& orthogonal);

/// Estimated probability of finding the prepared state after 2m steps:
/// 1 - rho^(1)_22 / 4^m - (rho^(1)_11 + rho^(2)_11) min(1/4, q)^m.
double state_prep_predicted_pss(const StatePrepElements& elements, double q, int m);

}  // namespace oqw
