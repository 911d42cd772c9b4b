#include "oqw/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace oqw {

double OccupationDistribution::at(std::string_view node) const {
  for (const auto& [label, prob] : entries_)
    if (label == node) return prob;
  return 0.0;
}

double OccupationDistribution::total() const {
  double t = 0.0;
  for (const auto& e : entries_) t += e.second;
  return t;
}

OccupationDistribution occupation(const WalkerState& state) {
  std::vector<OccupationDistribution::Entry> entries;
  entries.reserve(state.size());
  for (const auto& [node, block] : state.blocks()) entries.emplace_back(node, block.trace().real());
  return OccupationDistribution(std::move(entries));
}

OccupationDistribution sector_occupation(const WalkerState& state, const Ket& k) {
  std::vector<OccupationDistribution::Entry> entries;
  entries.reserve(state.size());
  for (const auto& [node, block] : state.blocks()) entries.emplace_back(node, pure_fidelity(block, k));
  return OccupationDistribution(std::move(entries));
}

Moments position_moments(const OccupationDistribution& dist) {
  std::vector<std::pair<long long, double>> points;
  points.reserve(dist.size());
  for (const auto& [label, prob] : dist.entries()) {
    long long site = 0;
    const auto* first = label.data();
    const auto* last = label.data() + label.size();
    const auto [ptr, ec] = std::from_chars(first, last, site);
    if (ec != std::errc{} || ptr != last) {
      throw std::invalid_argument("position_moments: node label '" + label + "' is not an integer");
    }
    points.emplace_back(site, prob);
  }
  double total = 0.0;
  for (const auto& pt : points) total += pt.second;
  if (!(total > 0.0)) throw std::invalid_argument("position_moments: distribution has no weight");

  double mean = 0.0;
  for (const auto& [site, prob] : points) mean += static_cast<double>(site) * prob;
  mean /= total;
  double var = 0.0;
  for (const auto& [site, prob] : points) {
    const double dx = static_cast<double>(site) - mean;
    var += dx * dx * prob;
  }
  return {mean, var / total};
}

double readout_probability(const WalkSpec& spec, const WalkerState& state, std::string_view node) {
  spec.require_index(node);
  const ComplexMatrix* block = state.find(node);
  return block ? block->trace().real() : 0.0;
}

std::optional<double> node_fidelity(const WalkSpec& spec, const WalkerState& state,
                                    std::string_view node, const Ket& target) {
  spec.require_index(node);
  if (target.dim() != spec.dim()) throw DimensionMismatch("node_fidelity: target has wrong dimension");
  const ComplexMatrix* block = state.find(node);
  if (!block) return std::nullopt;
  const double weight = block->trace().real();
  if (weight < 1e-14) return std::nullopt;
  return pure_fidelity(*block, target) / weight;
}

double dqc_predicted_readout(double omega, int registers) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw std::invalid_argument("dqc_predicted_readout: omega must lie in (0, 1)");
  }
  if (registers < 1) throw std::invalid_argument("dqc_predicted_readout: T must be >= 1");
  // Normalize by the largest weight so large T does not overflow.
  const double r = omega / (1.0 - omega);
  double sum = 0.0;
  if (r >= 1.0) {
    const double inv = 1.0 / r;
    double w = 1.0;
    for (int t = 0; t <= registers; ++t, w *= inv) sum += w;  // weights r^(t-T)
    return 1.0 / sum;
  }
  double w = 1.0;
  double last = 1.0;
  for (int t = 0; t <= registers; ++t, w *= r) {
    sum += w;
    last = w;
  }
  return last / sum;
}

StatePrepElements state_prep_elements(const WalkerState& state, const Ket& target,
                                      const Ket& orthogonal) {
  const auto element = [&](const char* node, const Ket& k) {
    const ComplexMatrix* block = state.find(node);
    return block ? pure_fidelity(*block, k) : 0.0;
  };
  return {element("1", target), element("1", orthogonal), element("2", target),
          element("2", orthogonal)};
}

double state_prep_predicted_pss(const StatePrepElements& e, double q, int m) {
  if (m < 1) throw std::invalid_argument("state_prep_predicted_pss: m must be >= 1");
  const double quarter_m = std::pow(0.25, m);
  const double slow = std::pow(std::min(0.25, q), m);
  return 1.0 - e.node1_orthogonal * quarter_m - (e.node1_target + e.node2_target) * slow;
}

}  // namespace oqw
