#pragma once

// Open quantum walks on a finite directed graph.
//
// Each edge j -> i carries an operator B (source j, target i) on the
// d-dimensional internal space. A walker state is block diagonal in position,
// rho = sum_i rho_i (x) |i><i|, and one step maps
//
//   rho_i' = sum_j B(j->i) rho_j B(j->i)^dagger.
//
// The map is trace preserving iff sum_i B(j->i)^dagger B(j->i) = I for every
// source j; validate_walk() reports the per-node residual of that relation.

#include "oqw/complex_linalg.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oqw {

struct Transition {
  std::string from;
  std::string to;
  ComplexMatrix op;
};

class WalkSpec {
 public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    ComplexMatrix op;
  };

  /// Throws std::invalid_argument on duplicate or unknown node labels,
  /// duplicate edges, and operators whose dimension differs from `dim`.
  WalkSpec(std::vector<std::string> nodes, std::size_t dim, std::vector<Transition> transitions);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  /// Edges sorted by (source index, target index).
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const std::size_t> outgoing(std::size_t source) const;

  std::optional<std::size_t> index_of(std::string_view label) const;
  /// Throws std::out_of_range for unknown labels.
  std::size_t require_index(std::string_view label) const;

 private:
  std::vector<std::string> nodes_;
  std::size_t dim_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> outgoing_offsets_;  // CSR offsets into edges_
  std::vector<std::size_t> edge_ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct NodeResidual {
  std::string node;
  double residual;  // max-entry norm of sum_i B^dagger B - I
};

struct ValidationReport {
  std::vector<NodeResidual> residuals;
  double tolerance;

  bool accepted() const noexcept;
  double max_residual() const noexcept;
};

ValidationReport validate_walk(const WalkSpec& spec, double tol = kDefaultTol);

/// Position-diagonal state: an ordered association node -> block. Blocks are
/// unnormalized; their traces are the occupation probabilities.
class WalkerState {
 public:
  using Entry = std::pair<std::string, ComplexMatrix>;

  WalkerState() = default;

  static WalkerState localized(std::string node, ComplexMatrix rho);

  /// Inserts or replaces the block for `node`.
  void set(std::string node, ComplexMatrix block);
  const ComplexMatrix* find(std::string_view node) const;

  const std::vector<Entry>& blocks() const noexcept { return blocks_; }
  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }

  double total_trace() const;

 private:
  std::vector<Entry> blocks_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Blocks with trace below this are dropped after every step.
inline constexpr double kPruneTrace = 1e-15;

struct StateCheck {
  double trace_error;       // |sum_i Tr rho_i - 1|
  double hermitian_error;   // max-entry |rho - rho^dagger| over blocks
  double min_eigenvalue;    // smallest eigenvalue over blocks
};

StateCheck check_state(const WalkerState& state);

WalkerState step(const WalkSpec& spec, const WalkerState& state);

struct Snapshot {
  std::size_t step;
  WalkerState state;
};
using Trajectory = std::vector<Snapshot>;

/// Snapshot 0 is `initial`; snapshot k is the state after k * record_every
/// steps, up to n_steps.
Trajectory run(const WalkSpec& spec, const WalkerState& initial, std::size_t n_steps,
               std::size_t record_every = 1);

/// Density matrix on the full node (x) internal space. Index layout is
/// node_index * dim + internal_index.
class FullDensity {
 public:
  FullDensity(ComplexMatrix matrix, std::size_t node_count, std::size_t internal_dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t internal_dim() const noexcept { return internal_dim_; }

 private:
  ComplexMatrix matrix_;
  std::size_t node_count_;
  std::size_t internal_dim_;
};

FullDensity to_full_density(const WalkSpec& spec, const WalkerState& state);

struct BlockExtraction {
  WalkerState state;
  double off_diagonal_magnitude;  // largest entry outside the diagonal position blocks
};

BlockExtraction extract_blocks(const WalkSpec& spec, const FullDensity& full);

/// Dense reference map: sum over edges of M rho M^dagger with
/// M = B(j->i) (x) |i><j| built explicitly on the full space.
FullDensity full_map_step(const WalkSpec& spec, const FullDensity& full);

struct SteadyStateResult {
  WalkerState state;
  std::size_t iterations;
  bool converged;
  double residual;  // sum over nodes of trace distance between the last two iterates
};

/// Iterates step() until the summed per-node trace distance between
/// consecutive iterates is <= tol. Non-convergence within max_iter is
/// reported through `converged`, not thrown.
SteadyStateResult find_steady_state(const WalkSpec& spec, const WalkerState& initial,
                                    double tol = kDefaultTol, std::size_t max_iter = 1'000'000);

}  // namespace oqw
