#include "oqw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oqw {

namespace {

// acc += op * rho * op^dagger
void accumulate_sandwich(ComplexMatrix& acc, const ComplexMatrix& op, const ComplexMatrix& rho) {
  const std::size_t n = rho.dim();
  const ComplexMatrix left = op * rho;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t m = 0; m < n; ++m) s += left(r, m) * std::conj(op(c, m));
      acc(r, c) += s;
    }
}

ComplexMatrix transition_operator(const WalkSpec& spec, const WalkSpec::Edge& edge) {
  const std::size_t d = spec.dim();
  ComplexMatrix m(d * spec.node_count());
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(edge.to * d + r, edge.from * d + c) = edge.op(r, c);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// WalkSpec

WalkSpec::WalkSpec(std::vector<std::string> nodes, std::size_t dim,
                   std::vector<Transition> transitions)
    : nodes_(std::move(nodes)), dim_(dim) {
  if (nodes_.empty()) throw std::invalid_argument("WalkSpec: node set is empty");
  if (dim_ == 0) throw std::invalid_argument("WalkSpec: internal dimension must be positive");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.emplace(nodes_[i], i).second)
      throw std::invalid_argument("WalkSpec: duplicate node '" + nodes_[i] + "'");
  }

  edges_.reserve(transitions.size());
  for (auto& t : transitions) {
    const auto from = index_of(t.from);
    const auto to = index_of(t.to);
    if (!from || !to) {
      throw std::invalid_argument("WalkSpec: transition " + t.from + " -> " + t.to +
                                  " references an unknown node");
    }
    if (t.op.dim() != dim_) {
      throw DimensionMismatch("WalkSpec: transition " + t.from + " -> " + t.to + " has dimension " +
                              std::to_string(t.op.dim()) + ", expected " + std::to_string(dim_));
    }
    edges_.push_back(Edge{*from, *to, std::move(t.op)});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].from == edges_[k - 1].from && edges_[k].to == edges_[k - 1].to) {
      throw std::invalid_argument("WalkSpec: duplicate transition " + nodes_[edges_[k].from] +
                                  " -> " + nodes_[edges_[k].to]);
    }
  }

  outgoing_offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& e : edges_) ++outgoing_offsets_[e.from + 1];
  for (std::size_t i = 0; i < nodes_.size(); ++i) outgoing_offsets_[i + 1] += outgoing_offsets_[i];
  edge_ids_.resize(edges_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) edge_ids_[k] = k;
}

std::span<const std::size_t> WalkSpec::outgoing(std::size_t source) const {
  if (source >= nodes_.size()) throw std::out_of_range("WalkSpec::outgoing: bad node index");
  const auto begin = outgoing_offsets_[source];
  const auto end = outgoing_offsets_[source + 1];
  return std::span<const std::size_t>(edge_ids_).subspan(begin, end - begin);
}

std::optional<std::size_t> WalkSpec::index_of(std::string_view label) const {
  const auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WalkSpec::require_index(std::string_view label) const {
  const auto idx = index_of(label);
  if (!idx) throw std::out_of_range("unknown node '" + std::string(label) + "'");
  return *idx;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::accepted() const noexcept { return max_residual() <= tolerance; }

double ValidationReport::max_residual() const noexcept {
  double best = 0.0;
  for (const auto& r : residuals) best = std::max(best, r.residual);
  return best;
}

ValidationReport validate_walk(const WalkSpec& spec, double tol) {
  ValidationReport report{{}, tol};
  report.residuals.reserve(spec.node_count());
  const auto identity = ComplexMatrix::identity(spec.dim());
  for (std::size_t j = 0; j < spec.node_count(); ++j) {
    ComplexMatrix sum(spec.dim());
    for (const auto k : spec.outgoing(j)) {
      const auto& op = spec.edges()[k].op;
      sum += adjoint(op) * op;
    }
    report.residuals.push_back({spec.nodes()[j], max_abs_diff(sum, identity)});
  }
  return report;
}

// ---------------------------------------------------------------------------
// WalkerState

WalkerState WalkerState::localized(std::string node, ComplexMatrix rho) {
  WalkerState s;
  s.set(std::move(node), std::move(rho));
  return s;
}

void WalkerState::set(std::string node, ComplexMatrix block) {
  if (const auto it = index_.find(node); it != index_.end()) {
    blocks_[it->second].second = std::move(block);
    return;
  }
  index_.emplace(node, blocks_.size());
  blocks_.emplace_back(std::move(node), std::move(block));
}

const ComplexMatrix* WalkerState::find(std::string_view node) const {
  const auto it = index_.find(std::string(node));
  return it == index_.end() ? nullptr : &blocks_[it->second].second;
}

double WalkerState::total_trace() const {
  double t = 0.0;
  for (const auto& [node, block] : blocks_) t += block.trace().real();
  return t;
}

StateCheck check_state(const WalkerState& state) {
  StateCheck check{std::abs(state.total_trace() - 1.0), 0.0,
                   std::numeric_limits<double>::infinity()};
  for (const auto& [node, block] : state.blocks()) {
    check.hermitian_error = std::max(check.hermitian_error, max_abs_diff(block, adjoint(block)));
    ComplexMatrix sym = 0.5 * (block + adjoint(block));
    const auto ev = hermitian_eigenvalues(sym);
    check.min_eigenvalue = std::min(check.min_eigenvalue, ev.front());
  }
  return check;
}

// ---------------------------------------------------------------------------
// Evolution

WalkerState step(const WalkSpec& spec, const WalkerState& state) {
  // Occupied sources in spec order, so each target sums its incoming edges
  // in ascending source order.
  std::vector<std::pair<std::size_t, const ComplexMatrix*>> sources;
  sources.reserve(state.size());
  for (const auto& [node, block] : state.blocks()) {
    const auto idx = spec.index_of(node);
    if (!idx) throw std::invalid_argument("step: state has block at unknown node '" + node + "'");
    if (block.dim() != spec.dim()) {
      throw DimensionMismatch("step: block at node '" + node + "' has dimension " +
                              std::to_string(block.dim()) + ", expected " +
                              std::to_string(spec.dim()));
    }
    sources.emplace_back(*idx, &block);
  }
  std::sort(sources.begin(), sources.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::pair<std::size_t, ComplexMatrix>> targets;
  std::unordered_map<std::size_t, std::size_t> slot_of;
  for (const auto& [j, rho] : sources) {
    for (const auto k : spec.outgoing(j)) {
      const auto& edge = spec.edges()[k];
      auto [it, inserted] = slot_of.try_emplace(edge.to, targets.size());
      if (inserted) targets.emplace_back(edge.to, ComplexMatrix(spec.dim()));
      accumulate_sandwich(targets[it->second].second, edge.op, *rho);
    }
  }
  std::sort(targets.begin(), targets.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  WalkerState next;
  for (auto& [i, block] : targets) {
    if (block.trace().real() < kPruneTrace) continue;
    next.set(spec.nodes()[i], std::move(block));
  }
  return next;
}

Trajectory run(const WalkSpec& spec, const WalkerState& initial, std::size_t n_steps,
               std::size_t record_every) {
  if (record_every == 0) throw std::invalid_argument("run: record_every must be >= 1");
  Trajectory traj;
  traj.reserve(n_steps / record_every + 1);
  traj.push_back({0, initial});
  WalkerState current = initial;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    current = step(spec, current);
    if (n % record_every == 0) traj.push_back({n, current});
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Full-space oracle

FullDensity::FullDensity(ComplexMatrix matrix, std::size_t node_count, std::size_t internal_dim)
    : matrix_(std::move(matrix)), node_count_(node_count), internal_dim_(internal_dim) {
  if (matrix_.dim() != node_count_ * internal_dim_) {
    throw DimensionMismatch("FullDensity: matrix dimension " + std::to_string(matrix_.dim()) +
                            " != nodes * internal dim " +
                            std::to_string(node_count_ * internal_dim_));
  }
}

FullDensity to_full_density(const WalkSpec& spec, const WalkerState& state) {
  const std::size_t d = spec.dim();
  ComplexMatrix m(d * spec.node_count());
  for (const auto& [node, block] : state.blocks()) {
    const auto i = spec.require_index(node);
    if (block.dim() != d) {
      throw DimensionMismatch("to_full_density: block at node '" + node + "' has wrong dimension");
    }
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m(i * d + r, i * d + c) = block(r, c);
  }
  return FullDensity(std::move(m), spec.node_count(), d);
}

BlockExtraction extract_blocks(const WalkSpec& spec, const FullDensity& full) {
  const std::size_t d = spec.dim();
  if (full.node_count() != spec.node_count() || full.internal_dim() != d) {
    throw DimensionMismatch("extract_blocks: full density does not match the walk");
  }
  const auto& m = full.matrix();
  BlockExtraction out{{}, 0.0};
  for (std::size_t i = 0; i < spec.node_count(); ++i) {
    for (std::size_t k = 0; k < spec.node_count(); ++k) {
      if (k == i) continue;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          out.off_diagonal_magnitude =
              std::max(out.off_diagonal_magnitude, std::abs(m(i * d + r, k * d + c)));
    }
    ComplexMatrix block(d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) block(r, c) = m(i * d + r, i * d + c);
    if (block.trace().real() < kPruneTrace) continue;
    out.state.set(spec.nodes()[i], std::move(block));
  }
  return out;
}

FullDensity full_map_step(const WalkSpec& spec, const FullDensity& full) {
  if (full.node_count() != spec.node_count() || full.internal_dim() != spec.dim()) {
    throw DimensionMismatch("full_map_step: full density does not match the walk");
  }
  const auto& rho = full.matrix();
  ComplexMatrix out(rho.dim());
  for (const auto& edge : spec.edges()) {
    const auto m = transition_operator(spec, edge);
    out += m * rho * adjoint(m);
  }
  return FullDensity(std::move(out), spec.node_count(), spec.dim());
}

// ---------------------------------------------------------------------------
// Steady state

SteadyStateResult find_steady_state(const WalkSpec& spec, const WalkerState& initial, double tol,
                                    std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_steady_state: tol must be positive");
  WalkerState current = initial;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t n = 1; n <= max_iter; ++n) {
    WalkerState next = step(spec, current);
    residual = 0.0;
    for (const auto& [node, block] : next.blocks()) {
      const ComplexMatrix* prev = current.find(node);
      residual += prev ? trace_distance(block, *prev) : 0.5 * block.trace().real();
    }
    for (const auto& [node, block] : current.blocks()) {
      if (!next.find(node)) residual += 0.5 * block.trace().real();
    }
    current = std::move(next);
    if (residual <= tol) return {std::move(current), n, true, residual};
  }
  return {std::move(current), max_iter, false, residual};
}

}  // namespace oqw
