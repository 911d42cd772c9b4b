#include "oqw/walk_io.hpp"

#include <json.hpp>

namespace oqw {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json complex_to_json(const Complex& z) { return ordered_json::array({z.real(), z.imag()}); }

template <class Json>
Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.template get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entry must be [re, im] or a real number, got " + j.dump());
  }
  return {j[0].template get<double>(), j[1].template get<double>()};
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Json>
ComplexMatrix matrix_from(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows");
  const std::size_t n = j.size();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != n) {
      throw ParseError("matrix must be square: expected " + std::to_string(n) + " columns");
    }
    for (const auto& z : row) entries.push_back(complex_from_json(z));
  }
  return ComplexMatrix(n, std::move(entries));
}

std::string label_from(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("node label must be a string or integer, got " + j.dump());
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return obj.at(key);
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) { return matrix_json(m).dump(); }

ComplexMatrix matrix_from_json(std::string_view text) { return matrix_from(parse(text)); }

std::string walk_spec_to_json(const WalkSpec& spec, int indent) {
  ordered_json j;
  j["nodes"] = spec.nodes();
  j["dim"] = spec.dim();
  ordered_json transitions = ordered_json::array();
  for (const auto& e : spec.edges()) {
    ordered_json t;
    t["from"] = spec.nodes()[e.from];
    t["to"] = spec.nodes()[e.to];
    t["matrix"] = matrix_json(e.op);
    transitions.push_back(std::move(t));
  }
  j["transitions"] = std::move(transitions);
  return j.dump(indent);
}

WalkSpec walk_spec_from_json(std::string_view text) {
  const json j = parse(text);
  const auto& nodes_j = require(j, "nodes");
  if (!nodes_j.is_array()) throw ParseError("'nodes' must be an array");
  std::vector<std::string> nodes;
  for (const auto& n : nodes_j) nodes.push_back(label_from(n));

  const auto& dim_j = require(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
    throw ParseError("'dim' must be a positive integer");
  }
  const auto dim = dim_j.get<std::size_t>();

  std::vector<Transition> transitions;
  const auto& trans_j = require(j, "transitions");
  if (!trans_j.is_array()) throw ParseError("'transitions' must be an array");
  for (const auto& t : trans_j) {
    transitions.push_back(Transition{label_from(require(t, "from")), label_from(require(t, "to")),
                                     matrix_from(require(t, "matrix"))});
  }
  return WalkSpec(std::move(nodes), dim, std::move(transitions));
}

std::string walker_state_to_json(const WalkerState& state, int indent) {
  ordered_json blocks = ordered_json::object();
  for (const auto& [node, block] : state.blocks()) blocks[node] = matrix_json(block);
  ordered_json j;
  j["blocks"] = std::move(blocks);
  return j.dump(indent);
}

WalkerState walker_state_from_json(std::string_view text) {
  // ordered_json keeps the document's block order.
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_object()) {
    throw ParseError("walker state must be {\"blocks\": {node: matrix}}");
  }
  WalkerState state;
  for (const auto& [node, m] : j["blocks"].items()) state.set(node, matrix_from(m));
  return state;
}

}  // namespace oqw
