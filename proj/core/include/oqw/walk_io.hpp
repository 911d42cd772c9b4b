#pragma once

// JSON forms:
//   matrix      [[ [re, im], ... ], ...]           (row-major)
//   ket         [ [re, im], ... ]
//   WalkSpec    {"nodes": [...], "dim": d,
//                "transitions": [{"from": j, "to": i, "matrix": M}, ...]}
//   WalkerState {"blocks": {"node": M, ...}}
// Node labels may be written as JSON strings or integers; they are read back
// as strings.

#include "oqw/walk.hpp"

#include <string>
#include <string_view>

namespace oqw {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string walk_spec_to_json(const WalkSpec& spec, int indent = -1);
WalkSpec walk_spec_from_json(std::string_view text);

std::string walker_state_to_json(const WalkerState& state, int indent = -1);
WalkerState walker_state_from_json(std::string_view text);

std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(std::string_view text);

}  // namespace oqw
