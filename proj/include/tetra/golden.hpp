#pragma once

// Hand-transcribed table of the explicitly listed 3D operator elements,
// instantiated at concrete indices. Used by `selftest` and the acceptance
// runner; independent of the element functions in ops3d.

#include "tetra/tensor.hpp"

#include <string>
#include <vector>

namespace tetra::golden {

struct Case {
  std::string group;  // "L", "M", "N", "X", "Y", "RL", "Z"
  std::string family;
  MultiIndex out, in;
  QCoeff expected;
};

// Every listed element with free indices in [0, max_free].
std::vector<Case> cases(int max_free = 4);

struct Outcome {
  std::size_t total = 0;
  std::vector<std::string> failures;  // "X[in -> out] got ... want ..."
};
// Canonical-string comparison of each case against ops3d.
Outcome run(const std::vector<Case>& cs);

}  // namespace tetra::golden
