#pragma once

#include <cstdint>
#include <vector>

#include "core/conductance.hpp"

namespace rwlab {

struct VcViolation {
  int n;
  std::size_t x, y;
  double prob;
  double bound;
};

struct VcReport {
  std::size_t states = 0;
  int n_max = 0;
  double max_ratio = 0.0;          // max over pairs of L^n(x,y) / bound
  std::uint64_t pairs_checked = 0;
  std::vector<VcViolation> violations;  // empty on valid reversible kernels
};

// Exhaustively verifies L^n(x,y) <= 2 sqrt(pi(y)/pi(x)) exp(-d(x,y)^2 / 2n)
// on the finite reversible chain built from the conductance field with
// reflecting boundary. d is graph distance by BFS. bound_scale is a test
// hook: scaling the bound down must produce reported violations.
VcReport vc_check(const ConductanceField& field, int n_max, double bound_scale = 1.0);

}  // namespace rwlab
