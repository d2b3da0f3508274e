#pragma once

#include <vector>

#include "berry/types.hpp"

namespace berry {

/// Thrown when commutator closure keeps growing after `budget` rounds.
class ClosureNotStabilized : public NumericalError {
 public:
  ClosureNotStabilized(int partial_dimension, int rounds);
  int partial_dimension() const { return partial_; }

 private:
  int partial_;
};

/// Real dimension of the real Lie algebra generated by `generators` under
/// commutators. Candidates are normalized; one is accepted when the smallest
/// singular value of [basis, candidate] (as real vectors) exceeds rel_tol
/// times the largest. Each round brackets every basis pair; stops when a
/// round adds nothing.
int lie_closure_dimension(const std::vector<Matrix>& generators, double rel_tol = 1e-9, int budget = 16);

}  // namespace berry
