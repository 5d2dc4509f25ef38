#pragma once

#include <cstdint>
#include <vector>

#include "hsshmm/matrix.hpp"

namespace hsshmm {

struct AbsorptionAnalysis {
  Matrix power;                       // A^n
  std::vector<double> diagonal_decay; // diag(A^n)
};

// Raises a row-stochastic matrix to the n-th power by repeated squaring and
// reports how much self-transition mass survives. Throws StochasticityError
// for non-stochastic input and Error for n == 0.
AbsorptionAnalysis analyze_absorption(const Matrix& a, std::uint64_t n);

}  // namespace hsshmm
