#include "hsshmm/absorption.hpp"

#include "hsshmm/errors.hpp"

namespace hsshmm {

AbsorptionAnalysis analyze_absorption(const Matrix& a, std::uint64_t n) {
  if (n == 0) throw Error("matrix power exponent must be positive");
  if (!is_row_stochastic(a)) throw StochasticityError("matrix is not row-stochastic");

  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  bool first = true;
  for (std::uint64_t e = n; e > 0; e >>= 1) {
    if (e & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    if (e > 1) base = base * base;
  }

  AbsorptionAnalysis out{std::move(result), {}};
  out.diagonal_decay.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out.diagonal_decay.push_back(out.power(i, i));
  return out;
}

}  // namespace hsshmm
