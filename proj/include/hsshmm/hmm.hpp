#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hsshmm/gaussian_mixture.hpp"
#include "hsshmm/matrix.hpp"
#include "hsshmm/observation.hpp"

namespace hsshmm {

// Continuous-emission HMM with one Gaussian mixture per hidden state.
// Immutable once constructed; the constructor enforces stochasticity of the
// initial distribution and transition matrix (1e-9) and equal emission
// dimensions.
class HiddenMarkovModel {
 public:
  HiddenMarkovModel(std::vector<double> initial, Matrix transition,
                    std::vector<GaussianMixture> emissions);

  std::size_t num_states() const noexcept { return initial_.size(); }
  std::size_t dimension() const noexcept { return emissions_.front().dimension(); }
  // Components in the first state's mixture; models built here use the same
  // count for every state.
  std::size_t mixtures_per_state() const noexcept { return emissions_.front().size(); }

  const std::vector<double>& initial() const noexcept { return initial_; }
  const Matrix& transition() const noexcept { return transition_; }
  const std::vector<GaussianMixture>& emissions() const noexcept { return emissions_; }
  const GaussianMixture& emission(std::size_t state) const { return emissions_[state]; }

  // T x N table of per-state emission log densities. Checks dimensions.
  Matrix emission_log_table(std::span<const ObservationVector> obs) const;

 private:
  std::vector<double> initial_;
  Matrix transition_;
  std::vector<GaussianMixture> emissions_;
};

// log P(O | model) by the scaled forward recursion.
// Throws EmptySequenceError / DimensionError.
LogLikelihood forward_log_likelihood(const HiddenMarkovModel& hmm,
                                     std::span<const ObservationVector> obs);

struct ViterbiResult {
  std::vector<std::size_t> path;
  LogLikelihood log_probability;
};

// Most probable hidden-state path. Ties go to the lowest state index, both
// for the final state and for every back-pointer.
ViterbiResult viterbi_decode(const HiddenMarkovModel& hmm,
                             std::span<const ObservationVector> obs);

}  // namespace hsshmm
