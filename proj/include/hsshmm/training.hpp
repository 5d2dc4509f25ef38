#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hsshmm/hmm.hpp"

namespace hsshmm {

struct TrainingConfig {
  std::size_t max_iters = 100;
  // Stop once an iteration improves total log-likelihood by less than this.
  double log_likelihood_tolerance = 1e-4;
  std::uint64_t seed = 42;
  double covariance_floor = kDefaultCovarianceFloor;
  // Optional per-channel variance floors, raised to covariance_floor where
  // smaller. Empty means covariance_floor on every channel.
  std::vector<double> channel_variance_floor;
  // Lower bound on every initial and transition probability after each
  // re-estimation (rows renormalized). Zero keeps plain EM. A positive floor
  // lets a model explain windows that start or jump mid-pattern.
  double probability_floor = 0.0;
  // Channels that carry 0/1 indicators. They get additive uniform noise of
  // +/- indicator_jitter before training so their Gaussians do not collapse.
  std::vector<std::size_t> indicator_channels;
  double indicator_jitter = 0.01;
};

// Settings for the nine vehicle channels: indicator jitter, the vehicle
// variance floors and a 1e-3 probability floor.
TrainingConfig vehicle_training_config(std::uint64_t seed = 42);

enum class TrainingWarning {
  kDegenerateData,    // every training frame identical; variances sit on the floor
};

std::string to_string(TrainingWarning w);

struct TrainingResult {
  HiddenMarkovModel model;
  // Total training log-likelihood of each model visited, starting with the
  // seeded initial model. Non-decreasing up to floating-point slack.
  std::vector<double> log_likelihood_history;
  std::size_t iterations = 0;  // completed re-estimation steps
  bool converged = false;
  std::vector<TrainingWarning> warnings;
};

// Deterministic starting point for Baum-Welch: seeded k-means on pooled
// frames places the state/component means, the pooled per-channel variance
// seeds every covariance, and the initial/transition tables are uniform with
// a small seeded perturbation.
HiddenMarkovModel seeded_initial_model(const std::vector<ObservationSequence>& sequences,
                                       std::size_t num_states, std::size_t mixtures,
                                       const TrainingConfig& config);

// Baum-Welch (EM) re-estimation of a Gaussian-mixture HMM.
// Requires at least one sequence, every sequence of length >= 2, and equal
// dimensions; throws EmptySequenceError / DimensionError otherwise.
TrainingResult baum_welch_train(const std::vector<ObservationSequence>& sequences,
                                std::size_t num_states, std::size_t mixtures,
                                const TrainingConfig& config = {});

// Sum of forward log-likelihoods over all sequences.
double total_log_likelihood(const HiddenMarkovModel& hmm,
                            const std::vector<ObservationSequence>& sequences);

}  // namespace hsshmm
