#include "hsshmm/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hsshmm/errors.hpp"

namespace hsshmm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double safe_log(double p) { return p > 0.0 ? std::log(p) : kNegInf; }

void check_sequence(const HiddenMarkovModel& hmm, std::span<const ObservationVector> obs) {
  if (obs.empty()) throw EmptySequenceError("observation sequence is empty");
  for (std::size_t t = 0; t < obs.size(); ++t) {
    if (obs[t].features.size() != hmm.dimension()) {
      throw DimensionError("frame " + std::to_string(t) + " has " +
                           std::to_string(obs[t].features.size()) + " channels, model expects " +
                           std::to_string(hmm.dimension()));
    }
  }
}

}  // namespace

HiddenMarkovModel::HiddenMarkovModel(std::vector<double> initial, Matrix transition,
                                     std::vector<GaussianMixture> emissions)
    : initial_(std::move(initial)),
      transition_(std::move(transition)),
      emissions_(std::move(emissions)) {
  const std::size_t n = initial_.size();
  if (n == 0) throw InvalidModelError("HMM needs at least one state");
  if (transition_.rows() != n || transition_.cols() != n) {
    throw DimensionError("transition matrix must be N x N");
  }
  if (emissions_.size() != n) throw DimensionError("need one emission mixture per state");
  if (!is_probability_vector(initial_)) {
    throw StochasticityError("initial distribution is not a probability vector");
  }
  if (!is_row_stochastic(transition_)) {
    throw StochasticityError("transition matrix is not row-stochastic");
  }
  for (const auto& e : emissions_) {
    if (e.dimension() != emissions_.front().dimension()) {
      throw DimensionError("emission mixtures disagree on dimension");
    }
  }
}

Matrix HiddenMarkovModel::emission_log_table(std::span<const ObservationVector> obs) const {
  check_sequence(*this, obs);
  Matrix table(obs.size(), num_states());
  for (std::size_t t = 0; t < obs.size(); ++t) {
    for (std::size_t j = 0; j < num_states(); ++j) {
      table(t, j) = emissions_[j].log_pdf(obs[t].features).value;
    }
  }
  return table;
}

LogLikelihood forward_log_likelihood(const HiddenMarkovModel& hmm,
                                     std::span<const ObservationVector> obs) {
  const Matrix log_b = hmm.emission_log_table(obs);
  const std::size_t n = hmm.num_states();
  const Matrix& a = hmm.transition();

  std::vector<double> alpha(n), next(n);
  double total = 0.0;
  for (std::size_t t = 0; t < obs.size(); ++t) {
    const auto row = log_b.row(t);
    const double shift = *std::max_element(row.begin(), row.end());
    if (shift == kNegInf) return LogLikelihood::impossible();

    for (std::size_t j = 0; j < n; ++j) {
      double pred = 0.0;
      if (t == 0) {
        pred = hmm.initial()[j];
      } else {
        for (std::size_t i = 0; i < n; ++i) pred += alpha[i] * a(i, j);
      }
      next[j] = pred * std::exp(row[j] - shift);
    }
    double scale = 0.0;
    for (double v : next) scale += v;
    if (!(scale > 0.0)) return LogLikelihood::impossible();
    for (std::size_t j = 0; j < n; ++j) alpha[j] = next[j] / scale;
    total += shift + std::log(scale);
  }
  return LogLikelihood::of(total);
}

ViterbiResult viterbi_decode(const HiddenMarkovModel& hmm,
                             std::span<const ObservationVector> obs) {
  const Matrix log_b = hmm.emission_log_table(obs);
  const std::size_t n = hmm.num_states();
  const std::size_t len = obs.size();

  Matrix log_a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) log_a(i, j) = safe_log(hmm.transition()(i, j));
  }

  std::vector<double> delta(n), next(n);
  std::vector<std::vector<std::size_t>> back(len, std::vector<std::size_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) delta[j] = safe_log(hmm.initial()[j]) + log_b(0, j);

  for (std::size_t t = 1; t < len; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      double best = kNegInf;
      std::size_t arg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const double cand = delta[i] + log_a(i, j);
        if (cand > best) {
          best = cand;
          arg = i;
        }
      }
      next[j] = best + log_b(t, j);
      back[t][j] = arg;
    }
    delta.swap(next);
  }

  std::size_t last = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (delta[j] > delta[last]) last = j;
  }
  ViterbiResult result;
  result.log_probability = LogLikelihood::of(delta[last]);
  result.path.assign(len, 0);
  result.path[len - 1] = last;
  for (std::size_t t = len - 1; t > 0; --t) result.path[t - 1] = back[t][result.path[t]];
  return result;
}

}  // namespace hsshmm
