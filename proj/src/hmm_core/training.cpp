#include "hsshmm/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hsshmm/errors.hpp"

namespace hsshmm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Mixing constants so the jitter and k-means streams differ for one seed.
constexpr std::uint64_t kJitterStream = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kInitStream = 0xbf58476d1ce4e5b9ULL;

using Frame = std::vector<double>;

void validate(const std::vector<ObservationSequence>& sequences, std::size_t num_states,
              std::size_t mixtures, const TrainingConfig& config) {
  if (sequences.empty()) throw EmptySequenceError("no training sequences");
  if (num_states == 0 || mixtures == 0) {
    throw InvalidModelError("state and mixture counts must be positive");
  }
  const std::size_t dim = sequences.front().empty() ? 0 : sequences.front().front().features.size();
  if (dim == 0) throw DimensionError("training frames must have at least one channel");
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    if (sequences[s].size() < 2) {
      throw EmptySequenceError("training sequence " + std::to_string(s) +
                               " has fewer than 2 frames");
    }
    for (const auto& o : sequences[s]) {
      if (o.features.size() != dim) throw DimensionError("training frames disagree on dimension");
    }
  }
  if (!config.channel_variance_floor.empty() && config.channel_variance_floor.size() != dim) {
    throw DimensionError("channel variance floor has " +
                         std::to_string(config.channel_variance_floor.size()) + " entries for " +
                         std::to_string(dim) + " channels");
  }
  for (double f : config.channel_variance_floor) {
    if (!(f >= 0.0) || !std::isfinite(f)) throw InvalidModelError("channel variance floor must be >= 0");
  }
  if (!(config.probability_floor >= 0.0) ||
      !(config.probability_floor * static_cast<double>(num_states) < 1.0)) {
    throw InvalidModelError("probability floor must lie in [0, 1/N)");
  }
}

std::vector<ObservationSequence> jittered(const std::vector<ObservationSequence>& sequences,
                                          const TrainingConfig& config) {
  if (config.indicator_channels.empty() || config.indicator_jitter == 0.0) return sequences;
  std::vector<ObservationSequence> out = sequences;
  std::mt19937_64 rng(config.seed ^ kJitterStream);
  std::uniform_real_distribution<double> noise(-config.indicator_jitter, config.indicator_jitter);
  for (auto& seq : out) {
    for (auto& o : seq) {
      for (std::size_t c : config.indicator_channels) {
        if (c >= o.features.size()) throw DimensionError("indicator channel out of range");
        o.features[c] += noise(rng);
      }
    }
  }
  return out;
}

std::vector<const Frame*> pool(const std::vector<ObservationSequence>& sequences) {
  std::vector<const Frame*> frames;
  for (const auto& seq : sequences) {
    for (const auto& o : seq) frames.push_back(&o.features);
  }
  return frames;
}

struct Moments {
  Frame mean;
  Frame variance;
};

Moments moments(const std::vector<const Frame*>& frames, std::size_t dim) {
  Moments m{Frame(dim, 0.0), Frame(dim, 0.0)};
  for (const Frame* f : frames) {
    for (std::size_t i = 0; i < dim; ++i) m.mean[i] += (*f)[i];
  }
  for (double& v : m.mean) v /= static_cast<double>(frames.size());
  for (const Frame* f : frames) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = (*f)[i] - m.mean[i];
      m.variance[i] += d * d;
    }
  }
  for (double& v : m.variance) v /= static_cast<double>(frames.size());
  return m;
}

// Lloyd's k-means with k-means++ seeding. Distances are measured in units of
// `scale` (per-channel std) so no single channel dominates. Returns k centers
// and the assignment of each frame.
struct Clustering {
  std::vector<Frame> centers;
  std::vector<std::size_t> assignment;
};

Clustering kmeans(const std::vector<const Frame*>& frames, std::size_t k, const Frame& scale,
                  std::mt19937_64& rng) {
  const std::size_t dim = scale.size();
  auto dist2 = [&](const Frame& a, const Frame& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      const double d = (a[i] - b[i]) / scale[i];
      s += d * d;
    }
    return s;
  };

  Clustering out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  out.centers.push_back(*frames[static_cast<std::size_t>(unit(rng) * frames.size()) % frames.size()]);
  std::vector<double> d2(frames.size());
  while (out.centers.size() < k) {
    double total = 0.0;
    for (std::size_t f = 0; f < frames.size(); ++f) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : out.centers) best = std::min(best, dist2(*frames[f], c));
      d2[f] = best;
      total += best;
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      pick = frames.size() - 1;
      for (std::size_t f = 0; f < frames.size(); ++f) {
        acc += d2[f];
        if (acc > target) {
          pick = f;
          break;
        }
      }
    } else {
      pick = static_cast<std::size_t>(unit(rng) * frames.size()) % frames.size();
    }
    out.centers.push_back(*frames[pick]);
  }

  out.assignment.assign(frames.size(), 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = iter == 0;
    for (std::size_t f = 0; f < frames.size(); ++f) {
      std::size_t arg = 0;
      double best = dist2(*frames[f], out.centers[0]);
      for (std::size_t c = 1; c < k; ++c) {
        const double d = dist2(*frames[f], out.centers[c]);
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      if (out.assignment[f] != arg) changed = true;
      out.assignment[f] = arg;
    }
    if (!changed) break;
    std::vector<Frame> sums(k, Frame(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t f = 0; f < frames.size(); ++f) {
      ++counts[out.assignment[f]];
      for (std::size_t i = 0; i < dim; ++i) sums[out.assignment[f]][i] += (*frames[f])[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its center
      for (std::size_t i = 0; i < dim; ++i) out.centers[c][i] = sums[c][i] / counts[c];
    }
  }
  return out;
}

std::vector<double> perturbed_uniform(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) {
    v = 1.0 + 0.1 * unit(rng);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

bool all_frames_identical(const std::vector<ObservationSequence>& sequences) {
  const Frame& first = sequences.front().front().features;
  for (const auto& seq : sequences) {
    for (const auto& o : seq) {
      if (o.features != first) return false;
    }
  }
  return true;
}

double variance_floor(const TrainingConfig& config, std::size_t channel) {
  if (config.channel_variance_floor.empty()) return config.covariance_floor;
  return std::max(config.covariance_floor, config.channel_variance_floor[channel]);
}

// Raises every entry to `floor` and renormalizes.
std::vector<double> floored(std::vector<double> v, double floor) {
  if (floor <= 0.0) return v;
  double sum = 0.0;
  for (double& x : v) sum += (x = std::max(x, floor));
  for (double& x : v) x /= sum;
  return v;
}

HiddenMarkovModel initial_model_from(const std::vector<ObservationSequence>& data,
                                     std::size_t num_states, std::size_t mixtures,
                                     const TrainingConfig& config) {
  const std::size_t dim = data.front().front().features.size();
  const auto frames = pool(data);
  const Moments global = moments(frames, dim);

  Frame scale(dim), pooled_var(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    pooled_var[i] = std::max(global.variance[i], variance_floor(config, i));
    scale[i] = std::sqrt(pooled_var[i]);
  }

  std::mt19937_64 rng(config.seed ^ kInitStream);
  const Clustering states = kmeans(frames, num_states, scale, rng);

  std::vector<GaussianMixture> emissions;
  emissions.reserve(num_states);
  for (std::size_t s = 0; s < num_states; ++s) {
    std::vector<const Frame*> members;
    for (std::size_t f = 0; f < frames.size(); ++f) {
      if (states.assignment[f] == s) members.push_back(frames[f]);
    }
    std::vector<Frame> means;
    if (mixtures == 1) {
      means.push_back(states.centers[s]);
    } else if (members.size() >= mixtures) {
      means = kmeans(members, mixtures, scale, rng).centers;
    } else {
      // Too few members to split: spread components around the state center.
      for (std::size_t k = 0; k < mixtures; ++k) {
        Frame m = states.centers[s];
        const double offset = 0.1 * (static_cast<double>(k) - 0.5 * static_cast<double>(mixtures - 1));
        for (std::size_t i = 0; i < dim; ++i) m[i] += offset * scale[i];
        means.push_back(std::move(m));
      }
    }
    std::vector<GaussianComponent> comps;
    for (auto& m : means) {
      comps.push_back({1.0 / static_cast<double>(mixtures), std::move(m), pooled_var});
    }
    emissions.emplace_back(std::move(comps), config.covariance_floor);
  }

  std::vector<double> initial = perturbed_uniform(num_states, rng);
  Matrix transition(num_states, num_states);
  for (std::size_t i = 0; i < num_states; ++i) {
    const auto row = perturbed_uniform(num_states, rng);
    std::copy(row.begin(), row.end(), transition.row(i).begin());
  }
  return HiddenMarkovModel(std::move(initial), std::move(transition), std::move(emissions));
}

// Sufficient statistics gathered by one E-step over all sequences. Frame
// moments are accumulated relative to the current component means to keep
// the variance update well conditioned.
struct Accumulators {
  std::size_t n, m, d;
  std::vector<double> initial;
  Matrix transitions;
  std::vector<double> occupancy;   // [n*m]
  std::vector<double> first;       // [n*m*d] sum gamma (x - mu_old)
  std::vector<double> second;      // [n*m*d] sum gamma (x - mu_old)^2
  double log_likelihood = 0.0;

  Accumulators(std::size_t n_, std::size_t m_, std::size_t d_)
      : n(n_), m(m_), d(d_), initial(n_, 0.0), transitions(n_, n_),
        occupancy(n_ * m_, 0.0), first(n_ * m_ * d_, 0.0), second(n_ * m_ * d_, 0.0) {}
};

void accumulate(const HiddenMarkovModel& hmm, const ObservationSequence& seq, Accumulators& acc) {
  const std::size_t n = acc.n, m = acc.m, d = acc.d, len = seq.size();
  const Matrix& a = hmm.transition();

  // Component log densities and per-state mixture log densities.
  std::vector<double> comp(len * n * m);
  Matrix log_b(len, n);
  std::vector<double> shift(len);
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      double* c = &comp[(t * n + j) * m];
      for (std::size_t k = 0; k < m; ++k) {
        c[k] = hmm.emission(j).component_log_density(k, seq[t].features);
      }
      log_b(t, j) = log_sum_exp(std::span<const double>(c, m));
    }
    const auto row = log_b.row(t);
    shift[t] = *std::max_element(row.begin(), row.end());
    if (shift[t] == kNegInf) throw Error("training frame has zero density under every state");
  }

  Matrix b(len, n);  // emission densities scaled by exp(-shift[t])
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t j = 0; j < n; ++j) b(t, j) = std::exp(log_b(t, j) - shift[t]);
  }

  Matrix alpha(len, n), beta(len, n);
  std::vector<double> scale(len);
  for (std::size_t t = 0; t < len; ++t) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double pred = 0.0;
      if (t == 0) {
        pred = hmm.initial()[j];
      } else {
        for (std::size_t i = 0; i < n; ++i) pred += alpha(t - 1, i) * a(i, j);
      }
      alpha(t, j) = pred * b(t, j);
      sum += alpha(t, j);
    }
    if (!(sum > 0.0)) throw Error("training sequence is impossible under the current model");
    scale[t] = sum;
    for (std::size_t j = 0; j < n; ++j) alpha(t, j) /= sum;
    acc.log_likelihood += shift[t] + std::log(sum);
  }

  for (std::size_t j = 0; j < n; ++j) beta(len - 1, j) = 1.0;
  for (std::size_t t = len - 1; t > 0; --t) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += a(i, j) * b(t, j) * beta(t, j);
      beta(t - 1, i) = s / scale[t];
    }
  }

  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t j = 0; j < n; ++j) {
      const double gamma = alpha(t, j) * beta(t, j);
      if (t == 0) acc.initial[j] += gamma;
      if (gamma == 0.0 || log_b(t, j) == kNegInf) continue;
      const auto& mix = hmm.emission(j);
      for (std::size_t k = 0; k < m; ++k) {
        const double g = gamma * std::exp(comp[(t * n + j) * m + k] - log_b(t, j));
        if (g == 0.0) continue;
        const std::size_t idx = j * m + k;
        acc.occupancy[idx] += g;
        const auto& mean = mix.component(k).mean;
        for (std::size_t i = 0; i < d; ++i) {
          const double diff = seq[t].features[i] - mean[i];
          acc.first[idx * d + i] += g * diff;
          acc.second[idx * d + i] += g * diff * diff;
        }
      }
    }
  }

  for (std::size_t t = 0; t + 1 < len; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      if (alpha(t, i) == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        acc.transitions(i, j) +=
            alpha(t, i) * a(i, j) * b(t + 1, j) * beta(t + 1, j) / scale[t + 1];
      }
    }
  }
}

std::vector<double> normalized(std::vector<double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  for (double& x : v) x /= sum;
  return v;
}

HiddenMarkovModel reestimate(const HiddenMarkovModel& hmm, const Accumulators& acc,
                             std::size_t num_sequences, const TrainingConfig& config) {
  const std::size_t n = acc.n, m = acc.m, d = acc.d;

  std::vector<double> initial(n);
  for (std::size_t j = 0; j < n; ++j) initial[j] = acc.initial[j] / static_cast<double>(num_sequences);
  initial = floored(normalized(std::move(initial)), config.probability_floor);

  Matrix transition(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) denom += acc.transitions(i, j);
    std::vector<double> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = denom > 0.0 ? acc.transitions(i, j) / denom : hmm.transition()(i, j);
    }
    row = floored(normalized(std::move(row)), config.probability_floor);
    std::copy(row.begin(), row.end(), transition.row(i).begin());
  }

  std::vector<GaussianMixture> emissions;
  emissions.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& old = hmm.emission(j);
    double state_occ = 0.0;
    for (std::size_t k = 0; k < m; ++k) state_occ += acc.occupancy[j * m + k];
    if (!(state_occ > 0.0)) {
      emissions.push_back(old);
      continue;
    }
    std::vector<double> weights(m);
    for (std::size_t k = 0; k < m; ++k) weights[k] = acc.occupancy[j * m + k] / state_occ;
    weights = normalized(std::move(weights));

    std::vector<GaussianComponent> comps;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t idx = j * m + k;
      const double occ = acc.occupancy[idx];
      GaussianComponent c = old.component(k);
      c.weight = weights[k];
      // A component with no responsibility keeps its old shape (its weight
      // is zero so it cannot affect the likelihood).
      if (occ > 1e-300) {
        for (std::size_t i = 0; i < d; ++i) {
          const double delta = acc.first[idx * d + i] / occ;
          const double var = acc.second[idx * d + i] / occ - delta * delta;
          c.mean[i] += delta;
          c.variance[i] = std::max(var, variance_floor(config, i));
        }
      }
      comps.push_back(std::move(c));
    }
    emissions.emplace_back(std::move(comps), config.covariance_floor);
  }
  return HiddenMarkovModel(std::move(initial), std::move(transition), std::move(emissions));
}

}  // namespace

TrainingConfig vehicle_training_config(std::uint64_t seed) {
  TrainingConfig cfg;
  cfg.seed = seed;
  cfg.indicator_channels = indicator_channels();
  cfg.channel_variance_floor = vehicle_variance_floor();
  cfg.probability_floor = 1e-3;
  return cfg;
}

std::string to_string(TrainingWarning w) {
  switch (w) {
    case TrainingWarning::kDegenerateData:
      return "DegenerateDataWarning: all training frames identical; covariances clamped at floor";
  }
  return "unknown warning";
}

HiddenMarkovModel seeded_initial_model(const std::vector<ObservationSequence>& sequences,
                                       std::size_t num_states, std::size_t mixtures,
                                       const TrainingConfig& config) {
  validate(sequences, num_states, mixtures, config);
  return initial_model_from(jittered(sequences, config), num_states, mixtures, config);
}

double total_log_likelihood(const HiddenMarkovModel& hmm,
                            const std::vector<ObservationSequence>& sequences) {
  double total = 0.0;
  for (const auto& seq : sequences) total += forward_log_likelihood(hmm, seq).value;
  return total;
}

TrainingResult baum_welch_train(const std::vector<ObservationSequence>& sequences,
                                std::size_t num_states, std::size_t mixtures,
                                const TrainingConfig& config) {
  validate(sequences, num_states, mixtures, config);
  const auto data = jittered(sequences, config);
  const std::size_t dim = data.front().front().features.size();

  TrainingResult result{initial_model_from(data, num_states, mixtures, config), {}, 0, false, {}};
  if (all_frames_identical(sequences)) result.warnings.push_back(TrainingWarning::kDegenerateData);

  while (true) {
    Accumulators acc(num_states, mixtures, dim);
    for (const auto& seq : data) accumulate(result.model, seq, acc);
    const double ll = acc.log_likelihood;
    if (!result.log_likelihood_history.empty() &&
        ll - result.log_likelihood_history.back() < config.log_likelihood_tolerance) {
      result.log_likelihood_history.push_back(ll);
      result.converged = true;
      break;
    }
    result.log_likelihood_history.push_back(ll);
    if (result.iterations >= config.max_iters) break;
    result.model = reestimate(result.model, acc, data.size(), config);
    ++result.iterations;
  }
  return result;
}

}  // namespace hsshmm
