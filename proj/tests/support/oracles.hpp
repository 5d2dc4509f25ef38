#pragma once

// Independent reference computations used only by tests. Nothing here calls
// into the library's numeric paths: densities are evaluated directly in
// linear space and sequence probabilities by exhaustive path enumeration.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "hsshmm/hmm.hpp"

namespace hsshmm::testing {

// Plain-data mirror of a model so the oracles never touch library methods.
struct PlainComponent {
  double weight;
  std::vector<double> mean;
  std::vector<double> variance;
};

struct PlainModel {
  std::vector<double> initial;
  std::vector<std::vector<double>> transition;
  std::vector<std::vector<PlainComponent>> emissions;
};

inline double gaussian_density(const std::vector<double>& x, const std::vector<double>& mean,
                               const std::vector<double>& var) {
  double p = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - mean[i];
    p *= std::exp(-0.5 * d * d / var[i]) / std::sqrt(2.0 * std::numbers::pi * var[i]);
  }
  return p;
}

inline double mixture_density(const std::vector<PlainComponent>& mix, const std::vector<double>& x) {
  double p = 0.0;
  for (const auto& c : mix) p += c.weight * gaussian_density(x, c.mean, c.variance);
  return p;
}

// Visits every state path of length T with its joint probability
// P(path, O) = pi(s0) b_s0(o0) prod a(s_{t-1}, s_t) b_st(ot).
inline void for_each_path(const PlainModel& m, const std::vector<std::vector<double>>& obs,
                          const std::function<void(const std::vector<std::size_t>&, double)>& visit) {
  const std::size_t n = m.initial.size();
  const std::size_t len = obs.size();
  std::vector<std::size_t> path(len, 0);
  while (true) {
    double p = m.initial[path[0]] * mixture_density(m.emissions[path[0]], obs[0]);
    for (std::size_t t = 1; t < len; ++t) {
      p *= m.transition[path[t - 1]][path[t]] * mixture_density(m.emissions[path[t]], obs[t]);
    }
    visit(path, p);
    // Odometer increment; done once every position wrapped.
    bool advanced = false;
    for (std::size_t pos = len; pos-- > 0;) {
      if (++path[pos] < n) {
        advanced = true;
        break;
      }
      path[pos] = 0;
    }
    if (!advanced) return;
  }
}

inline double brute_force_probability(const PlainModel& m, const std::vector<std::vector<double>>& obs) {
  double total = 0.0;
  for_each_path(m, obs, [&](const std::vector<std::size_t>&, double p) { total += p; });
  return total;
}

inline double brute_force_best_log_probability(const PlainModel& m,
                                               const std::vector<std::vector<double>>& obs) {
  double best = 0.0;
  for_each_path(m, obs, [&](const std::vector<std::size_t>&, double p) { best = std::max(best, p); });
  return std::log(best);
}

// Random valid model generator. Means stay near the origin and variances
// moderate so linear-space products do not underflow for T <= 8.
inline PlainModel random_plain_model(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                     std::size_t d) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_real_distribution<double> mean(-2.0, 2.0);
  std::uniform_real_distribution<double> var(0.3, 2.0);
  auto simplex = [&](std::size_t k) {
    std::vector<double> v(k);
    double s = 0.0;
    for (double& x : v) s += (x = u(rng));
    for (double& x : v) x /= s;
    return v;
  };
  PlainModel out;
  out.initial = simplex(n);
  for (std::size_t i = 0; i < n; ++i) out.transition.push_back(simplex(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = simplex(m);
    std::vector<PlainComponent> mix;
    for (std::size_t k = 0; k < m; ++k) {
      PlainComponent c{w[k], {}, {}};
      for (std::size_t j = 0; j < d; ++j) {
        c.mean.push_back(mean(rng));
        c.variance.push_back(var(rng));
      }
      mix.push_back(std::move(c));
    }
    out.emissions.push_back(std::move(mix));
  }
  return out;
}

inline std::vector<std::vector<double>> random_frames(std::mt19937_64& rng, std::size_t len,
                                                      std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.5);
  std::vector<std::vector<double>> out(len, std::vector<double>(d));
  for (auto& f : out) {
    for (double& x : f) x = g(rng);
  }
  return out;
}

inline HiddenMarkovModel to_model(const PlainModel& m) {
  std::vector<GaussianMixture> emissions;
  for (const auto& mix : m.emissions) {
    std::vector<GaussianComponent> comps;
    for (const auto& c : mix) comps.push_back({c.weight, c.mean, c.variance});
    emissions.emplace_back(std::move(comps));
  }
  return HiddenMarkovModel(m.initial, Matrix::from_rows(m.transition), std::move(emissions));
}

inline ObservationSequence to_sequence(const std::vector<std::vector<double>>& frames) {
  ObservationSequence seq;
  for (std::size_t t = 0; t < frames.size(); ++t) seq.push_back({0.1 * static_cast<double>(t), frames[t]});
  return seq;
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min());
}

}  // namespace hsshmm::testing
