#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace hsshmm {

inline constexpr double kDefaultCovarianceFloor = 1e-6;

// Natural-log probability (or density) carrier. An impossible outcome is
// represented by valid == false and value == -infinity; value is never NaN.
struct LogLikelihood {
  double value = -std::numeric_limits<double>::infinity();
  bool valid = false;

  static LogLikelihood impossible() { return {}; }
  // Maps -inf to impossible(); throws Error on NaN.
  static LogLikelihood of(double v);

  friend bool operator==(const LogLikelihood&, const LogLikelihood&) = default;
};

// One diagonal-covariance Gaussian component.
struct GaussianComponent {
  double weight = 1.0;
  std::vector<double> mean;
  std::vector<double> variance;  // covariance diagonal
};

// Weighted sum of diagonal Gaussians. Construction validates the mixture:
// weights form a probability vector, all means/variances share one
// dimension, and every variance is at least the covariance floor.
class GaussianMixture {
 public:
  GaussianMixture(std::vector<GaussianComponent> components,
                  double covariance_floor = kDefaultCovarianceFloor);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return components_.size(); }
  const std::vector<GaussianComponent>& components() const noexcept { return components_; }
  const GaussianComponent& component(std::size_t k) const { return components_[k]; }

  // log(w_k) + log N(x; mu_k, Sigma_k), no dimension check.
  double component_log_density(std::size_t k, std::span<const double> x) const;

  // log sum_k w_k N(x; mu_k, Sigma_k) via log-sum-exp.
  LogLikelihood log_pdf(std::span<const double> x) const;

 private:
  std::vector<GaussianComponent> components_;
  std::vector<double> log_norm_;  // log w_k - 0.5 (d log 2pi + sum log var)
  std::size_t dimension_ = 0;
};

// Free-function form of GaussianMixture::log_pdf that checks the dimension.
LogLikelihood gmm_log_pdf(const GaussianMixture& g, std::span<const double> x);

// log(sum(exp(v))) with -inf entries ignored; -inf when all are -inf.
double log_sum_exp(std::span<const double> v);

}  // namespace hsshmm
