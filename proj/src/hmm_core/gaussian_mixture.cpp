#include "hsshmm/gaussian_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsshmm/errors.hpp"

namespace hsshmm {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;  // log(2 pi)
}

LogLikelihood LogLikelihood::of(double v) {
  if (std::isnan(v)) throw Error("log-likelihood evaluated to NaN");
  if (v == -std::numeric_limits<double>::infinity()) return impossible();
  return {v, true};
}

double log_sum_exp(std::span<const double> v) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : v) hi = std::max(hi, x);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  double sum = 0.0;
  for (double x : v) sum += std::exp(x - hi);
  return hi + std::log(sum);
}

GaussianMixture::GaussianMixture(std::vector<GaussianComponent> components,
                                 double covariance_floor)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidModelError("mixture needs at least one component");
  dimension_ = components_.front().mean.size();
  if (dimension_ == 0) throw DimensionError("mixture dimension must be positive");

  double weight_sum = 0.0;
  log_norm_.reserve(components_.size());
  for (const auto& c : components_) {
    if (c.mean.size() != dimension_ || c.variance.size() != dimension_) {
      throw DimensionError("mixture components disagree on dimension");
    }
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
      throw InvalidModelError("mixture weight outside [0, 1]");
    }
    weight_sum += c.weight;
    double log_det = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      // Relative slack so a floor value that went through a JSON round trip
      // still passes.
      if (!(c.variance[i] >= covariance_floor * (1.0 - 1e-12)) || !std::isfinite(c.variance[i])) {
        throw InvalidModelError("variance " + std::to_string(c.variance[i]) +
                                " below covariance floor");
      }
      if (!std::isfinite(c.mean[i])) throw InvalidModelError("non-finite mixture mean");
      log_det += std::log(c.variance[i]);
    }
    const double log_w = c.weight > 0.0 ? std::log(c.weight)
                                         : -std::numeric_limits<double>::infinity();
    log_norm_.push_back(log_w - 0.5 * (static_cast<double>(dimension_) * kLog2Pi + log_det));
  }
  if (std::abs(weight_sum - 1.0) > 1e-9) {
    throw InvalidModelError("mixture weights sum to " + std::to_string(weight_sum));
  }
}

double GaussianMixture::component_log_density(std::size_t k, std::span<const double> x) const {
  const auto& c = components_[k];
  double quad = 0.0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    const double d = x[i] - c.mean[i];
    quad += d * d / c.variance[i];
  }
  return log_norm_[k] - 0.5 * quad;
}

LogLikelihood GaussianMixture::log_pdf(std::span<const double> x) const {
  double terms[16];
  std::vector<double> heap;
  std::span<double> buf;
  if (components_.size() <= std::size(terms)) {
    buf = std::span<double>(terms, components_.size());
  } else {
    heap.resize(components_.size());
    buf = heap;
  }
  for (std::size_t k = 0; k < components_.size(); ++k) buf[k] = component_log_density(k, x);
  return LogLikelihood::of(log_sum_exp(buf));
}

LogLikelihood gmm_log_pdf(const GaussianMixture& g, std::span<const double> x) {
  if (x.size() != g.dimension()) {
    throw DimensionError("observation has " + std::to_string(x.size()) +
                         " channels, mixture expects " + std::to_string(g.dimension()));
  }
  return g.log_pdf(x);
}

}  // namespace hsshmm
