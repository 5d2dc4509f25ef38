#include "hsshmm/observation.hpp"

#include <string>

#include "hsshmm/errors.hpp"

namespace hsshmm {

std::vector<std::string> default_feature_order() {
  return {kFeatureNames.begin(), kFeatureNames.end()};
}

std::vector<std::size_t> indicator_channels() {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (is_indicator(static_cast<Feature>(i))) out.push_back(i);
  }
  return out;
}

std::vector<double> vehicle_variance_floor() {
  std::vector<double> sd(kFeatureCount, 0.1);
  sd[index(Feature::kSpeed)] = 2.0;
  sd[index(Feature::kYawRate)] = 0.01;
  sd[index(Feature::kLateralAcceleration)] = 0.1;
  sd[index(Feature::kBrakePressure)] = 0.02;
  sd[index(Feature::kThrottlePosition)] = 0.02;
  sd[index(Feature::kSteeringWheelAngle)] = 0.02;
  std::vector<double> out;
  for (double s : sd) out.push_back(s * s);
  return out;
}

void check_strictly_increasing(std::span<const ObservationVector> obs) {
  for (std::size_t i = 1; i < obs.size(); ++i) {
    if (!(obs[i].timestamp > obs[i - 1].timestamp)) {
      throw TimestampOrderError("timestamps must strictly increase (frame " +
                                std::to_string(i) + ")");
    }
  }
}

void check_vehicle_frame(const ObservationVector& obs) {
  if (obs.features.size() != kFeatureCount) {
    throw DimensionError("vehicle frame has " + std::to_string(obs.features.size()) +
                         " channels, expected " + std::to_string(kFeatureCount));
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    const auto f = static_cast<Feature>(i);
    const double v = obs.features[i];
    if (is_normalized(f) && (v < 0.0 || v > 1.0)) {
      throw Error(std::string(kFeatureNames[i]) + " outside [0, 1]");
    }
    if (is_indicator(f) && v != 0.0 && v != 1.0) {
      throw Error(std::string(kFeatureNames[i]) + " must be 0 or 1");
    }
  }
}

}  // namespace hsshmm
