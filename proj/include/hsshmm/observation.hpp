#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace hsshmm {

// Vehicle feature channels in their authoritative order. Model files and CSV
// headers list the channels by these names and in this order.
enum class Feature : std::size_t {
  kSpeed = 0,             // m/s
  kYawRate,               // rad/s, left positive
  kLateralAcceleration,   // m/s^2
  kBrakePressure,         // normalized [0, 1]
  kThrottlePosition,      // normalized [0, 1]
  kSteeringWheelAngle,    // rad
  kTurnSignalLeft,        // 0/1
  kTurnSignalRight,       // 0/1
  kBrakeLight,            // 0/1
};

inline constexpr std::size_t kFeatureCount = 9;

inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "speed",          "yaw_rate",           "lateral_acceleration",
    "brake_pressure", "throttle_position",  "steering_wheel_angle",
    "turn_signal_left", "turn_signal_right", "brake_light"};

constexpr std::size_t index(Feature f) { return static_cast<std::size_t>(f); }

constexpr bool is_normalized(Feature f) {
  return f == Feature::kBrakePressure || f == Feature::kThrottlePosition;
}

constexpr bool is_indicator(Feature f) {
  return f == Feature::kTurnSignalLeft || f == Feature::kTurnSignalRight ||
         f == Feature::kBrakeLight;
}

std::vector<std::string> default_feature_order();

// Indices of the 0/1 indicator channels within the default order.
std::vector<std::size_t> indicator_channels();

// Per-channel variance floors for the vehicle features, roughly the sensor
// resolution: differences below these carry no behavioral information.
// Indicators get a wide floor so a mismatched signal costs a bounded,
// model-independent penalty instead of one set by training jitter.
std::vector<double> vehicle_variance_floor();

// One timestamped frame of continuous-state estimates. The HMM primitives
// accept any feature dimension; the vehicle pipeline always uses
// kFeatureCount channels.
struct ObservationVector {
  double timestamp = 0.0;
  std::vector<double> features;
};

using ObservationSequence = std::vector<ObservationVector>;

// Throws TimestampOrderError unless timestamps strictly increase.
void check_strictly_increasing(std::span<const ObservationVector> obs);

// Throws Error if a vehicle frame has out-of-range normalized channels or
// non-binary indicators.
void check_vehicle_frame(const ObservationVector& obs);

}  // namespace hsshmm
