#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace hsshmm {

// Roadway-type condition (RCS).
enum class RoadCondition { kIntersection, kHighway, kRoad };

// Environmental (ECS) and traffic (TCS) condition systems. Both are held in
// a single nominal state; the types exist so a context is always the full
// three-part tuple.
enum class EnvironmentCondition { kNominal };
enum class TrafficCondition { kNominal };

struct ContextState {
  RoadCondition rcs = RoadCondition::kRoad;
  EnvironmentCondition ecs = EnvironmentCondition::kNominal;
  TrafficCondition tcs = TrafficCondition::kNominal;

  friend bool operator==(const ContextState&, const ContextState&) = default;
};

inline ContextState road_context(RoadCondition rcs) { return ContextState{rcs}; }

// (timestamp, context) pairs: the initial context, then one entry per change.
using ContextTimeline = std::vector<std::pair<double, ContextState>>;

std::string_view to_string(RoadCondition rcs);
std::optional<RoadCondition> parse_road_condition(std::string_view s);

}  // namespace hsshmm
