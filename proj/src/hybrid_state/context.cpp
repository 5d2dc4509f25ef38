#include "hsshmm/context.hpp"

namespace hsshmm {

std::string_view to_string(RoadCondition rcs) {
  switch (rcs) {
    case RoadCondition::kIntersection: return "Intersection";
    case RoadCondition::kHighway: return "Highway";
    case RoadCondition::kRoad: return "Road";
  }
  return "";
}

std::optional<RoadCondition> parse_road_condition(std::string_view s) {
  if (s == "Intersection" || s == "Int") return RoadCondition::kIntersection;
  if (s == "Highway") return RoadCondition::kHighway;
  if (s == "Road") return RoadCondition::kRoad;
  return std::nullopt;
}

}  // namespace hsshmm
