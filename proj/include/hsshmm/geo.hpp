#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hsshmm/context.hpp"

#include "json.hpp"

namespace hsshmm {

// Local planar coordinates in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct IntersectionSite {
  std::string id;
  Point position;
};

struct HighwaySegment {
  std::string id;
  std::vector<Point> polyline;
  double width = 0.0;  // full carriageway width, meters
};

// 100 ft.
inline constexpr double kDefaultIntersectionRadius = 30.48;

struct MapModel {
  std::vector<IntersectionSite> intersections;
  std::vector<HighwaySegment> highways;
  double intersection_radius = kDefaultIntersectionRadius;

  // Throws ParseError: radius <= 0, polyline under 2 points, width <= 0,
  // repeated ids.
  void validate() const;
};

// {intersection_radius_m, intersections: [{id, x, y}],
//  highways: [{id, width_m, points: [[x, y], ...]}]}
MapModel map_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const MapModel& map);

struct PositionFix {
  double timestamp = 0.0;
  Point position;
};

double distance(Point a, Point b);
double distance_to_segment(Point p, Point a, Point b);
double distance_to_polyline(Point p, const std::vector<Point>& polyline);

// Intersection within the radius, else Highway within half the width of a
// polyline, else Road.
ContextState resolve_context(const MapModel& map, Point position);
inline ContextState resolve_context(const MapModel& map, const PositionFix& fix) {
  return resolve_context(map, fix.position);
}

// Debounced change stream. The first entry is the initial context at the
// first fix; a change is emitted once the new raw context has held for
// `hysteresis` consecutive fixes, stamped with the last of them.
// Throws EmptySequenceError for an empty track, TimestampOrderError when fix
// times do not strictly increase.
ContextTimeline context_timeline(const MapModel& map, const std::vector<PositionFix>& track,
                                 std::size_t hysteresis = 3);

}  // namespace hsshmm
