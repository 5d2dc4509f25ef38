#include "hsshmm/geo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hsshmm/errors.hpp"

namespace hsshmm {

void MapModel::validate() const {
  if (!(intersection_radius > 0.0) || !std::isfinite(intersection_radius)) {
    throw ParseError("map: intersection radius must be positive");
  }
  std::set<std::string> ids;
  for (const auto& i : intersections) {
    if (!ids.insert(i.id).second) throw ParseError("map: duplicate id '" + i.id + "'");
  }
  for (const auto& h : highways) {
    if (!ids.insert(h.id).second) throw ParseError("map: duplicate id '" + h.id + "'");
    if (h.polyline.size() < 2) throw ParseError("map: highway '" + h.id + "' needs at least 2 points");
    if (!(h.width > 0.0)) throw ParseError("map: highway '" + h.id + "' needs a positive width");
  }
}

MapModel map_from_json(const nlohmann::json& doc) {
  MapModel map;
  try {
    map.intersection_radius = doc.value("intersection_radius_m", kDefaultIntersectionRadius);
    for (const auto& i : doc.value("intersections", nlohmann::json::array())) {
      map.intersections.push_back({i.at("id").get<std::string>(), {i.at("x").get<double>(), i.at("y").get<double>()}});
    }
    for (const auto& h : doc.value("highways", nlohmann::json::array())) {
      HighwaySegment seg{h.at("id").get<std::string>(), {}, h.at("width_m").get<double>()};
      for (const auto& pt : h.at("points")) {
        if (!pt.is_array() || pt.size() != 2) throw ParseError("map: points must be [x, y] pairs");
        seg.polyline.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      map.highways.push_back(std::move(seg));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("map: ") + e.what());
  }
  map.validate();
  return map;
}

nlohmann::json to_json(const MapModel& map) {
  nlohmann::json doc;
  doc["intersection_radius_m"] = map.intersection_radius;
  doc["intersections"] = nlohmann::json::array();
  for (const auto& i : map.intersections) {
    doc["intersections"].push_back({{"id", i.id}, {"x", i.position.x}, {"y", i.position.y}});
  }
  doc["highways"] = nlohmann::json::array();
  for (const auto& h : map.highways) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : h.polyline) pts.push_back({p.x, p.y});
    doc["highways"].push_back({{"id", h.id}, {"width_m", h.width}, {"points", pts}});
  }
  return doc;
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance_to_segment(Point p, Point a, Point b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return distance(p, {a.x + t * dx, a.y + t * dy});
}

double distance_to_polyline(Point p, const std::vector<Point>& polyline) {
  if (polyline.size() == 1) return distance(p, polyline.front());
  double best = INFINITY;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    best = std::min(best, distance_to_segment(p, polyline[i - 1], polyline[i]));
  }
  return best;
}

ContextState resolve_context(const MapModel& map, Point position) {
  for (const auto& i : map.intersections) {
    if (distance(position, i.position) <= map.intersection_radius) {
      return road_context(RoadCondition::kIntersection);
    }
  }
  for (const auto& h : map.highways) {
    if (distance_to_polyline(position, h.polyline) <= 0.5 * h.width) {
      return road_context(RoadCondition::kHighway);
    }
  }
  return road_context(RoadCondition::kRoad);
}

ContextTimeline context_timeline(const MapModel& map, const std::vector<PositionFix>& track,
                                 std::size_t hysteresis) {
  if (track.empty()) throw EmptySequenceError("position track is empty");
  hysteresis = std::max<std::size_t>(hysteresis, 1);

  ContextTimeline out{{track.front().timestamp, resolve_context(map, track.front())}};
  ContextState candidate = out.back().second;
  std::size_t run = 0;
  for (std::size_t i = 1; i < track.size(); ++i) {
    if (!(track[i].timestamp > track[i - 1].timestamp)) {
      throw TimestampOrderError("position fixes must have strictly increasing timestamps");
    }
    const ContextState raw = resolve_context(map, track[i]);
    if (raw == out.back().second) {
      run = 0;
      continue;
    }
    if (run > 0 && raw == candidate) {
      ++run;
    } else {
      candidate = raw;
      run = 1;
    }
    if (run >= hysteresis) {
      out.emplace_back(track[i].timestamp, raw);
      run = 0;
    }
  }
  return out;
}

}  // namespace hsshmm
