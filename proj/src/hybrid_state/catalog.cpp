#include "hsshmm/catalog.hpp"

#include <cctype>

namespace hsshmm {

std::string_view label(EventKind kind) {
  switch (kind) {
    case EventKind::kContinue: return "Continue";
    case EventKind::kLeftTurn: return "Left Turn";
    case EventKind::kRightTurn: return "Right Turn";
    case EventKind::kStop: return "Stop";
    case EventKind::kLeftLaneChange: return "Left Lane Change";
    case EventKind::kRightLaneChange: return "Right Lane Change";
    case EventKind::kEnterHighway: return "Enter Highway";
    case EventKind::kExitHighway: return "Exit Highway";
  }
  return "";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (EventKind k : kAllEvents) {
    if (label(k) == s || slug(label(k)) == s) return k;
  }
  if (s == "Straight") return EventKind::kContinue;
  return std::nullopt;
}

std::string slug(std::string_view s) {
  std::string out;
  for (char c : s) {
    out += c == ' ' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

}  // namespace hsshmm
