#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace hsshmm {

// The eight driver event classes a metastate can represent.
enum class EventKind {
  kContinue,
  kLeftTurn,
  kRightTurn,
  kStop,
  kLeftLaneChange,
  kRightLaneChange,
  kEnterHighway,
  kExitHighway,
};

inline constexpr std::array<EventKind, 8> kAllEvents = {
    EventKind::kContinue,       EventKind::kLeftTurn,        EventKind::kRightTurn,
    EventKind::kStop,           EventKind::kLeftLaneChange,  EventKind::kRightLaneChange,
    EventKind::kEnterHighway,   EventKind::kExitHighway};

// Label of the metastate that every DSS configuration keeps.
inline constexpr std::string_view kContinueId = "Continue";

std::string_view label(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view label);

// Lower-case, underscore separated form of a label ("Left Turn" -> "left_turn"),
// used for file names.
std::string slug(std::string_view label);

}  // namespace hsshmm
