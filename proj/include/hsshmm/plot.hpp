#pragma once

#include <string>
#include <vector>

#include "hsshmm/estimator.hpp"

namespace hsshmm {

// Three strips over a shared time axis: the estimated metastate, the road
// condition, and the active metastate set (graft/prune instants marked).
// Each strip is a <g class="strip"> with a <text class="strip-label"> and a
// <rect class="frame"> spanning the common x-extent. Throws
// EmptySequenceError for no records.
std::string render_timeline_svg(const std::vector<EstimateRecord>& records);

}  // namespace hsshmm
