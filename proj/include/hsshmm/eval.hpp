#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsshmm/estimator.hpp"
#include "hsshmm/trajectory.hpp"

#include "json.hpp"

namespace hsshmm {

// One maximal run of a ground-truth label.
struct EventInstance {
  std::string label;
  double onset = 0.0;
  double end = 0.0;              // timestamp of the run's last frame
  std::optional<double> latency; // first matching estimate minus onset
  bool detected() const { return latency.has_value(); }
};

struct EvalReport {
  std::size_t frames = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  // truth label -> estimated label -> frames
  std::map<std::string, std::map<std::string, std::size_t>> confusion;
  std::vector<EventInstance> events;
  double mean_latency = 0.0;  // over detected events
  std::vector<ModificationEvent> modifications;

  std::size_t count(const std::string& truth, const std::string& estimate) const;
};

// Timestamps must agree frame by frame within kTimelineTolerance; throws
// TimelineError otherwise and EmptySequenceError for no frames.
EvalReport evaluate(const std::vector<EstimateRecord>& records, const LabeledSequence& truth);

nlohmann::json to_json(const EvalReport& report);
void print_report(std::ostream& out, const EvalReport& report);

}  // namespace hsshmm
