#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hsshmm/dss.hpp"
#include "hsshmm/gaussian_mixture.hpp"
#include "hsshmm/observation.hpp"
#include "hsshmm/registry.hpp"

namespace hsshmm {

struct EstimatorConfig {
  // Sliding window length in frames (5 s at 10 Hz).
  std::size_t window = 50;
  ContextMap context_map = ContextMap::defaults();
};

struct EstimateRecord {
  double timestamp = 0.0;
  std::string estimate;
  // One entry per metastate active when the frame was scored.
  std::map<std::string, LogLikelihood> scores;
  ContextState context;
  // Reconfigurations applied since the previous record.
  std::vector<ModificationEvent> modification_events;
};

// Online scorer: every active metastate is rescored over the last W frames
// and the argmax (lowest DSS index on ties) becomes the estimate.
class EstimatorSession {
 public:
  // Throws MissingModelError if `registry` lacks a metastate the initial
  // context needs.
  EstimatorSession(MetastateRegistry registry, ContextState initial,
                   EstimatorConfig config = {});
  // Starts from an explicit configuration (custom FSM); later context
  // changes still go through config.context_map.
  EstimatorSession(MetastateRegistry registry, DssConfiguration initial,
                   EstimatorConfig config = {});

  // Throws TimestampOrderError when obs is not newer than the last frame and
  // DimensionError when its width differs from the models'.
  EstimateRecord step(const ObservationVector& obs);

  // Reconfigures the DSS for `ctx` and resets window and scores. A pruned
  // current estimate falls back to Continue. No-op if ctx is unchanged.
  std::vector<ModificationEvent> notify_context_change(const ContextState& ctx,
                                                       double timestamp);

  // The current metastate's FSM row, most probable first, ties by id.
  std::vector<std::pair<std::string, double>> predict_next_metastate() const;

  const DssConfiguration& dss() const noexcept { return dss_; }
  const ContextState& context() const noexcept { return dss_.context(); }
  const std::deque<ObservationVector>& window() const noexcept { return window_; }
  const std::string& current_estimate() const noexcept { return estimate_; }
  const std::map<std::string, LogLikelihood>& scores() const noexcept { return scores_; }
  std::size_t frame_index() const noexcept { return frame_index_; }
  const EstimatorConfig& config() const noexcept { return config_; }

 private:
  void reset_scores();

  MetastateRegistry registry_;
  EstimatorConfig config_;
  DssConfiguration dss_;
  std::deque<ObservationVector> window_;
  std::string estimate_;
  std::map<std::string, LogLikelihood> scores_;
  std::size_t frame_index_ = 0;
  double last_timestamp_ = -std::numeric_limits<double>::infinity();
  std::vector<ModificationEvent> pending_;
};

// Index of the highest valid score, lowest index on ties; scores.size() when
// none is valid.
std::size_t select_estimate(const std::vector<LogLikelihood>& scores);

// Timestamps in a timeline must match an observation within this tolerance.
inline constexpr double kTimelineTolerance = 1e-6;

// Batch replay. Each timeline entry is applied just before the frame with
// the same timestamp; the first entry must sit on the first frame. An empty
// timeline means Road throughout. Throws TimelineError on misalignment.
std::vector<EstimateRecord> run_offline(const MetastateRegistry& registry,
                                        const ContextTimeline& timeline,
                                        const ObservationSequence& obs,
                                        const EstimatorConfig& config = {});

}  // namespace hsshmm
