#include "hsshmm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsshmm/catalog.hpp"
#include "hsshmm/errors.hpp"
#include "hsshmm/hmm.hpp"

namespace hsshmm {

EstimatorSession::EstimatorSession(MetastateRegistry registry, ContextState initial,
                                   EstimatorConfig config)
    : registry_(std::move(registry)),
      config_(std::move(config)),
      dss_(dss_for_context(initial, registry_, config_.context_map)),
      estimate_(kContinueId) {
  if (config_.window == 0) throw Error("estimator window must hold at least one frame");
  reset_scores();
}

EstimatorSession::EstimatorSession(MetastateRegistry registry, DssConfiguration initial,
                                   EstimatorConfig config)
    : registry_(std::move(registry)),
      config_(std::move(config)),
      dss_(std::move(initial)),
      estimate_(kContinueId) {
  if (config_.window == 0) throw Error("estimator window must hold at least one frame");
  reset_scores();
}

std::size_t select_estimate(const std::vector<LogLikelihood>& scores) {
  std::size_t best = scores.size();
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].valid && (best == scores.size() || scores[i].value > scores[best].value)) best = i;
  }
  return best;
}

void EstimatorSession::reset_scores() {
  scores_.clear();
  for (const auto& m : dss_.metastates()) scores_.emplace(m.id, LogLikelihood{});
}

EstimateRecord EstimatorSession::step(const ObservationVector& obs) {
  if (!(obs.timestamp > last_timestamp_)) {
    std::ostringstream msg;
    msg << "frame at t=" << obs.timestamp << " is not after t=" << last_timestamp_;
    throw TimestampOrderError(msg.str());
  }
  const std::size_t dim = dss_.metastates().front().model->dimension();
  if (obs.features.size() != dim) {
    throw DimensionError("observation has " + std::to_string(obs.features.size()) +
                         " features, models expect " + std::to_string(dim));
  }

  window_.push_back(obs);
  while (window_.size() > config_.window) window_.pop_front();
  last_timestamp_ = obs.timestamp;
  ++frame_index_;

  // The deque is not contiguous; copy once per frame.
  const std::vector<ObservationVector> frames(window_.begin(), window_.end());
  std::vector<LogLikelihood> lls;
  lls.reserve(dss_.size());
  for (const auto& m : dss_.metastates()) {
    lls.push_back(forward_log_likelihood(*m.model, frames));
    scores_[m.id] = lls.back();
  }
  const std::size_t best = select_estimate(lls);
  // Every model ruled the window impossible: keep the previous estimate.
  if (best < dss_.size()) estimate_ = dss_.metastates()[best].id;

  EstimateRecord rec;
  rec.timestamp = obs.timestamp;
  rec.estimate = estimate_;
  rec.scores = scores_;
  rec.context = dss_.context();
  rec.modification_events = std::move(pending_);
  pending_.clear();
  return rec;
}

std::vector<ModificationEvent> EstimatorSession::notify_context_change(const ContextState& ctx,
                                                                       double timestamp) {
  if (ctx == dss_.context()) return {};
  auto change = apply_context_change(dss_, dss_.context(), ctx, registry_, config_.context_map,
                                     timestamp);
  dss_ = std::move(change.dss);
  window_.clear();
  reset_scores();
  if (!dss_.contains(estimate_)) estimate_ = kContinueId;
  pending_.insert(pending_.end(), change.events.begin(), change.events.end());
  return change.events;
}

std::vector<std::pair<std::string, double>> EstimatorSession::predict_next_metastate() const {
  const std::size_t row = dss_.index_of(estimate_);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(dss_.size());
  for (std::size_t j = 0; j < dss_.size(); ++j) {
    out.emplace_back(dss_.metastates()[j].id, dss_.fsm()(row, j));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

namespace {

bool same_time(double a, double b) { return std::abs(a - b) <= kTimelineTolerance; }

}  // namespace

std::vector<EstimateRecord> run_offline(const MetastateRegistry& registry,
                                        const ContextTimeline& timeline,
                                        const ObservationSequence& obs,
                                        const EstimatorConfig& config) {
  if (obs.empty()) return {};
  if (!timeline.empty() && !same_time(timeline.front().first, obs.front().timestamp)) {
    throw TimelineError("context timeline starts at t=" + std::to_string(timeline.front().first) +
                        " but observations start at t=" + std::to_string(obs.front().timestamp));
  }
  for (std::size_t k = 1; k < timeline.size(); ++k) {
    if (!(timeline[k].first > timeline[k - 1].first)) {
      throw TimelineError("context timeline timestamps must strictly increase");
    }
  }

  const ContextState initial = timeline.empty() ? ContextState{} : timeline.front().second;
  EstimatorSession session(registry, initial, config);
  std::vector<EstimateRecord> out;
  out.reserve(obs.size());
  std::size_t next = 1;
  for (const auto& frame : obs) {
    if (next < timeline.size() && timeline[next].first < frame.timestamp - kTimelineTolerance) {
      throw TimelineError("context change at t=" + std::to_string(timeline[next].first) +
                          " does not match any observation timestamp");
    }
    if (next < timeline.size() && same_time(timeline[next].first, frame.timestamp)) {
      session.notify_context_change(timeline[next].second, frame.timestamp);
      ++next;
    }
    out.push_back(session.step(frame));
  }
  if (next < timeline.size()) {
    throw TimelineError("context change at t=" + std::to_string(timeline[next].first) +
                        " is past the last observation");
  }
  return out;
}

}  // namespace hsshmm
