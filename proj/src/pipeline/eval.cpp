#include "hsshmm/eval.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hsshmm/errors.hpp"

namespace hsshmm {

std::size_t EvalReport::count(const std::string& truth, const std::string& estimate) const {
  const auto row = confusion.find(truth);
  if (row == confusion.end()) return 0;
  const auto cell = row->second.find(estimate);
  return cell == row->second.end() ? 0 : cell->second;
}

EvalReport evaluate(const std::vector<EstimateRecord>& records, const LabeledSequence& truth) {
  if (records.empty()) throw EmptySequenceError("no records to evaluate");
  if (truth.labels.size() != truth.frames.size()) throw TimelineError("truth sequence has no labels");
  if (records.size() != truth.frames.size()) {
    throw TimelineError("records have " + std::to_string(records.size()) + " frames, truth has " +
                        std::to_string(truth.frames.size()));
  }

  EvalReport rep;
  rep.frames = records.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double t = truth.frames[i].timestamp;
    if (std::abs(records[i].timestamp - t) > kTimelineTolerance) {
      throw TimelineError("frame " + std::to_string(i) + " is at t=" + std::to_string(records[i].timestamp) +
                          " in the records but t=" + std::to_string(t) + " in the truth");
    }
    const auto& want = truth.labels[i];
    const auto& got = records[i].estimate;
    ++rep.confusion[want][got];
    rep.correct += want == got;

    if (i == 0 || truth.labels[i - 1] != want) rep.events.push_back({want, t, t, std::nullopt});
    auto& ev = rep.events.back();
    ev.end = t;
    if (!ev.latency && got == want) ev.latency = t - ev.onset;

    rep.modifications.insert(rep.modifications.end(), records[i].modification_events.begin(),
                             records[i].modification_events.end());
  }
  rep.accuracy = static_cast<double>(rep.correct) / static_cast<double>(rep.frames);
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& ev : rep.events) {
    if (ev.latency) {
      sum += *ev.latency;
      ++n;
    }
  }
  rep.mean_latency = n ? sum / static_cast<double>(n) : 0.0;
  return rep;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json doc;
  doc["frames"] = report.frames;
  doc["correct"] = report.correct;
  doc["accuracy"] = report.accuracy;
  doc["mean_latency_s"] = report.mean_latency;
  doc["confusion"] = nlohmann::json::object();
  for (const auto& [truth, row] : report.confusion) {
    for (const auto& [est, n] : row) doc["confusion"][truth][est] = n;
  }
  doc["events"] = nlohmann::json::array();
  for (const auto& ev : report.events) {
    doc["events"].push_back({{"label", ev.label},
                             {"onset_s", ev.onset},
                             {"end_s", ev.end},
                             {"detected", ev.detected()},
                             {"latency_s", ev.latency ? nlohmann::json(*ev.latency) : nlohmann::json()}});
  }
  doc["modifications"] = nlohmann::json::array();
  for (const auto& m : report.modifications) {
    doc["modifications"].push_back({{"timestamp", m.timestamp}, {"event", to_string(m)}});
  }
  return doc;
}

void print_report(std::ostream& out, const EvalReport& report) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "frames %zu  correct %zu  accuracy %.4f  mean latency %.2f s\n", report.frames,
                report.correct, report.accuracy, report.mean_latency);
  out << buf << "\nconfusion (truth -> estimate: frames)\n";
  for (const auto& [truth, row] : report.confusion) {
    for (const auto& [est, n] : row) {
      std::snprintf(buf, sizeof buf, "  %-18s -> %-18s %6zu\n", truth.c_str(), est.c_str(), n);
      out << buf;
    }
  }
  out << "\nevents\n";
  for (const auto& ev : report.events) {
    if (ev.latency) {
      std::snprintf(buf, sizeof buf, "  %8.1f-%-8.1f %-18s latency %.1f s\n", ev.onset, ev.end, ev.label.c_str(),
                    *ev.latency);
    } else {
      std::snprintf(buf, sizeof buf, "  %8.1f-%-8.1f %-18s missed\n", ev.onset, ev.end, ev.label.c_str());
    }
    out << buf;
  }
  if (!report.modifications.empty()) {
    out << "\nmodifications\n";
    for (const auto& m : report.modifications) {
      std::snprintf(buf, sizeof buf, "  %8.1f %s\n", m.timestamp, to_string(m).c_str());
      out << buf;
    }
  }
}

}  // namespace hsshmm
