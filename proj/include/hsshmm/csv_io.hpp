#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsshmm/context.hpp"
#include "hsshmm/estimator.hpp"
#include "hsshmm/geo.hpp"
#include "hsshmm/trajectory.hpp"

namespace hsshmm {

// Shortest text that parses back to the same double.
std::string format_double(double v);

// Labeled sequences: timestamp, the nine feature columns in the default
// order, then optional label and rcs columns. Readers validate the header,
// field counts, numbers, strictly increasing timestamps and vehicle-frame
// ranges; every failure is a ParseError carrying the 1-based line.
void write_labeled_csv(std::ostream& out, const LabeledSequence& seq);
LabeledSequence read_labeled_csv(std::istream& in);

// A sequence whose frames carry no context column has an empty
// context_timeline. Otherwise the timeline is rebuilt from the rcs changes.
ContextTimeline timeline_from_contexts(const ObservationSequence& frames,
                                       const std::vector<ContextState>& contexts);

// timestamp,rcs
void write_timeline_csv(std::ostream& out, const ContextTimeline& timeline);
ContextTimeline read_timeline_csv(std::istream& in);

// timestamp,x,y
void write_track_csv(std::ostream& out, const std::vector<PositionFix>& track);
std::vector<PositionFix> read_track_csv(std::istream& in);

// timestamp, estimate, rcs, one log-likelihood column per metastate id
// (blank when inactive, "-inf" when active but impossible), then events
// joined by ';'. Columns cover the catalog labels plus any other id seen.
void write_records_csv(std::ostream& out, const std::vector<EstimateRecord>& records);
std::vector<EstimateRecord> read_records_csv(std::istream& in);

// File wrappers; open failures are ParseError (reads) or Error (writes).
LabeledSequence load_labeled_csv(const std::filesystem::path& path);
void save_labeled_csv(const std::filesystem::path& path, const LabeledSequence& seq);
ContextTimeline load_timeline_csv(const std::filesystem::path& path);
void save_timeline_csv(const std::filesystem::path& path, const ContextTimeline& timeline);
std::vector<PositionFix> load_track_csv(const std::filesystem::path& path);
std::vector<EstimateRecord> load_records_csv(const std::filesystem::path& path);
void save_records_csv(const std::filesystem::path& path, const std::vector<EstimateRecord>& records);

}  // namespace hsshmm
