#include "hsshmm/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "hsshmm/catalog.hpp"
#include "hsshmm/errors.hpp"

namespace hsshmm {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Line reader that strips '\r' and counts lines for error messages.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

// Finite numbers only, except "-inf" where a log-likelihood may appear.
double parse_double(const std::string& field, std::size_t line, const std::string& column,
                    bool allow_minus_inf = false) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (allow_minus_inf && field == "-inf") return -std::numeric_limits<double>::infinity();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (field.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError("bad number '" + field + "' in column " + column, line);
  }
  return v;
}

ContextState parse_context(const std::string& field, std::size_t line) {
  const auto rcs = parse_road_condition(field);
  if (!rcs) throw ParseError("unknown road condition '" + field + "'", line);
  return road_context(*rcs);
}

std::vector<std::string> read_header(LineReader& reader, const char* what) {
  std::string line;
  if (!reader.next(line)) throw ParseError(std::string(what) + ": missing header", 1);
  return split(line, ',');
}

void expect_fields(const std::vector<std::string>& fields, std::size_t n, std::size_t line) {
  if (fields.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " fields, found " + std::to_string(fields.size()), line);
  }
}

void check_increasing(double prev, double t, std::size_t line) {
  if (!(t > prev)) throw ParseError("timestamps must strictly increase", line);
}

template <typename Fn>
auto with_input(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return fn(in);
}

template <typename Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  fn(out);
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_labeled_csv(std::ostream& out, const LabeledSequence& seq) {
  const bool labeled = !seq.labels.empty();
  const bool contexts = !seq.contexts.empty();
  std::vector<std::string> header{"timestamp"};
  for (auto name : kFeatureNames) header.emplace_back(name);
  if (labeled) header.emplace_back("label");
  if (contexts) header.emplace_back("rcs");
  out << join(header, ',') << '\n';
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    out << format_double(seq.frames[i].timestamp);
    for (double v : seq.frames[i].features) out << ',' << format_double(v);
    if (labeled) out << ',' << seq.labels.at(i);
    if (contexts) out << ',' << to_string(seq.contexts.at(i).rcs);
    out << '\n';
  }
}

LabeledSequence read_labeled_csv(std::istream& in) {
  LineReader reader(in);
  const auto header = read_header(reader, "labeled CSV");
  std::vector<std::string> expected{"timestamp"};
  for (auto name : kFeatureNames) expected.emplace_back(name);
  std::size_t width = expected.size();
  bool has_label = false, has_rcs = false;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i < width) {
      if (header[i] != expected[i]) {
        throw ParseError("header column " + std::to_string(i + 1) + " is '" + header[i] + "', expected '" +
                             expected[i] + "'",
                         reader.number());
      }
    } else if (header[i] == "label" && !has_label && !has_rcs) {
      has_label = true;
    } else if (header[i] == "rcs" && !has_rcs) {
      has_rcs = true;
    } else {
      throw ParseError("unexpected header column '" + header[i] + "'", reader.number());
    }
  }
  if (header.size() < width) throw ParseError("header is missing feature columns", reader.number());
  width = header.size();

  LabeledSequence seq;
  std::string line;
  double prev = -std::numeric_limits<double>::infinity();
  while (reader.next(line)) {
    const auto fields = split(line, ',');
    expect_fields(fields, width, reader.number());
    ObservationVector o;
    o.timestamp = parse_double(fields[0], reader.number(), "timestamp");
    check_increasing(prev, o.timestamp, reader.number());
    prev = o.timestamp;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      o.features.push_back(parse_double(fields[i + 1], reader.number(), expected[i + 1]));
    }
    try {
      check_vehicle_frame(o);
    } catch (const Error& e) {
      throw ParseError(e.what(), reader.number());
    }
    std::size_t col = kFeatureCount + 1;
    if (has_label) {
      if (fields[col].empty()) throw ParseError("empty label", reader.number());
      seq.labels.push_back(fields[col++]);
    }
    if (has_rcs) seq.contexts.push_back(parse_context(fields[col], reader.number()));
    seq.frames.push_back(std::move(o));
  }
  seq.context_timeline = timeline_from_contexts(seq.frames, seq.contexts);
  return seq;
}

ContextTimeline timeline_from_contexts(const ObservationSequence& frames,
                                       const std::vector<ContextState>& contexts) {
  ContextTimeline out;
  for (std::size_t i = 0; i < contexts.size() && i < frames.size(); ++i) {
    if (out.empty() || !(out.back().second == contexts[i])) out.emplace_back(frames[i].timestamp, contexts[i]);
  }
  return out;
}

void write_timeline_csv(std::ostream& out, const ContextTimeline& timeline) {
  out << "timestamp,rcs\n";
  for (const auto& [t, ctx] : timeline) out << format_double(t) << ',' << to_string(ctx.rcs) << '\n';
}

ContextTimeline read_timeline_csv(std::istream& in) {
  LineReader reader(in);
  const auto header = read_header(reader, "timeline CSV");
  if (header != std::vector<std::string>{"timestamp", "rcs"}) {
    throw ParseError("timeline header must be 'timestamp,rcs'", reader.number());
  }
  ContextTimeline out;
  std::string line;
  double prev = -std::numeric_limits<double>::infinity();
  while (reader.next(line)) {
    const auto fields = split(line, ',');
    expect_fields(fields, 2, reader.number());
    const double t = parse_double(fields[0], reader.number(), "timestamp");
    check_increasing(prev, t, reader.number());
    prev = t;
    out.emplace_back(t, parse_context(fields[1], reader.number()));
  }
  return out;
}

void write_track_csv(std::ostream& out, const std::vector<PositionFix>& track) {
  out << "timestamp,x,y\n";
  for (const auto& f : track) {
    out << format_double(f.timestamp) << ',' << format_double(f.position.x) << ',' << format_double(f.position.y)
        << '\n';
  }
}

std::vector<PositionFix> read_track_csv(std::istream& in) {
  LineReader reader(in);
  const auto header = read_header(reader, "track CSV");
  if (header != std::vector<std::string>{"timestamp", "x", "y"}) {
    throw ParseError("track header must be 'timestamp,x,y'", reader.number());
  }
  std::vector<PositionFix> out;
  std::string line;
  double prev = -std::numeric_limits<double>::infinity();
  while (reader.next(line)) {
    const auto fields = split(line, ',');
    expect_fields(fields, 3, reader.number());
    PositionFix f;
    f.timestamp = parse_double(fields[0], reader.number(), "timestamp");
    check_increasing(prev, f.timestamp, reader.number());
    prev = f.timestamp;
    f.position = {parse_double(fields[1], reader.number(), "x"), parse_double(fields[2], reader.number(), "y")};
    out.push_back(f);
  }
  return out;
}

void write_records_csv(std::ostream& out, const std::vector<EstimateRecord>& records) {
  std::vector<std::string> ids;
  for (EventKind k : kAllEvents) ids.emplace_back(label(k));
  std::set<std::string> extra;
  for (const auto& r : records) {
    for (const auto& [id, ll] : r.scores) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) extra.insert(id);
    }
  }
  ids.insert(ids.end(), extra.begin(), extra.end());

  std::vector<std::string> header{"timestamp", "estimate", "rcs"};
  header.insert(header.end(), ids.begin(), ids.end());
  header.emplace_back("events");
  out << join(header, ',') << '\n';
  for (const auto& r : records) {
    out << format_double(r.timestamp) << ',' << r.estimate << ',' << to_string(r.context.rcs);
    for (const auto& id : ids) {
      out << ',';
      const auto it = r.scores.find(id);
      if (it != r.scores.end()) out << (it->second.valid ? format_double(it->second.value) : "-inf");
    }
    std::vector<std::string> events;
    for (const auto& e : r.modification_events) events.push_back(to_string(e));
    out << ',' << join(events, ';') << '\n';
  }
}

std::vector<EstimateRecord> read_records_csv(std::istream& in) {
  LineReader reader(in);
  const auto header = read_header(reader, "records CSV");
  if (header.size() < 4 || header[0] != "timestamp" || header[1] != "estimate" || header[2] != "rcs" ||
      header.back() != "events") {
    throw ParseError("records header must be 'timestamp,estimate,rcs,<ids...>,events'", reader.number());
  }
  const std::vector<std::string> ids(header.begin() + 3, header.end() - 1);

  std::vector<EstimateRecord> out;
  std::string line;
  double prev = -std::numeric_limits<double>::infinity();
  ContextState previous_context;
  while (reader.next(line)) {
    const auto fields = split(line, ',');
    expect_fields(fields, header.size(), reader.number());
    EstimateRecord r;
    r.timestamp = parse_double(fields[0], reader.number(), "timestamp");
    check_increasing(prev, r.timestamp, reader.number());
    prev = r.timestamp;
    r.estimate = fields[1];
    r.context = parse_context(fields[2], reader.number());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& f = fields[3 + i];
      if (f.empty()) continue;
      const double v = parse_double(f, reader.number(), ids[i], true);
      r.scores.emplace(ids[i], std::isfinite(v) ? LogLikelihood::of(v) : LogLikelihood{});
    }
    if (!r.scores.contains(r.estimate)) {
      throw ParseError("estimate '" + r.estimate + "' has no score column", reader.number());
    }
    if (!fields.back().empty()) {
      for (const auto& item : split(fields.back(), ';')) {
        ModificationEvent e;
        if (item.starts_with("graft:")) {
          e.kind = ModificationEvent::Kind::kGraft;
        } else if (item.starts_with("prune:")) {
          e.kind = ModificationEvent::Kind::kPrune;
        } else {
          throw ParseError("bad modification event '" + item + "'", reader.number());
        }
        e.metastate_id = item.substr(6);
        e.timestamp = r.timestamp;
        e.from = previous_context;
        e.to = r.context;
        r.modification_events.push_back(std::move(e));
      }
    }
    previous_context = r.context;
    out.push_back(std::move(r));
  }
  return out;
}

LabeledSequence load_labeled_csv(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_labeled_csv(in); });
}

void save_labeled_csv(const std::filesystem::path& path, const LabeledSequence& seq) {
  with_output(path, [&](std::ostream& out) { write_labeled_csv(out, seq); });
}

ContextTimeline load_timeline_csv(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_timeline_csv(in); });
}

void save_timeline_csv(const std::filesystem::path& path, const ContextTimeline& timeline) {
  with_output(path, [&](std::ostream& out) { write_timeline_csv(out, timeline); });
}

std::vector<PositionFix> load_track_csv(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_track_csv(in); });
}

std::vector<EstimateRecord> load_records_csv(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_records_csv(in); });
}

void save_records_csv(const std::filesystem::path& path, const std::vector<EstimateRecord>& records) {
  with_output(path, [&](std::ostream& out) { write_records_csv(out, records); });
}

}  // namespace hsshmm
