#include "hsshmm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hsshmm/catalog.hpp"
#include "hsshmm/errors.hpp"

namespace hsshmm {

namespace {

constexpr double kLeft = 170.0;
constexpr double kPlotWidth = 800.0;
constexpr double kRowHeight = 14.0;
constexpr double kStripGap = 34.0;

constexpr const char* kPalette[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                    "#8172b3", "#937860", "#da8bc3", "#8c8c8c"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double t0 = 0.0;
  double t1 = 1.0;
  double x(double t) const { return kLeft + kPlotWidth * (t - t0) / (t1 - t0); }
};

// [start, end) of frame i on the time axis.
std::pair<double, double> frame_span(const std::vector<EstimateRecord>& r, std::size_t i, double step) {
  const double a = r[i].timestamp;
  const double b = i + 1 < r.size() ? r[i + 1].timestamp : a + step;
  return {a, b};
}

class Strip {
 public:
  Strip(std::ostringstream& out, const std::string& id, const std::string& title,
        const std::vector<std::string>& rows, double top, const Axis& axis)
      : out_(out), rows_(rows), top_(top), axis_(axis) {
    out_ << "<g class=\"strip\" id=\"" << id << "\">\n";
    out_ << "<text class=\"strip-label\" x=\"10\" y=\"" << num(top - 8) << "\" font-weight=\"bold\">"
         << escape(title) << "</text>\n";
    out_ << "<rect class=\"frame\" x=\"" << num(kLeft) << "\" y=\"" << num(top) << "\" width=\""
         << num(kPlotWidth) << "\" height=\"" << num(height()) << "\" fill=\"#f7f7f7\" stroke=\"#444\"/>\n";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      out_ << "<text class=\"row-label\" x=\"" << num(kLeft - 6) << "\" y=\"" << num(row_y(r) + kRowHeight - 3)
           << "\" text-anchor=\"end\" font-size=\"10\">" << escape(rows_[r]) << "</text>\n";
    }
  }
  ~Strip() { out_ << "</g>\n"; }

  double height() const { return kRowHeight * static_cast<double>(rows_.size()); }
  double row_y(std::size_t r) const { return top_ + kRowHeight * static_cast<double>(r); }

  void bar(std::size_t row, double a, double b, const char* color) {
    out_ << "<rect x=\"" << num(axis_.x(a)) << "\" y=\"" << num(row_y(row) + 2) << "\" width=\""
         << num(std::max(axis_.x(b) - axis_.x(a), 0.5)) << "\" height=\"" << num(kRowHeight - 4) << "\" fill=\""
         << color << "\"/>\n";
  }

  void marker(double t, const std::string& title) {
    out_ << "<line class=\"modification\" x1=\"" << num(axis_.x(t)) << "\" x2=\"" << num(axis_.x(t)) << "\" y1=\""
         << num(top_) << "\" y2=\"" << num(top_ + height()) << "\" stroke=\"#000\" stroke-dasharray=\"3,2\">"
         << "<title>" << escape(title) << "</title></line>\n";
  }

 private:
  std::ostringstream& out_;
  std::vector<std::string> rows_;
  double top_;
  Axis axis_;
};

// Draws one bar per maximal run of frames where `on(row, i)` holds.
template <typename Pred>
void draw_runs(Strip& strip, const std::vector<EstimateRecord>& rec, std::size_t rows, double step,
               Pred on, const char* (*color)(std::size_t)) {
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t i = 0;
    while (i < rec.size()) {
      if (!on(r, i)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < rec.size() && on(r, j + 1)) ++j;
      strip.bar(r, frame_span(rec, i, step).first, frame_span(rec, j, step).second, color(r));
      i = j + 1;
    }
  }
}

const char* palette(std::size_t r) { return kPalette[r % std::size(kPalette)]; }

}  // namespace

std::string render_timeline_svg(const std::vector<EstimateRecord>& records) {
  if (records.empty()) throw EmptySequenceError("no records to plot");

  std::vector<std::string> ids;
  for (EventKind k : kAllEvents) ids.emplace_back(label(k));
  for (const auto& r : records) {
    for (const auto& [id, ll] : r.scores) {
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    if (std::find(ids.begin(), ids.end(), r.estimate) == ids.end()) ids.push_back(r.estimate);
  }
  const std::vector<std::string> roads = {"Intersection", "Highway", "Road"};

  // Nominal frame period: median spacing, 1 s for a single frame.
  double step = 1.0;
  if (records.size() > 1) {
    std::vector<double> gaps;
    for (std::size_t i = 1; i < records.size(); ++i) gaps.push_back(records[i].timestamp - records[i - 1].timestamp);
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    step = gaps[gaps.size() / 2];
  }
  const Axis axis{records.front().timestamp, records.back().timestamp + step};

  const double top1 = 40.0;
  const double top2 = top1 + kRowHeight * static_cast<double>(ids.size()) + kStripGap;
  const double top3 = top2 + kRowHeight * static_cast<double>(roads.size()) + kStripGap;
  const double axis_y = top3 + kRowHeight * static_cast<double>(ids.size()) + 6.0;
  const double height = axis_y + 40.0;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kLeft + kPlotWidth + 20) << "\" height=\""
      << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<text x=\"10\" y=\"18\" font-size=\"14\">Metastate estimate, road condition and active DSS</text>\n";
  {
    Strip s(out, "strip-estimate", "Estimated metastate", ids, top1, axis);
    draw_runs(s, records, ids.size(), step, [&](std::size_t r, std::size_t i) { return records[i].estimate == ids[r]; },
              palette);
  }
  {
    Strip s(out, "strip-road", "Road condition", roads, top2, axis);
    draw_runs(s, records, roads.size(), step,
              [&](std::size_t r, std::size_t i) { return to_string(records[i].context.rcs) == roads[r]; },
              [](std::size_t) { return "#555555"; });
  }
  {
    Strip s(out, "strip-active", "Active metastates", ids, top3, axis);
    draw_runs(s, records, ids.size(), step,
              [&](std::size_t r, std::size_t i) { return records[i].scores.contains(ids[r]); }, palette);
    for (const auto& r : records) {
      if (r.modification_events.empty()) continue;
      std::string title;
      for (const auto& e : r.modification_events) title += (title.empty() ? "" : "; ") + to_string(e);
      s.marker(r.timestamp, title);
    }
  }

  // Shared time axis with about ten ticks on a 1-2-5 grid.
  const double span = axis.t1 - axis.t0;
  const double raw = span / 10.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double tick = raw / mag < 2 ? 2 * mag : raw / mag < 5 ? 5 * mag : 10 * mag;
  out << "<g class=\"time-axis\">\n";
  out << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + kPlotWidth) << "\" y1=\"" << num(axis_y)
      << "\" y2=\"" << num(axis_y) << "\" stroke=\"#444\"/>\n";
  for (double t = std::ceil(axis.t0 / tick) * tick; t <= axis.t1 + 1e-9; t += tick) {
    out << "<line x1=\"" << num(axis.x(t)) << "\" x2=\"" << num(axis.x(t)) << "\" y1=\"" << num(axis_y)
        << "\" y2=\"" << num(axis_y + 4) << "\" stroke=\"#444\"/>";
    out << "<text x=\"" << num(axis.x(t)) << "\" y=\"" << num(axis_y + 16) << "\" text-anchor=\"middle\" font-size=\"10\">"
        << num(t) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + kPlotWidth / 2) << "\" y=\"" << num(axis_y + 32)
      << "\" text-anchor=\"middle\">time (s)</text>\n</g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace hsshmm
