#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hsshmm/catalog.hpp"
#include "hsshmm/csv_io.hpp"
#include "hsshmm/errors.hpp"
#include "hsshmm/eval.hpp"
#include "hsshmm/geo.hpp"
#include "hsshmm/model_io.hpp"
#include "hsshmm/plot.hpp"
#include "hsshmm/registry.hpp"
#include "hsshmm/training.hpp"
#include "hsshmm/trajectory.hpp"

namespace hsshmm::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Values the --config file may override.
struct Settings {
  std::size_t window = 50;
  std::size_t states = 4;
  std::size_t mixtures = 2;
  double covariance_floor = kDefaultCovarianceFloor;
  std::optional<double> intersection_radius;
  std::size_t hysteresis = 3;
  std::size_t max_iters = 100;
  double probability_floor = 1e-3;
  ContextMap context_map = ContextMap::defaults();
};

Settings load_settings(const std::string& path) {
  Settings s;
  if (path.empty()) return s;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw ParseError("config " + path + " must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "window") s.window = value.get<std::size_t>();
      else if (key == "states") s.states = value.get<std::size_t>();
      else if (key == "mixtures") s.mixtures = value.get<std::size_t>();
      else if (key == "covariance_floor") s.covariance_floor = value.get<double>();
      else if (key == "intersection_radius") s.intersection_radius = value.get<double>();
      else if (key == "hysteresis") s.hysteresis = value.get<std::size_t>();
      else if (key == "max_iters") s.max_iters = value.get<std::size_t>();
      else if (key == "probability_floor") s.probability_floor = value.get<double>();
      else if (key == "context_map") s.context_map = ContextMap::from_json(value);
      else throw ParseError("config " + path + ": unknown key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  if (s.window == 0 || s.states == 0 || s.mixtures == 0 || s.hysteresis == 0) {
    throw ParseError("config " + path + ": window, states, mixtures and hysteresis must be positive");
  }
  return s;
}

std::vector<std::string> feature_order() { return {kFeatureNames.begin(), kFeatureNames.end()}; }

std::vector<fs::path> csv_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

// Maximal runs of each label (length >= 2, Baum-Welch needs a transition).
std::map<std::string, std::vector<ObservationSequence>> labeled_runs(const std::vector<fs::path>& files) {
  std::map<std::string, std::vector<ObservationSequence>> runs;
  for (const auto& f : files) {
    const auto seq = load_labeled_csv(f);
    std::size_t i = 0;
    while (i < seq.labels.size()) {
      std::size_t j = i;
      while (j + 1 < seq.labels.size() && seq.labels[j + 1] == seq.labels[i]) ++j;
      if (j > i) runs[seq.labels[i]].emplace_back(seq.frames.begin() + i, seq.frames.begin() + j + 1);
      i = j + 1;
    }
  }
  return runs;
}

std::vector<std::string> ordered_labels(const std::map<std::string, std::vector<ObservationSequence>>& runs) {
  std::vector<std::string> out;
  for (EventKind k : kAllEvents) {
    if (runs.contains(std::string(label(k)))) out.emplace_back(label(k));
  }
  for (const auto& [l, seqs] : runs) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

EventKind event_kind(const std::string& name) {
  const auto k = parse_event_kind(name);
  if (!k) throw ParseError("unknown event '" + name + "'");
  return *k;
}

void write_json(const fs::path& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << std::setw(2) << doc << '\n';
  if (!f) throw Error("failed writing " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("failed writing " + path.string());
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct TrainArgs {
  std::string data;
  std::string event;
  std::string out;
};

void cmd_train(const TrainArgs& a, const Settings& s, std::uint64_t seed, std::ostream& out) {
  const auto runs = labeled_runs(csv_files(a.data));
  TrainingConfig config = vehicle_training_config(seed);
  config.max_iters = s.max_iters;
  config.covariance_floor = s.covariance_floor;
  config.probability_floor = s.probability_floor;

  std::vector<std::string> labels;
  if (!a.event.empty()) {
    const std::string wanted(label(event_kind(a.event)));
    if (!runs.contains(wanted)) throw Error("no sequences found for '" + wanted + "' in " + a.data);
    labels.push_back(wanted);
  } else {
    labels = ordered_labels(runs);
    if (labels.empty()) throw Error("no sequences found in " + a.data);
    fs::create_directories(a.out);
  }

  for (const auto& l : labels) {
    const auto& seqs = runs.at(l);
    const auto result = baum_welch_train(seqs, s.states, s.mixtures, config);
    const fs::path path = a.event.empty() ? fs::path(a.out) / (slug(l) + ".json") : fs::path(a.out);
    save_model({l, result.model, feature_order(), utc_timestamp_now(), seed}, path);
    out << l << ": " << seqs.size() << " sequences, " << result.iterations << " iterations"
        << (result.converged ? " (converged)" : "") << ", log-likelihood "
        << fixed(result.log_likelihood_history.back(), 3) << " -> " << path.string() << '\n';
    for (auto w : result.warnings) out << "  warning: " << to_string(w) << '\n';
  }
}

struct SimulateArgs {
  std::string script;
  std::string example;
  std::string out;
  std::string timeline;
  std::size_t corpus = 0;
  std::string event;
  std::string out_dir;
};

void cmd_simulate(const SimulateArgs& a, std::uint64_t seed, std::ostream& out) {
  if (a.corpus > 0) {
    if (a.out_dir.empty()) throw Error("--corpus needs --out-dir");
    fs::create_directories(a.out_dir);
    std::vector<EventKind> kinds;
    if (a.event.empty()) kinds.assign(kAllEvents.begin(), kAllEvents.end());
    else kinds.push_back(event_kind(a.event));
    for (EventKind k : kinds) {
      const auto corpus = synthetic_corpus(k, a.corpus, seed);
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        char name[16];
        std::snprintf(name, sizeof name, "_%03zu.csv", i);
        save_labeled_csv(fs::path(a.out_dir) / (slug(label(k)) + name), corpus[i]);
      }
      out << label(k) << ": " << corpus.size() << " sequences\n";
    }
    return;
  }

  RouteScript script;
  if (!a.script.empty()) {
    std::ifstream in(a.script);
    if (!in) throw ParseError("cannot open script " + a.script);
    try {
      script = route_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ParseError("script " + a.script + ": " + e.what());
    }
  } else if (a.example == "example1") {
    script = example1_route();
  } else if (a.example == "highway") {
    script = highway_route();
  } else {
    throw Error("simulate needs --script, --example or --corpus");
  }
  script.seed = seed;
  if (a.out.empty()) throw Error("simulate needs --out");

  const auto seq = generate_route(script);
  save_labeled_csv(a.out, seq);
  if (!a.timeline.empty()) save_timeline_csv(a.timeline, seq.context_timeline);
  out << "frames: " << seq.frames.size() << "  duration: " << fixed(seq.frames.back().timestamp, 1)
      << " s  context entries: " << seq.context_timeline.size() << '\n';
  for (const auto& [t, ctx] : seq.context_timeline) out << "  " << fixed(t, 1) << " " << to_string(ctx.rcs) << '\n';
}

struct EstimateArgs {
  std::string models;
  std::string input;
  std::string timeline;
  std::string map;
  std::string track;
  std::string out;
};

void cmd_estimate(const EstimateArgs& a, const Settings& s, std::ostream& out) {
  const auto registry = MetastateRegistry::load_directory(a.models, feature_order());
  const auto seq = load_labeled_csv(a.input);

  ContextTimeline timeline = seq.context_timeline;
  if (!a.timeline.empty()) {
    timeline = load_timeline_csv(a.timeline);
  } else if (!a.map.empty()) {
    if (a.track.empty()) throw Error("--map needs --track");
    std::ifstream in(a.map);
    if (!in) throw ParseError("cannot open map " + a.map);
    MapModel map;
    try {
      map = map_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw ParseError("map " + a.map + ": " + e.what());
    }
    if (s.intersection_radius) map.intersection_radius = *s.intersection_radius;
    map.validate();
    timeline = context_timeline(map, load_track_csv(a.track), s.hysteresis);
  }

  EstimatorConfig config;
  config.window = s.window;
  config.context_map = s.context_map;
  const auto records = run_offline(registry, timeline, seq.frames, config);
  save_records_csv(a.out, records);

  std::size_t mods = 0;
  for (const auto& r : records) mods += r.modification_events.size();
  out << "frames: " << records.size() << "  models: " << registry.size() << "  window: " << s.window
      << "  modification events: " << mods << '\n';
  for (const auto& r : records) {
    for (const auto& e : r.modification_events) out << "  " << fixed(e.timestamp, 1) << " " << to_string(e) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driver-behavior estimation with context-grafted HMM metastates", "hsshmm"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  std::string config_path;
  app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--config", config_path, "JSON settings file")->check(CLI::ExistingFile);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train metastate models from labeled CSVs");
  train_cmd->add_option("--data", train.data, "Directory of labeled CSVs")->required();
  train_cmd->add_option("--event", train.event, "Metastate label (default: every label found)");
  train_cmd->add_option("--out", train.out, "Model file, or directory without --event")->required();

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Generate synthetic labeled drives");
  auto* script_opt = sim_cmd->add_option("--script", sim.script, "Route script JSON");
  sim_cmd->add_option("--example", sim.example, "Built-in route")
      ->check(CLI::IsMember({"example1", "highway"}))
      ->excludes(script_opt);
  sim_cmd->add_option("--out", sim.out, "Labeled CSV to write");
  sim_cmd->add_option("--timeline", sim.timeline, "Context timeline CSV to write");
  sim_cmd->add_option("--corpus", sim.corpus, "Training sequences per event");
  sim_cmd->add_option("--event", sim.event, "Restrict --corpus to one event");
  sim_cmd->add_option("--out-dir", sim.out_dir, "Directory for --corpus output");

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Run the windowed estimator over a CSV");
  est_cmd->add_option("--models", est.models, "Directory of model JSON files")->required();
  est_cmd->add_option("--input", est.input, "Observation CSV")->required();
  auto* tl_opt = est_cmd->add_option("--timeline", est.timeline, "Context timeline CSV");
  est_cmd->add_option("--map", est.map, "Map JSON")->excludes(tl_opt);
  est_cmd->add_option("--track", est.track, "Position track CSV for --map");
  est_cmd->add_option("--out", est.out, "Records CSV to write")->required();

  std::string records_path, truth_path, report_path, svg_path;
  auto* eval_cmd = app.add_subcommand("eval", "Score estimator records against ground truth");
  eval_cmd->add_option("--records", records_path, "Records CSV")->required();
  eval_cmd->add_option("--truth", truth_path, "Labeled CSV")->required();
  eval_cmd->add_option("--out", report_path, "JSON report to write");

  auto* plot_cmd = app.add_subcommand("plot", "Render records as a three-strip SVG timeline");
  plot_cmd->add_option("--records", records_path, "Records CSV")->required();
  plot_cmd->add_option("--out", svg_path, "SVG to write")->required();

  try {
    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const Settings settings = load_settings(config_path);
    out << "seed: " << seed << '\n';
    if (*train_cmd) {
      cmd_train(train, settings, seed, out);
    } else if (*sim_cmd) {
      cmd_simulate(sim, seed, out);
    } else if (*est_cmd) {
      cmd_estimate(est, settings, out);
    } else if (*eval_cmd) {
      const auto report = evaluate(load_records_csv(records_path), load_labeled_csv(truth_path));
      print_report(out, report);
      if (!report_path.empty()) write_json(report_path, to_json(report));
    } else if (*plot_cmd) {
      write_text(svg_path, render_timeline_svg(load_records_csv(records_path)));
      out << "wrote " << svg_path << '\n';
    }
  } catch (const MissingModelError& e) {
    err << "error: " << e.what() << " (add a model labeled '" << e.id() << "')\n";
    return kExitError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}

}  // namespace hsshmm::cli
