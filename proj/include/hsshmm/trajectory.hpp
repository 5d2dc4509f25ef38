#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hsshmm/catalog.hpp"
#include "hsshmm/context.hpp"
#include "hsshmm/observation.hpp"
#include "hsshmm/registry.hpp"
#include "hsshmm/training.hpp"

#include "json.hpp"

namespace hsshmm {

// Per-channel Gaussian noise std-devs, in feature order. Samples are
// truncated at 3 sigma. Indicator channels are never noised.
struct NoiseModel {
  std::array<double, kFeatureCount> stddev{};

  static NoiseModel defaults();
  static NoiseModel none() { return {}; }
};

// Parametric description of one maneuver. Which fields matter depends on
// the kind; unused ones are ignored.
struct EventTemplate {
  EventKind kind = EventKind::kContinue;
  double duration_s = 10.0;
  double entry_speed = 10.0;         // m/s
  double target_speed = 10.0;        // m/s reached by Continue / highway ramps
  double peak_yaw_rate = 0.0;        // rad/s magnitude of the turn or doublet
  double deceleration = 2.5;         // m/s^2
  double acceleration = 1.5;         // m/s^2
  double signal_probability = 0.9;   // chance the driver uses the indicator
  NoiseModel noise = NoiseModel::defaults();

  // Plausible urban/highway defaults for each kind.
  static EventTemplate defaults(EventKind kind);

  // Throws TemplateError (also checked against a sample rate, since pulses
  // must fit in whole frames).
  void validate(double sample_rate_hz) const;
};

// Fields present in `doc` override defaults(kind). Keys: kind, duration_s,
// entry_speed, target_speed, peak_yaw_rate, deceleration, acceleration,
// signal_probability, noise (array of kFeatureCount std-devs, or "none").
EventTemplate template_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const EventTemplate& t);

// Randomized template for building training corpora: speeds, yaw rates and
// durations are drawn around the defaults.
EventTemplate sample_template(EventKind kind, std::mt19937_64& rng);

struct RouteStep {
  EventTemplate event;
  ContextState context;
};

struct RouteScript {
  std::vector<RouteStep> steps;
  double sample_rate_hz = 10.0;
  std::uint64_t seed = 42;
};

// {"sample_rate_hz", "seed", "events": [{<template fields>, "context": "Road"}]}
RouteScript route_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const RouteScript& script);

struct LabeledSequence {
  ObservationSequence frames;
  std::vector<std::string> labels;      // ground-truth metastate id per frame
  std::vector<ContextState> contexts;   // context per frame
  ContextTimeline context_timeline;     // initial entry + one per change
};

// Generates one event starting at t = 0 under the Road context (its natural
// context if Road cannot host it). Deterministic in `seed`.
LabeledSequence generate_event(const EventTemplate& t, std::uint64_t seed,
                               double sample_rate_hz = 10.0);

// Concatenates the script's events. Speed is blended linearly over 0.5 s at
// each seam. Throws TemplateError when an event is not valid in its context
// (the event must belong to that context's metastate set).
LabeledSequence generate_route(const RouteScript& script);

// `count` single-event training sequences, templates drawn by
// sample_template. Sequence i uses noise seed `seed + i`.
std::vector<LabeledSequence> synthetic_corpus(EventKind kind, std::size_t count,
                                              std::uint64_t seed, double sample_rate_hz = 10.0);

// Trains one model per catalog event on synthetic_corpus(kind, count, seed).
MetastateRegistry train_synthetic_registry(std::size_t count, std::uint64_t seed,
                                           std::size_t num_states, std::size_t mixtures,
                                           const TrainingConfig& config);

// Scripted drives used by the CLI examples and the end-to-end tests.
// Stop (Road), Continue (Int), Right Turn (Int), Continue (Road), Stop (Int); 165 s.
RouteScript example1_route(std::uint64_t seed = 42);
// Highway cruise with 4 left and 3 right lane changes.
RouteScript highway_route(std::uint64_t seed = 42);

}  // namespace hsshmm
