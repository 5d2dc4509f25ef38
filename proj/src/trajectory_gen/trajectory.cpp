#include "hsshmm/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hsshmm/dss.hpp"
#include "hsshmm/errors.hpp"

namespace hsshmm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWheelbase = 2.8;        // m
constexpr double kSteeringRatio = 15.0;
constexpr double kHoldBrake = 0.3;        // pressure held while stationary
constexpr double kSeamBlendSeconds = 0.5;
constexpr double kMergeSeconds = 4.0;     // lateral doublet inside highway ramps
constexpr std::uint64_t kSignalStream = 0xd1b54a32d192ed03ULL;

// True kinematics of a maneuver before sensor rendering.
struct Profile {
  std::vector<double> speed;
  std::vector<double> yaw;
  std::vector<char> left;
  std::vector<char> right;

  explicit Profile(std::size_t n) : speed(n, 0.0), yaw(n, 0.0), left(n, 0), right(n, 0) {}
  std::size_t size() const { return speed.size(); }
};

std::size_t frame_count(double duration_s, double rate) {
  return static_cast<std::size_t>(std::llround(duration_s * rate));
}

// Speed after t seconds of moving from v0 toward v1 at the given rates.
double ramp(double v0, double v1, double up, double down, double t) {
  if (v1 >= v0) return std::min(v1, v0 + up * t);
  return std::max(v1, v0 - down * t);
}

double ramp_time(double v0, double v1, double up, double down) {
  if (v1 >= v0) return up > 0.0 ? (v1 - v0) / up : 0.0;
  return down > 0.0 ? (v0 - v1) / down : 0.0;
}

// Raised-cosine pulse whose frame sum equals `area / dt` exactly.
std::size_t pulse_frames(double area, double peak, double dt) {
  return static_cast<std::size_t>(std::llround(2.0 * area / (peak * dt)));
}

void set_signal(Profile& p, std::size_t from, std::size_t to, bool left, bool used) {
  if (!used) return;
  for (std::size_t i = from; i < to; ++i) (left ? p.left : p.right)[i] = 1;
}

void doublet(Profile& p, std::size_t from, std::size_t len, double peak, double sign) {
  for (std::size_t k = 0; k < len; ++k) {
    p.yaw[from + k] = sign * peak * std::sin(2.0 * kPi * static_cast<double>(k) / static_cast<double>(len));
  }
}

Profile build_profile(const EventTemplate& t, double rate, std::mt19937_64& signal_rng) {
  const double dt = 1.0 / rate;
  const std::size_t n = frame_count(t.duration_s, rate);
  Profile p(n);
  std::bernoulli_distribution uses_signal(t.signal_probability);

  switch (t.kind) {
    case EventKind::kContinue:
      for (std::size_t i = 0; i < n; ++i) {
        p.speed[i] = ramp(t.entry_speed, t.target_speed, t.acceleration, t.deceleration, i * dt);
      }
      break;

    case EventKind::kStop:
      for (std::size_t i = 0; i < n; ++i) p.speed[i] = ramp(t.entry_speed, 0.0, 0.0, t.deceleration, i * dt);
      break;

    case EventKind::kLeftTurn:
    case EventKind::kRightTurn: {
      const double sign = t.kind == EventKind::kLeftTurn ? 1.0 : -1.0;
      const std::size_t len = pulse_frames(kPi / 2.0, t.peak_yaw_rate, dt);
      const double peak = kPi / (static_cast<double>(len) * dt);
      const std::size_t offset = (n - len) / 2;
      for (std::size_t k = 0; k < len; ++k) {
        p.yaw[offset + k] =
            sign * peak * 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(len)));
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double phase = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        p.speed[i] = t.entry_speed * (1.0 - 0.3 * std::sin(kPi * phase));
      }
      set_signal(p, 0, n, sign > 0.0, uses_signal(signal_rng));
      break;
    }

    case EventKind::kLeftLaneChange:
    case EventKind::kRightLaneChange: {
      const double sign = t.kind == EventKind::kLeftLaneChange ? 1.0 : -1.0;
      std::fill(p.speed.begin(), p.speed.end(), t.entry_speed);
      doublet(p, 0, n, t.peak_yaw_rate, sign);
      set_signal(p, 0, n, sign > 0.0, uses_signal(signal_rng));
      break;
    }

    case EventKind::kEnterHighway: {
      // The merge happens while still accelerating and ends with the ramp.
      for (std::size_t i = 0; i < n; ++i) {
        p.speed[i] = ramp(t.entry_speed, t.target_speed, t.acceleration, t.deceleration, i * dt);
      }
      const std::size_t len = std::min(n, frame_count(kMergeSeconds, rate));
      const std::size_t end =
          std::clamp(frame_count(ramp_time(t.entry_speed, t.target_speed, t.acceleration, 0.0), rate), len, n);
      doublet(p, end - len, len, t.peak_yaw_rate, 1.0);
      set_signal(p, end - len, end, true, uses_signal(signal_rng));
      break;
    }

    case EventKind::kExitHighway: {
      // Off the throttle from the first frame of the merge.
      for (std::size_t i = 0; i < n; ++i) {
        p.speed[i] = ramp(t.entry_speed, t.target_speed, t.acceleration, t.deceleration, i * dt);
      }
      const std::size_t len = std::min(n, frame_count(kMergeSeconds, rate));
      doublet(p, 0, len, t.peak_yaw_rate, -1.0);
      set_signal(p, 0, len, false, uses_signal(signal_rng));
      break;
    }
  }
  return p;
}

double truncated(std::normal_distribution<double>& g, std::mt19937_64& rng, double sigma) {
  if (sigma <= 0.0) return 0.0;
  return sigma * std::clamp(g(rng), -3.0, 3.0);
}

// Turns kinematics into sensor frames. Longitudinal acceleration comes from
// central differences of the speed profile; pedal channels follow from it.
ObservationSequence render(const Profile& p, const std::vector<const NoiseModel*>& noise,
                           double rate, double t0, std::mt19937_64& rng) {
  const double dt = 1.0 / rate;
  const std::size_t n = p.size();
  std::normal_distribution<double> g(0.0, 1.0);
  ObservationSequence out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 < n ? i + 1 : n - 1;
    const double accel = hi > lo ? (p.speed[hi] - p.speed[lo]) / (static_cast<double>(hi - lo) * dt) : 0.0;
    const double v = p.speed[i];

    double brake = 0.0, throttle = 0.0;
    if (accel < -0.05) {
      brake = std::min(1.0, -accel / 10.0);
    } else if (v < 0.05 && accel < 0.05) {
      brake = kHoldBrake;
    } else {
      throttle = std::min(1.0, 0.08 + 0.006 * v + 0.15 * std::max(accel, 0.0));
    }
    const bool brake_light = brake > 0.05;

    const auto& sd = noise[i]->stddev;
    const auto noisy = [&](Feature f) { return truncated(g, rng, sd[index(f)]); };

    std::vector<double> f(kFeatureCount, 0.0);
    const double speed = std::max(0.0, v + noisy(Feature::kSpeed));
    const double yaw = p.yaw[i] + noisy(Feature::kYawRate);
    f[index(Feature::kSpeed)] = speed;
    f[index(Feature::kYawRate)] = yaw;
    f[index(Feature::kLateralAcceleration)] = speed * yaw + noisy(Feature::kLateralAcceleration);
    f[index(Feature::kBrakePressure)] = std::clamp(brake + noisy(Feature::kBrakePressure), 0.0, 1.0);
    f[index(Feature::kThrottlePosition)] = std::clamp(throttle + noisy(Feature::kThrottlePosition), 0.0, 1.0);
    f[index(Feature::kSteeringWheelAngle)] =
        kSteeringRatio * std::atan(kWheelbase * p.yaw[i] / std::max(v, 1.0)) +
        noisy(Feature::kSteeringWheelAngle);
    f[index(Feature::kTurnSignalLeft)] = p.left[i] ? 1.0 : 0.0;
    f[index(Feature::kTurnSignalRight)] = p.right[i] ? 1.0 : 0.0;
    f[index(Feature::kBrakeLight)] = brake_light ? 1.0 : 0.0;

    out.push_back({t0 + static_cast<double>(i) * dt, std::move(f)});
  }
  return out;
}

ContextState natural_context(EventKind kind) {
  switch (kind) {
    case EventKind::kLeftTurn:
    case EventKind::kRightTurn:
      return road_context(RoadCondition::kIntersection);
    case EventKind::kEnterHighway:
    case EventKind::kExitHighway:
      return road_context(RoadCondition::kHighway);
    default:
      return road_context(RoadCondition::kRoad);
  }
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

NoiseModel NoiseModel::defaults() {
  NoiseModel m;
  m.stddev[index(Feature::kSpeed)] = 0.15;
  m.stddev[index(Feature::kYawRate)] = 0.01;
  m.stddev[index(Feature::kLateralAcceleration)] = 0.1;
  m.stddev[index(Feature::kBrakePressure)] = 0.02;
  m.stddev[index(Feature::kThrottlePosition)] = 0.02;
  m.stddev[index(Feature::kSteeringWheelAngle)] = 0.02;
  return m;
}

EventTemplate EventTemplate::defaults(EventKind kind) {
  EventTemplate t;
  t.kind = kind;
  switch (kind) {
    case EventKind::kContinue:
      t.duration_s = 10.0;
      t.entry_speed = t.target_speed = 12.0;
      break;
    case EventKind::kStop:
      t.duration_s = 10.0;
      t.entry_speed = 10.0;
      t.target_speed = 0.0;
      break;
    case EventKind::kLeftTurn:
    case EventKind::kRightTurn:
      t.duration_s = 7.0;
      t.entry_speed = t.target_speed = 8.0;
      t.peak_yaw_rate = 0.45;
      break;
    case EventKind::kLeftLaneChange:
    case EventKind::kRightLaneChange:
      t.duration_s = 4.0;
      t.entry_speed = t.target_speed = 25.0;
      t.peak_yaw_rate = 0.12;
      break;
    case EventKind::kEnterHighway:
      t.duration_s = 12.0;
      t.entry_speed = 15.0;
      t.target_speed = 28.0;
      t.acceleration = 2.0;
      t.peak_yaw_rate = 0.08;
      break;
    case EventKind::kExitHighway:
      t.duration_s = 12.0;
      t.entry_speed = 28.0;
      t.target_speed = 15.0;
      t.deceleration = 2.0;
      t.peak_yaw_rate = 0.08;
      break;
  }
  return t;
}

void EventTemplate::validate(double rate) const {
  const std::string name(label(kind));
  if (!(rate > 0.0)) throw TemplateError("sample rate must be positive");
  if (!(duration_s > 0.0)) throw TemplateError(name + ": duration must be positive");
  if (frame_count(duration_s, rate) < 2) throw TemplateError(name + ": event shorter than two frames");
  if (!(entry_speed >= 0.0) || !(target_speed >= 0.0)) throw TemplateError(name + ": speeds must be >= 0");
  if (!(signal_probability >= 0.0 && signal_probability <= 1.0)) {
    throw TemplateError(name + ": signal probability outside [0, 1]");
  }
  for (double s : noise.stddev) {
    if (!(s >= 0.0)) throw TemplateError(name + ": noise std-devs must be >= 0");
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    if (is_indicator(static_cast<Feature>(i)) && noise.stddev[i] != 0.0) {
      throw TemplateError(name + ": indicator channels cannot carry noise");
    }
  }
  const double dt = 1.0 / rate;
  const std::size_t n = frame_count(duration_s, rate);
  switch (kind) {
    case EventKind::kContinue:
      if (target_speed != entry_speed && !((target_speed > entry_speed ? acceleration : deceleration) > 0.0)) {
        throw TemplateError(name + ": speed change needs a positive rate");
      }
      break;
    case EventKind::kStop:
      if (!(deceleration > 0.0)) throw TemplateError(name + ": deceleration must be positive");
      if (entry_speed / deceleration > static_cast<double>(n - 1) * dt) {
        throw TemplateError(name + ": duration too short to come to rest");
      }
      break;
    case EventKind::kLeftTurn:
    case EventKind::kRightTurn:
      if (!(peak_yaw_rate > 0.0)) throw TemplateError(name + ": peak yaw rate must be positive");
      if (pulse_frames(kPi / 2.0, peak_yaw_rate, dt) > n) {
        throw TemplateError(name + ": duration too short for the yaw pulse");
      }
      if (pulse_frames(kPi / 2.0, peak_yaw_rate, dt) < 2) throw TemplateError(name + ": yaw pulse too short");
      break;
    case EventKind::kLeftLaneChange:
    case EventKind::kRightLaneChange:
    case EventKind::kEnterHighway:
    case EventKind::kExitHighway:
      if (!(peak_yaw_rate > 0.0)) throw TemplateError(name + ": peak yaw rate must be positive");
      if ((kind == EventKind::kEnterHighway && !(acceleration > 0.0)) ||
          (kind == EventKind::kExitHighway && !(deceleration > 0.0))) {
        throw TemplateError(name + ": ramp rate must be positive");
      }
      break;
  }
}

EventTemplate template_from_json(const nlohmann::json& doc) {
  try {
    const auto kind_label = doc.at("kind").get<std::string>();
    const auto kind = parse_event_kind(kind_label);
    if (!kind) throw TemplateError("unknown event kind '" + kind_label + "'");
    EventTemplate t = EventTemplate::defaults(*kind);
    t.duration_s = doc.value("duration_s", t.duration_s);
    t.entry_speed = doc.value("entry_speed", t.entry_speed);
    t.target_speed = doc.value("target_speed", t.target_speed);
    t.peak_yaw_rate = doc.value("peak_yaw_rate", t.peak_yaw_rate);
    t.deceleration = doc.value("deceleration", t.deceleration);
    t.acceleration = doc.value("acceleration", t.acceleration);
    t.signal_probability = doc.value("signal_probability", t.signal_probability);
    if (doc.contains("noise")) {
      const auto& n = doc.at("noise");
      if (n.is_string() && n.get<std::string>() == "none") {
        t.noise = NoiseModel::none();
      } else {
        const auto sd = n.get<std::vector<double>>();
        if (sd.size() != kFeatureCount) throw TemplateError("noise needs one std-dev per channel");
        std::copy(sd.begin(), sd.end(), t.noise.stddev.begin());
      }
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw TemplateError(std::string("malformed event template: ") + e.what());
  }
}

nlohmann::json to_json(const EventTemplate& t) {
  return {{"kind", std::string(label(t.kind))},
          {"duration_s", t.duration_s},
          {"entry_speed", t.entry_speed},
          {"target_speed", t.target_speed},
          {"peak_yaw_rate", t.peak_yaw_rate},
          {"deceleration", t.deceleration},
          {"acceleration", t.acceleration},
          {"signal_probability", t.signal_probability},
          {"noise", t.noise.stddev}};
}

EventTemplate sample_template(EventKind kind, std::mt19937_64& rng) {
  EventTemplate t = EventTemplate::defaults(kind);
  switch (kind) {
    case EventKind::kContinue: {
      t.target_speed = uniform(rng, 6.0, 30.0);
      t.entry_speed = uniform(rng, 0.0, 1.0) < 0.25
                          ? 0.0
                          : std::max(0.0, t.target_speed + uniform(rng, -3.0, 3.0));
      t.acceleration = uniform(rng, 1.0, 2.5);
      t.deceleration = uniform(rng, 1.0, 2.5);
      const double settle = ramp_time(t.entry_speed, t.target_speed, t.acceleration, t.deceleration);
      t.duration_s = std::max(uniform(rng, 8.0, 20.0), settle + 3.0);
      break;
    }
    case EventKind::kStop:
      t.entry_speed = uniform(rng, 5.0, 16.0);
      t.deceleration = uniform(rng, 1.8, 3.2);
      t.duration_s = t.entry_speed / t.deceleration + uniform(rng, 1.0, 30.0);
      break;
    case EventKind::kLeftTurn:
    case EventKind::kRightTurn:
      t.entry_speed = t.target_speed = uniform(rng, 6.0, 10.0);
      t.peak_yaw_rate = uniform(rng, 0.35, 0.55);
      t.duration_s = kPi / t.peak_yaw_rate + uniform(rng, 0.2, 1.0);
      break;
    case EventKind::kLeftLaneChange:
    case EventKind::kRightLaneChange:
      t.entry_speed = t.target_speed = uniform(rng, 10.0, 30.0);
      t.peak_yaw_rate = uniform(rng, 0.08, 0.16);
      t.duration_s = uniform(rng, 3.5, 5.0);
      break;
    case EventKind::kEnterHighway:
      t.entry_speed = uniform(rng, 10.0, 16.0);
      t.target_speed = uniform(rng, 26.0, 31.0);
      t.acceleration = uniform(rng, 1.5, 2.5);
      t.peak_yaw_rate = uniform(rng, 0.06, 0.1);
      t.duration_s = ramp_time(t.entry_speed, t.target_speed, t.acceleration, 0.0) + uniform(rng, 0.5, 2.0);
      break;
    case EventKind::kExitHighway:
      t.entry_speed = uniform(rng, 25.0, 31.0);
      t.target_speed = uniform(rng, 10.0, 16.0);
      t.deceleration = uniform(rng, 1.2, 2.2);
      t.peak_yaw_rate = uniform(rng, 0.06, 0.1);
      t.duration_s = ramp_time(t.entry_speed, t.target_speed, 0.0, t.deceleration) + uniform(rng, 1.0, 3.0);
      break;
  }
  return t;
}

std::vector<LabeledSequence> synthetic_corpus(EventKind kind, std::size_t count,
                                              std::uint64_t seed, double sample_rate_hz) {
  // Template draws get their own stream so a corpus does not depend on how
  // many noise draws each sequence consumed.
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(kind) + 1) * 0x9e3779b97f4a7c15ULL);
  std::vector<LabeledSequence> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(generate_event(sample_template(kind, rng), seed + i, sample_rate_hz));
  }
  return out;
}

MetastateRegistry train_synthetic_registry(std::size_t count, std::uint64_t seed,
                                           std::size_t num_states, std::size_t mixtures,
                                           const TrainingConfig& config) {
  MetastateRegistry reg;
  for (EventKind kind : kAllEvents) {
    std::vector<ObservationSequence> seqs;
    for (auto& s : synthetic_corpus(kind, count, seed)) seqs.push_back(std::move(s.frames));
    reg.add(std::string(label(kind)), baum_welch_train(seqs, num_states, mixtures, config).model);
  }
  return reg;
}

RouteScript route_from_json(const nlohmann::json& doc) {
  RouteScript script;
  try {
    script.sample_rate_hz = doc.value("sample_rate_hz", 10.0);
    script.seed = doc.value("seed", std::uint64_t{42});
    const auto& events = doc.at("events");
    if (!events.is_array() || events.empty()) throw TemplateError("route needs at least one event");
    for (const auto& e : events) {
      const auto ctx_name = e.value("context", std::string("Road"));
      const auto rcs = parse_road_condition(ctx_name);
      if (!rcs) throw TemplateError("unknown context '" + ctx_name + "'");
      script.steps.push_back({template_from_json(e), road_context(*rcs)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw TemplateError(std::string("malformed route script: ") + e.what());
  }
  return script;
}

nlohmann::json to_json(const RouteScript& script) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& step : script.steps) {
    auto e = to_json(step.event);
    e["context"] = std::string(to_string(step.context.rcs));
    events.push_back(std::move(e));
  }
  return {{"sample_rate_hz", script.sample_rate_hz}, {"seed", script.seed}, {"events", events}};
}

LabeledSequence generate_event(const EventTemplate& t, std::uint64_t seed, double rate) {
  return generate_route(RouteScript{{{t, natural_context(t.kind)}}, rate, seed});
}

LabeledSequence generate_route(const RouteScript& script) {
  if (script.steps.empty()) throw TemplateError("route has no events");
  const ContextMap contexts = ContextMap::defaults();
  const double rate = script.sample_rate_hz;

  std::mt19937_64 signal_rng(script.seed ^ kSignalStream);
  Profile whole(0);
  std::vector<const NoiseModel*> noise;
  LabeledSequence out;

  for (std::size_t s = 0; s < script.steps.size(); ++s) {
    const auto& [event, ctx] = script.steps[s];
    event.validate(rate);
    const auto& allowed = contexts.ids_for(ctx.rcs);
    const std::string id(label(event.kind));
    if (std::find(allowed.begin(), allowed.end(), id) == allowed.end()) {
      throw TemplateError("event '" + id + "' cannot occur under " + std::string(to_string(ctx.rcs)) +
                          " context");
    }

    Profile p = build_profile(event, rate, signal_rng);
    if (!whole.speed.empty()) {
      const double prev = whole.speed.back();
      const std::size_t blend = std::min(p.size(), frame_count(kSeamBlendSeconds, rate));
      for (std::size_t i = 0; i < blend; ++i) {
        const double w = static_cast<double>(i + 1) / static_cast<double>(blend + 1);
        p.speed[i] = prev + (p.speed[i] - prev) * w;
      }
    }

    const double start = static_cast<double>(whole.size()) / rate;
    if (out.context_timeline.empty() || out.context_timeline.back().second != ctx) {
      out.context_timeline.emplace_back(start, ctx);
    }
    whole.speed.insert(whole.speed.end(), p.speed.begin(), p.speed.end());
    whole.yaw.insert(whole.yaw.end(), p.yaw.begin(), p.yaw.end());
    whole.left.insert(whole.left.end(), p.left.begin(), p.left.end());
    whole.right.insert(whole.right.end(), p.right.begin(), p.right.end());
    noise.insert(noise.end(), p.size(), &event.noise);
    out.labels.insert(out.labels.end(), p.size(), id);
    out.contexts.insert(out.contexts.end(), p.size(), ctx);
  }

  std::mt19937_64 noise_rng(script.seed);
  out.frames = render(whole, noise, rate, 0.0, noise_rng);
  return out;
}

RouteScript example1_route(std::uint64_t seed) {
  const auto road = road_context(RoadCondition::kRoad);
  const auto inter = road_context(RoadCondition::kIntersection);

  auto stop_at_light = EventTemplate::defaults(EventKind::kStop);
  stop_at_light.entry_speed = 12.0;
  stop_at_light.duration_s = 40.0;

  auto pull_away = EventTemplate::defaults(EventKind::kContinue);
  pull_away.entry_speed = 0.0;
  pull_away.target_speed = 8.0;
  pull_away.duration_s = 12.0;

  auto right_turn = EventTemplate::defaults(EventKind::kRightTurn);

  auto cruise = EventTemplate::defaults(EventKind::kContinue);
  cruise.entry_speed = 8.0;
  cruise.target_speed = 13.0;
  cruise.duration_s = 90.0;

  auto final_stop = EventTemplate::defaults(EventKind::kStop);
  final_stop.entry_speed = 13.0;
  final_stop.duration_s = 16.0;

  return RouteScript{{{stop_at_light, road},
                      {pull_away, inter},
                      {right_turn, inter},
                      {cruise, road},
                      {final_stop, inter}},
                     10.0,
                     seed};
}

RouteScript highway_route(std::uint64_t seed) {
  const auto hwy = road_context(RoadCondition::kHighway);
  auto cruise = [](double seconds) {
    auto t = EventTemplate::defaults(EventKind::kContinue);
    t.entry_speed = t.target_speed = 27.0;
    t.duration_s = seconds;
    return t;
  };
  auto change = [](EventKind kind) {
    auto t = EventTemplate::defaults(kind);
    t.entry_speed = t.target_speed = 27.0;
    return t;
  };
  const auto L = EventKind::kLeftLaneChange;
  const auto R = EventKind::kRightLaneChange;

  RouteScript script{{}, 10.0, seed};
  script.steps.push_back({cruise(15.0), hwy});
  for (EventKind k : {L, R, L, L, R, L, R}) {
    script.steps.push_back({change(k), hwy});
    script.steps.push_back({cruise(12.0), hwy});
  }
  return script;
}

}  // namespace hsshmm
