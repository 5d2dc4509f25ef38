#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hsshmm/errors.hpp"
#include "hsshmm/trajectory.hpp"

namespace hsshmm {
namespace {

double channel(const ObservationVector& o, Feature f) { return o.features[index(f)]; }

EventTemplate quiet(EventKind kind) {
  auto t = EventTemplate::defaults(kind);
  t.noise = NoiseModel::none();
  return t;
}

double integrated_yaw(const LabeledSequence& seq, double rate = 10.0) {
  double sum = 0.0;
  for (const auto& o : seq.frames) sum += channel(o, Feature::kYawRate) / rate;
  return sum;
}

TEST(GenerateEvent, StraightWithoutNoiseHasNoYawAndConstantSpeed) {
  const auto seq = generate_event(quiet(EventKind::kContinue), 1);
  ASSERT_EQ(seq.frames.size(), 100u);
  for (const auto& o : seq.frames) {
    EXPECT_EQ(channel(o, Feature::kYawRate), 0.0);
    EXPECT_EQ(channel(o, Feature::kSpeed), 12.0);
  }
  for (const auto& l : seq.labels) EXPECT_EQ(l, "Continue");
}

TEST(GenerateEvent, StopWithoutNoiseEndsAtRestAndBrakes) {
  const auto seq = generate_event(quiet(EventKind::kStop), 1);
  EXPECT_EQ(channel(seq.frames.back(), Feature::kSpeed), 0.0);
  // Decelerating for the first 4 s at 2.5 m/s^2.
  for (std::size_t i = 1; i < 39; ++i) {
    EXPECT_GT(channel(seq.frames[i], Feature::kBrakePressure), 0.0) << i;
    EXPECT_EQ(channel(seq.frames[i], Feature::kBrakeLight), 1.0);
  }
}

TEST(GenerateEvent, TurnsIntegrateToQuarterCircle) {
  EXPECT_NEAR(integrated_yaw(generate_event(quiet(EventKind::kRightTurn), 1)), -std::numbers::pi / 2, 1e-6);
  EXPECT_NEAR(integrated_yaw(generate_event(quiet(EventKind::kLeftTurn), 1)), std::numbers::pi / 2, 1e-6);
  auto odd = quiet(EventKind::kRightTurn);
  odd.peak_yaw_rate = 0.37;
  odd.duration_s = 9.3;
  EXPECT_NEAR(integrated_yaw(generate_event(odd, 1)), -std::numbers::pi / 2, 1e-6);
}

TEST(GenerateEvent, LaneChangeDoubletReturnsHeading) {
  auto t = quiet(EventKind::kLeftLaneChange);
  t.signal_probability = 1.0;
  const auto seq = generate_event(t, 3);
  EXPECT_NEAR(integrated_yaw(seq), 0.0, 1e-9);
  EXPECT_GT(channel(seq.frames[10], Feature::kYawRate), 0.0);  // left first
  for (const auto& o : seq.frames) {
    EXPECT_EQ(channel(o, Feature::kTurnSignalLeft), 1.0);
    EXPECT_EQ(channel(o, Feature::kTurnSignalRight), 0.0);
  }
}

TEST(GenerateEvent, DeterministicPerSeed) {
  const auto t = EventTemplate::defaults(EventKind::kEnterHighway);
  const auto a = generate_event(t, 9);
  const auto b = generate_event(t, 9);
  ASSERT_EQ(a.frames.size(), b.frames.size());
  for (std::size_t i = 0; i < a.frames.size(); ++i) EXPECT_EQ(a.frames[i].features, b.frames[i].features);
}

TEST(GenerateEvent, RejectsInvalidTemplates) {
  auto t = EventTemplate::defaults(EventKind::kContinue);
  t.duration_s = -1.0;
  EXPECT_THROW(generate_event(t, 1), TemplateError);

  t = EventTemplate::defaults(EventKind::kStop);
  t.duration_s = 2.0;  // cannot stop from 10 m/s at 2.5 m/s^2
  EXPECT_THROW(generate_event(t, 1), TemplateError);

  t = EventTemplate::defaults(EventKind::kRightTurn);
  t.duration_s = 4.0;
  EXPECT_THROW(generate_event(t, 1), TemplateError);

  t = EventTemplate::defaults(EventKind::kLeftLaneChange);
  t.entry_speed = -3.0;
  EXPECT_THROW(generate_event(t, 1), TemplateError);

  t = EventTemplate::defaults(EventKind::kLeftLaneChange);
  t.noise.stddev[index(Feature::kBrakeLight)] = 0.1;
  EXPECT_THROW(generate_event(t, 1), TemplateError);
}

TEST(GenerateRoute, SingleEventMatchesGenerateEvent) {
  const auto t = EventTemplate::defaults(EventKind::kRightTurn);
  const auto route = generate_route({{{t, road_context(RoadCondition::kIntersection)}}, 10.0, 4});
  const auto single = generate_event(t, 4);
  ASSERT_EQ(route.frames.size(), single.frames.size());
  for (std::size_t i = 0; i < route.frames.size(); ++i) {
    EXPECT_EQ(route.frames[i].features, single.frames[i].features);
    EXPECT_EQ(route.frames[i].timestamp, single.frames[i].timestamp);
  }
  ASSERT_EQ(route.context_timeline.size(), 1u);
  EXPECT_EQ(route.context_timeline[0].first, 0.0);
  EXPECT_EQ(route.context_timeline[0].second.rcs, RoadCondition::kIntersection);
}

TEST(GenerateRoute, ExampleOneShape) {
  const auto seq = generate_route(example1_route());
  EXPECT_EQ(seq.frames.size(), 1650u);  // 165 s at 10 Hz
  ASSERT_EQ(seq.context_timeline.size(), 4u);
  const RoadCondition expected[] = {RoadCondition::kRoad, RoadCondition::kIntersection,
                                    RoadCondition::kRoad, RoadCondition::kIntersection};
  const double at[] = {0.0, 40.0, 59.0, 149.0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(seq.context_timeline[i].second.rcs, expected[i]);
    EXPECT_NEAR(seq.context_timeline[i].first, at[i], 1e-9);
  }
  // Context changes exactly at the first frame of the new span.
  const std::size_t change = 400;
  EXPECT_EQ(seq.contexts[change - 1].rcs, RoadCondition::kRoad);
  EXPECT_EQ(seq.contexts[change].rcs, RoadCondition::kIntersection);
  EXPECT_EQ(seq.labels[change], "Continue");
}

TEST(GenerateRoute, SeedsChangeNoiseNotLabels) {
  const auto a = generate_route(example1_route(1));
  const auto b = generate_route(example1_route(2));
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.context_timeline, b.context_timeline);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) differing += a.frames[i].features != b.frames[i].features;
  EXPECT_GT(differing, a.frames.size() / 2);
}

TEST(GenerateRoute, SeamsAreBlended) {
  auto fast = quiet(EventKind::kContinue);
  fast.entry_speed = fast.target_speed = 20.0;
  auto slow = quiet(EventKind::kContinue);
  slow.entry_speed = slow.target_speed = 10.0;
  const auto ctx = road_context(RoadCondition::kRoad);
  const auto seq = generate_route({{{fast, ctx}, {slow, ctx}}, 10.0, 1});
  for (std::size_t i = 100; i < 105; ++i) {
    const double v = channel(seq.frames[i], Feature::kSpeed);
    EXPECT_GT(v, 10.0);
    EXPECT_LT(v, 20.0);
    EXPECT_LT(v, channel(seq.frames[i - 1], Feature::kSpeed));
  }
  EXPECT_EQ(channel(seq.frames[105], Feature::kSpeed), 10.0);
}

TEST(GenerateRoute, RejectsEventsOutsideTheirContext) {
  const auto turn = EventTemplate::defaults(EventKind::kLeftTurn);
  EXPECT_THROW(generate_route({{{turn, road_context(RoadCondition::kRoad)}}, 10.0, 1}), TemplateError);
  const auto enter = EventTemplate::defaults(EventKind::kEnterHighway);
  EXPECT_THROW(generate_route({{{enter, road_context(RoadCondition::kRoad)}}, 10.0, 1}), TemplateError);
  EXPECT_THROW(generate_route({{}, 10.0, 1}), TemplateError);
}

TEST(GenerateRoute, PhysicalSanityOverRandomTemplates) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto kind = kAllEvents[trial % kAllEvents.size()];
    const auto t = sample_template(kind, rng);
    const auto seq = generate_event(t, static_cast<std::uint64_t>(trial));
    const double lat_sigma = t.noise.stddev[index(Feature::kLateralAcceleration)];
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
      const auto& o = seq.frames[i];
      EXPECT_NEAR(o.timestamp, static_cast<double>(i) / 10.0, 1e-12);
      const double v = channel(o, Feature::kSpeed);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(std::abs(channel(o, Feature::kLateralAcceleration)),
                v * std::abs(channel(o, Feature::kYawRate)) + 3.0 * lat_sigma + 1e-12);
      EXPECT_NO_THROW(check_vehicle_frame(o));
    }
  }
}

TEST(RouteScript, JsonRoundTrip) {
  const auto script = example1_route(7);
  const auto back = route_from_json(to_json(script));
  EXPECT_EQ(to_json(back), to_json(script));
  EXPECT_THROW(route_from_json(nlohmann::json::parse(R"({"events": [{"kind": "Fly"}]})")), TemplateError);
  EXPECT_THROW(route_from_json(nlohmann::json::parse(R"({"events": []})")), TemplateError);
  EXPECT_THROW(route_from_json(nlohmann::json::parse(R"({"events": [{"kind": "Stop", "context": "Moon"}]})")),
               TemplateError);
}

}  // namespace
}  // namespace hsshmm
