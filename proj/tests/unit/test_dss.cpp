#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hsshmm/errors.hpp"
#include "support/registry_fixture.hpp"

namespace hsshmm {
namespace {

using testing::continue_only;
using testing::metastate;

const MetastateRegistry& registry() {
  static const MetastateRegistry reg = testing::full_tiny_registry();
  return reg;
}

std::set<std::string> id_set(const DssConfiguration& dss) {
  const auto ids = dss.ids();
  return {ids.begin(), ids.end()};
}

bool is_strict_subset(const std::set<std::string>& a, const std::set<std::string>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

DssConfiguration from_ids(const std::vector<std::string>& ids,
                          ContextState ctx = road_context(RoadCondition::kRoad)) {
  std::vector<Metastate> ms;
  for (const auto& id : ids) ms.push_back(metastate(registry(), id));
  return DssConfiguration::with_default_fsm(std::move(ms), ctx);
}

TEST(Graft, OneLaneRoadBecomingTwoLanes) {
  auto dss = continue_only(registry());
  dss = graft(dss, metastate(registry(), "Left Lane Change"));
  dss = graft(dss, metastate(registry(), "Right Lane Change"));
  EXPECT_EQ(dss.size(), 3u);
}

TEST(Graft, GrowsByOneAndIsStrictSuperset) {
  const auto base = continue_only(registry());
  const auto grown = graft(base, metastate(registry(), "Stop"));
  EXPECT_EQ(grown.size(), 2u);
  EXPECT_TRUE(is_strict_subset(id_set(base), id_set(grown)));
  EXPECT_EQ(base.size(), 1u);  // input untouched
}

TEST(Graft, SimultaneousEqualsSerial) {
  const auto base = continue_only(registry());
  const auto j = metastate(registry(), "Left Turn");
  const auto k = metastate(registry(), "Right Turn");
  const auto together = graft_all(base, {j, k});
  EXPECT_EQ(id_set(together), id_set(graft(graft(base, j), k)));
  EXPECT_EQ(id_set(together), id_set(graft(graft(base, k), j)));
}

TEST(Graft, UniformIncomingShare) {
  const auto dss = graft(from_ids({"Continue", "Stop"}), metastate(registry(), "Left Turn"));
  const auto& f = dss.fsm();
  EXPECT_NEAR(f(0, 0), 0.8 * 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(f(0, 2), 1.0 / 3.0, 1e-15);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(f(2, j), 1.0 / 3.0, 1e-15);
  EXPECT_TRUE(is_row_stochastic(f));
}

TEST(Graft, ResetDefaultsPolicy) {
  const auto dss = graft(from_ids({"Continue", "Stop"}), metastate(registry(), "Left Turn"),
                         RowPolicy::kResetDefaults);
  EXPECT_EQ(dss.fsm(), default_metastate_fsm(3));
}

TEST(Graft, DuplicateRejected) {
  EXPECT_THROW(graft(continue_only(registry()), metastate(registry(), "Continue")),
               DuplicateMetastateError);
}

TEST(Prune, AfterIntersectionTurnsAreRemoved) {
  const auto dss = from_ids({"Stop", "Continue", "Left Turn", "Right Turn"});
  const auto out = prune(prune(dss, "Left Turn"), "Right Turn");
  EXPECT_EQ(out.ids(), (std::vector<std::string>{"Stop", "Continue"}));
}

TEST(Prune, TwoMetastatesDownToContinue) {
  const auto out = prune(from_ids({"Continue", "Stop"}), "Stop");
  EXPECT_EQ(out.size(), 1u);
  EXPECT_EQ(out.fsm(), Matrix::identity(1));
}

TEST(Prune, SimultaneousEqualsSerialInEitherOrder) {
  const auto dss = from_ids({"Continue", "Left Turn", "Right Turn", "Stop"});
  const auto together = prune_all(dss, {"Left Turn", "Stop"});
  EXPECT_EQ(id_set(together), id_set(prune(prune(dss, "Stop"), "Left Turn")));
  EXPECT_EQ(id_set(together), (std::set<std::string>{"Continue", "Right Turn"}));
}

TEST(Prune, RedistributesRemovedColumnProportionally) {
  const DssConfiguration dss({metastate(registry(), "Continue"), metastate(registry(), "Stop"),
                              metastate(registry(), "Left Turn")},
                             Matrix{{0.5, 0.3, 0.2}, {0.1, 0.1, 0.8}, {0.0, 0.0, 1.0}},
                             ContextState{});
  const auto out = prune(dss, "Left Turn");
  EXPECT_NEAR(out.fsm()(0, 0), 0.625, 1e-15);
  EXPECT_NEAR(out.fsm()(0, 1), 0.375, 1e-15);
  EXPECT_NEAR(out.fsm()(1, 0), 0.5, 1e-15);
  const auto uniform = prune(prune(dss, "Stop"), "Left Turn");
  EXPECT_EQ(uniform.fsm(), Matrix::identity(1));
}

TEST(Prune, Errors) {
  const auto dss = from_ids({"Continue", "Stop"});
  EXPECT_THROW(prune(dss, "Left Turn"), UnknownMetastateError);
  EXPECT_THROW(prune(dss, "Continue"), ProtectedMetastateError);
}

TEST(Dss, ConstructionInvariants) {
  EXPECT_THROW(from_ids({"Stop"}), Error);
  EXPECT_THROW(from_ids({"Continue", "Stop", "Stop"}), DuplicateMetastateError);
  EXPECT_THROW(DssConfiguration({metastate(registry(), "Continue")}, Matrix{{0.5}}, ContextState{}),
               StochasticityError);
  EXPECT_THROW(DssConfiguration({metastate(registry(), "Continue")}, Matrix::identity(2), ContextState{}),
               DimensionError);
}

TEST(Dss, GraftPruneRoundTrip) {
  const auto base = from_ids({"Continue", "Stop", "Left Turn"});
  const auto back = prune(graft(base, metastate(registry(), "Right Turn")), "Right Turn");
  EXPECT_EQ(back.ids(), base.ids());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(back.fsm()(i, j), base.fsm()(i, j), 1e-15);
  }
}

TEST(Dss, RandomizedOperationSequencesKeepInvariants) {
  std::mt19937_64 rng(8);
  const auto catalog = registry().ids();
  for (int trial = 0; trial < 200; ++trial) {
    auto dss = continue_only(registry());
    for (int step = 0; step < 12; ++step) {
      std::vector<std::string> absent, removable;
      for (const auto& id : catalog) (dss.contains(id) ? removable : absent).push_back(id);
      std::erase(removable, std::string(kContinueId));
      const bool do_graft = removable.empty() || (!absent.empty() && rng() % 2 == 0);
      const auto before = id_set(dss);
      if (do_graft) {
        const auto& id = absent[rng() % absent.size()];
        dss = graft(dss, metastate(registry(), id), rng() % 3 ? RowPolicy::kUniformIncoming
                                                              : RowPolicy::kResetDefaults);
        EXPECT_EQ(dss.size(), before.size() + 1);
        EXPECT_TRUE(is_strict_subset(before, id_set(dss)));
      } else {
        dss = prune(dss, removable[rng() % removable.size()]);
        EXPECT_EQ(dss.size() + 1, before.size());
        EXPECT_TRUE(is_strict_subset(id_set(dss), before));
      }
      EXPECT_TRUE(dss.contains(kContinueId));
      EXPECT_TRUE(is_row_stochastic(dss.fsm(), 1e-9));
    }
  }
}

TEST(DssForContext, CanonicalConfigurations) {
  const auto intersection = dss_for_context(road_context(RoadCondition::kIntersection), registry());
  EXPECT_EQ(intersection.ids(),
            (std::vector<std::string>{"Continue", "Left Turn", "Right Turn", "Stop"}));
  const auto road = dss_for_context(road_context(RoadCondition::kRoad), registry());
  EXPECT_TRUE(road.contains("Stop"));
  EXPECT_EQ(road.size(), 4u);
  const auto highway = dss_for_context(road_context(RoadCondition::kHighway), registry());
  EXPECT_EQ(highway.ids(), (std::vector<std::string>{"Continue", "Left Lane Change",
                                                     "Right Lane Change", "Enter Highway",
                                                     "Exit Highway"}));
  EXPECT_EQ(highway.fsm(), default_metastate_fsm(5));
}

TEST(DssForContext, DeterministicAndNamesMissingModel) {
  const auto ctx = road_context(RoadCondition::kIntersection);
  EXPECT_EQ(dss_for_context(ctx, registry()).ids(), dss_for_context(ctx, registry()).ids());

  MetastateRegistry partial;
  partial.add("Continue", testing::tiny_model());
  partial.add("Left Turn", testing::tiny_model());
  try {
    dss_for_context(ctx, partial);
    FAIL() << "expected MissingModelError";
  } catch (const MissingModelError& e) {
    EXPECT_EQ(e.id(), "Right Turn");
  }
}

std::vector<std::string> describe(const std::vector<ModificationEvent>& events) {
  std::vector<std::string> out;
  for (const auto& e : events) out.push_back(to_string(e));
  return out;
}

TEST(ApplyContextChange, RoadToIntersectionOrder) {
  const auto road = road_context(RoadCondition::kRoad);
  const auto inter = road_context(RoadCondition::kIntersection);
  const auto res =
      apply_context_change(dss_for_context(road, registry()), road, inter, registry(), ContextMap::defaults(), 12.5);
  EXPECT_EQ(describe(res.events),
            (std::vector<std::string>{"prune:Left Lane Change", "prune:Right Lane Change",
                                      "graft:Right Turn", "graft:Left Turn"}));
  EXPECT_EQ(res.dss.ids(), dss_for_context(inter, registry()).ids());
  for (const auto& e : res.events) {
    EXPECT_EQ(e.timestamp, 12.5);
    EXPECT_EQ(e.from, road);
    EXPECT_EQ(e.to, inter);
  }
}

TEST(ApplyContextChange, IntersectionToRoadOrder) {
  const auto road = road_context(RoadCondition::kRoad);
  const auto inter = road_context(RoadCondition::kIntersection);
  const auto res = apply_context_change(dss_for_context(inter, registry()), inter, road, registry());
  EXPECT_EQ(describe(res.events),
            (std::vector<std::string>{"prune:Left Turn", "prune:Right Turn",
                                      "graft:Right Lane Change", "graft:Left Lane Change"}));
  EXPECT_EQ(res.dss.context(), road);
}

TEST(ApplyContextChange, SameContextIsIdentity) {
  const auto road = road_context(RoadCondition::kRoad);
  const auto dss = dss_for_context(road, registry());
  const auto res = apply_context_change(dss, road, road, registry());
  EXPECT_TRUE(res.events.empty());
  EXPECT_EQ(res.dss.ids(), dss.ids());
}

TEST(ApplyContextChange, PathIndependent) {
  const auto road = road_context(RoadCondition::kRoad);
  const auto inter = road_context(RoadCondition::kIntersection);
  const auto hwy = road_context(RoadCondition::kHighway);
  auto dss = dss_for_context(road, registry());
  dss = apply_context_change(dss, road, inter, registry()).dss;
  dss = apply_context_change(dss, inter, hwy, registry()).dss;
  dss = apply_context_change(dss, hwy, road, registry()).dss;
  EXPECT_EQ(id_set(dss), id_set(dss_for_context(road, registry())));
}

TEST(ApplyContextChange, PropagatesMissingModel) {
  MetastateRegistry partial;
  for (const char* id : {"Continue", "Left Lane Change", "Right Lane Change", "Stop"}) {
    partial.add(id, testing::tiny_model());
  }
  const auto road = road_context(RoadCondition::kRoad);
  EXPECT_THROW(apply_context_change(dss_for_context(road, partial), road,
                                    road_context(RoadCondition::kIntersection), partial),
               MissingModelError);
}

TEST(ContextMap, ParsesAndValidates) {
  const auto map = ContextMap::from_json(nlohmann::json::parse(
      R"({"Intersection": ["Continue", "Stop"], "Highway": ["Continue"], "Road": ["Continue", "Left Turn"]})"));
  EXPECT_EQ(map.ids_for(RoadCondition::kRoad), (std::vector<std::string>{"Continue", "Left Turn"}));
  EXPECT_THROW(ContextMap::from_json(nlohmann::json::parse(
                   R"({"Intersection": ["Stop"], "Highway": ["Continue"], "Road": ["Continue"]})")),
               ParseError);
  EXPECT_THROW(ContextMap::from_json(nlohmann::json::parse(R"({"Road": ["Continue"]})")), ParseError);
  EXPECT_THROW(ContextMap::from_json(nlohmann::json::parse(
                   R"({"Moon": ["Continue"], "Intersection": ["Continue"], "Highway": ["Continue"], "Road": ["Continue"]})")),
               ParseError);
}

}  // namespace
}  // namespace hsshmm
