#include <gtest/gtest.h>

#include <random>

#include "hsshmm/errors.hpp"
#include "hsshmm/hmm.hpp"
#include "support/oracles.hpp"

namespace hsshmm {
namespace {

using testing::PlainModel;

GaussianMixture gauss1(double mean, double var) { return GaussianMixture({{1.0, {mean}, {var}}}); }

// Two-state, one-dimensional model whose exact values were computed by path
// enumeration outside the library.
HiddenMarkovModel frozen_model() {
  return HiddenMarkovModel({0.6, 0.4}, Matrix{{0.7, 0.3}, {0.2, 0.8}},
                           {gauss1(-1.0, 0.5), gauss1(1.5, 2.0)});
}
const std::vector<std::vector<double>> kFrozenObs{{-0.8}, {0.3}, {1.9}, {1.1}};

TEST(Forward, SingleStateSingleFrame) {
  const HiddenMarkovModel hmm({1.0}, Matrix{{1.0}}, {gauss1(0.0, 1.0)});
  const auto ll = forward_log_likelihood(hmm, testing::to_sequence({{0.0}}));
  EXPECT_NEAR(ll.value, -0.918939, 1e-6);
}

TEST(Forward, AbsorbingChainSumsFirstStateEmissions) {
  const HiddenMarkovModel hmm({1.0, 0.0}, Matrix{{1.0, 0.0}, {0.0, 1.0}},
                              {gauss1(0.5, 0.7), gauss1(-2.0, 1.3)});
  const auto seq = testing::to_sequence({{0.1}, {1.4}, {-0.3}, {2.2}, {0.9}});
  double expected = 0.0;
  for (const auto& o : seq) expected += hmm.emission(0).log_pdf(o.features).value;
  EXPECT_NEAR(forward_log_likelihood(hmm, seq).value, expected, 1e-12);
}

TEST(Forward, FrozenTwoStateValue) {
  EXPECT_NEAR(forward_log_likelihood(frozen_model(), testing::to_sequence(kFrozenObs)).value,
              -6.460283440972205, 1e-12);
}

TEST(Forward, MatchesPathEnumerationTwoStatesFourFrames) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const PlainModel plain = testing::random_plain_model(rng, 2, 1, 1);
    const auto frames = testing::random_frames(rng, 4, 1);
    const double expected = testing::brute_force_probability(plain, frames);
    const double got = std::exp(forward_log_likelihood(testing::to_model(plain),
                                                       testing::to_sequence(frames)).value);
    EXPECT_LT(testing::relative_error(got, expected), 1e-9);
  }
}

TEST(Forward, MatchesPathEnumerationRandomShapes) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> states(1, 4), comps(1, 2), dims(1, 3), lens(1, 8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = states(rng), d = dims(rng), t = lens(rng);
    const PlainModel plain = testing::random_plain_model(rng, n, comps(rng), d);
    const auto frames = testing::random_frames(rng, t, d);
    const double expected = testing::brute_force_probability(plain, frames);
    const double got = std::exp(forward_log_likelihood(testing::to_model(plain),
                                                       testing::to_sequence(frames)).value);
    EXPECT_LT(testing::relative_error(got, expected), 1e-9) << "n=" << n << " d=" << d << " T=" << t;
  }
}

TEST(Forward, LongSequenceDoesNotUnderflow) {
  std::mt19937_64 rng(5);
  const auto hmm = testing::to_model(testing::random_plain_model(rng, 3, 2, 2));
  const auto seq = testing::to_sequence(testing::random_frames(rng, 5000, 2));
  const auto ll = forward_log_likelihood(hmm, seq);
  EXPECT_TRUE(ll.valid);
  EXPECT_TRUE(std::isfinite(ll.value));
}

TEST(Forward, Errors) {
  const auto hmm = frozen_model();
  EXPECT_THROW(forward_log_likelihood(hmm, ObservationSequence{}), EmptySequenceError);
  EXPECT_THROW(forward_log_likelihood(hmm, testing::to_sequence({{0.0, 1.0}})), DimensionError);
}

TEST(Forward, Deterministic) {
  const auto seq = testing::to_sequence(kFrozenObs);
  const auto a = forward_log_likelihood(frozen_model(), seq);
  const auto b = forward_log_likelihood(frozen_model(), seq);
  EXPECT_EQ(a, b);
}

TEST(Viterbi, SingleStateIsAllZeros) {
  const HiddenMarkovModel hmm({1.0}, Matrix{{1.0}}, {gauss1(0.0, 1.0)});
  const auto res = viterbi_decode(hmm, testing::to_sequence({{3.0}, {-1.0}, {0.2}}));
  EXPECT_EQ(res.path, (std::vector<std::size_t>{0, 0, 0}));
}

TEST(Viterbi, DeterministicCycleAlternates) {
  const HiddenMarkovModel hmm({1.0, 0.0}, Matrix{{0.0, 1.0}, {1.0, 0.0}},
                              {gauss1(-5.0, 0.1), gauss1(5.0, 0.1)});
  const auto res =
      viterbi_decode(hmm, testing::to_sequence({{-5.0}, {5.0}, {-5.0}, {5.0}, {-5.0}, {5.0}}));
  EXPECT_EQ(res.path, (std::vector<std::size_t>{0, 1, 0, 1, 0, 1}));
}

TEST(Viterbi, FrozenTwoStateValue) {
  const auto res = viterbi_decode(frozen_model(), testing::to_sequence(kFrozenObs));
  EXPECT_EQ(res.path, (std::vector<std::size_t>{0, 1, 1, 1}));
  EXPECT_NEAR(res.log_probability.value, -7.009986844098982, 1e-12);
}

TEST(Viterbi, MatchesExhaustiveMaximum) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const PlainModel plain = testing::random_plain_model(rng, 3, 2, 2);
    const auto frames = testing::random_frames(rng, 6, 2);
    const auto res = viterbi_decode(testing::to_model(plain), testing::to_sequence(frames));
    ASSERT_EQ(res.path.size(), 6u);
    const double expected = testing::brute_force_best_log_probability(plain, frames);
    EXPECT_LT(std::abs(res.log_probability.value - expected), 1e-9 * std::abs(expected));
  }
}

TEST(Viterbi, NeverExceedsForwardLikelihood) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto hmm = testing::to_model(testing::random_plain_model(rng, 4, 2, 2));
    const auto seq = testing::to_sequence(testing::random_frames(rng, 20, 2));
    EXPECT_LE(viterbi_decode(hmm, seq).log_probability.value,
              forward_log_likelihood(hmm, seq).value + 1e-12);
  }
}

TEST(Viterbi, TiesGoToLowestIndex) {
  const HiddenMarkovModel hmm({0.5, 0.5}, Matrix{{0.5, 0.5}, {0.5, 0.5}},
                              {gauss1(0.0, 1.0), gauss1(0.0, 1.0)});
  const auto res = viterbi_decode(hmm, testing::to_sequence({{0.1}, {0.2}, {0.3}, {0.4}}));
  EXPECT_EQ(res.path, (std::vector<std::size_t>{0, 0, 0, 0}));
}

TEST(Viterbi, Errors) {
  EXPECT_THROW(viterbi_decode(frozen_model(), ObservationSequence{}), EmptySequenceError);
  EXPECT_THROW(viterbi_decode(frozen_model(), testing::to_sequence({{1.0, 2.0}})), DimensionError);
}

TEST(HiddenMarkovModel, RejectsNonStochasticTables) {
  EXPECT_THROW(HiddenMarkovModel({0.5, 0.6}, Matrix{{1.0, 0.0}, {0.0, 1.0}},
                                 {gauss1(0, 1), gauss1(0, 1)}),
               StochasticityError);
  EXPECT_THROW(HiddenMarkovModel({0.5, 0.5}, Matrix{{0.9, 0.2}, {0.0, 1.0}},
                                 {gauss1(0, 1), gauss1(0, 1)}),
               StochasticityError);
  EXPECT_THROW(HiddenMarkovModel({1.0}, Matrix{{1.0}}, {gauss1(0, 1), gauss1(0, 1)}), DimensionError);
}

}  // namespace
}  // namespace hsshmm
