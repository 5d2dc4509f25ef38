#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hsshmm/errors.hpp"
#include "hsshmm/gaussian_mixture.hpp"
#include "support/oracles.hpp"

namespace hsshmm {
namespace {

GaussianMixture standard_2d() { return GaussianMixture({{1.0, {0.0, 0.0}, {1.0, 1.0}}}); }

TEST(GaussianMixture, DensityAtMeanOfStandardGaussian) {
  const auto ll = gmm_log_pdf(standard_2d(), std::vector<double>{0.0, 0.0});
  ASSERT_TRUE(ll.valid);
  EXPECT_NEAR(ll.value, -1.837877, 1e-6);
}

TEST(GaussianMixture, EqualComponentsMatchSingleComponent) {
  const GaussianMixture twin({{0.5, {0.0, 0.0}, {1.0, 1.0}}, {0.5, {0.0, 0.0}, {1.0, 1.0}}});
  for (const auto& x : {std::vector<double>{0.0, 0.0}, {1.2, -0.7}, {5.0, 3.0}}) {
    EXPECT_NEAR(twin.log_pdf(x).value, standard_2d().log_pdf(x).value, 1e-14);
  }
}

TEST(GaussianMixture, FrozenThreeComponentValue) {
  // Reference computed by direct linear-space summation outside the library.
  const GaussianMixture g({{0.2, {0, 1, -1}, {1, 2, 0.5}},
                           {0.5, {1, 1, 1}, {0.3, 0.3, 0.3}},
                           {0.3, {-2, 0, 0.5}, {4, 1, 2}}});
  EXPECT_NEAR(g.log_pdf(std::vector<double>{0.4, 0.9, 0.2}).value, -3.1991537471063825, 1e-12);
}

TEST(GaussianMixture, MatchesLinearSpaceSummation) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> x(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto plain = testing::random_plain_model(rng, 1, 3, 3).emissions[0];
    std::vector<GaussianComponent> comps;
    for (const auto& c : plain) comps.push_back({c.weight, c.mean, c.variance});
    const GaussianMixture g(comps);
    const std::vector<double> point{x(rng), x(rng), x(rng)};
    const double expected = std::log(testing::mixture_density(plain, point));
    EXPECT_LT(testing::relative_error(g.log_pdf(point).value, expected), 1e-10);
  }
}

TEST(GaussianMixture, InvariantUnderComponentPermutation) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto plain = testing::random_plain_model(rng, 1, 4, 2).emissions[0];
    std::vector<GaussianComponent> comps;
    for (const auto& c : plain) comps.push_back({c.weight, c.mean, c.variance});
    const std::vector<double> point{0.3, -1.1};
    const double reference = GaussianMixture(comps).log_pdf(point).value;
    std::shuffle(comps.begin(), comps.end(), rng);
    EXPECT_LT(testing::relative_error(GaussianMixture(comps).log_pdf(point).value, reference), 1e-12);
  }
}

TEST(GaussianMixture, FarTailStaysFinite) {
  const GaussianMixture g({{0.5, {0.0}, {1e-6}}, {0.5, {1.0}, {1e-6}}});
  const auto ll = g.log_pdf(std::vector<double>{1000.0});
  EXPECT_TRUE(ll.valid);
  EXPECT_TRUE(std::isfinite(ll.value));
  EXPECT_LT(ll.value, -1e10);
}

TEST(GaussianMixture, RejectsDimensionMismatch) {
  EXPECT_THROW(gmm_log_pdf(standard_2d(), std::vector<double>{0.0}), DimensionError);
}

TEST(GaussianMixture, RejectsInvalidParameters) {
  EXPECT_THROW(GaussianMixture({{0.7, {0.0}, {1.0}}, {0.2, {1.0}, {1.0}}}), InvalidModelError);
  EXPECT_THROW(GaussianMixture({{1.0, {0.0}, {1e-9}}}), InvalidModelError);
  EXPECT_THROW(GaussianMixture({{0.5, {0.0}, {1.0}}, {0.5, {0.0, 1.0}, {1.0, 1.0}}}), DimensionError);
  EXPECT_THROW(GaussianMixture({}), InvalidModelError);
  EXPECT_NO_THROW(GaussianMixture({{1.0, {0.0}, {1e-9}}}, 1e-10));
}

TEST(LogLikelihood, NegativeInfinityIsInvalidAndNaNRejected) {
  EXPECT_FALSE(LogLikelihood::of(-std::numeric_limits<double>::infinity()).valid);
  EXPECT_TRUE(LogLikelihood::of(-3.0).valid);
  EXPECT_THROW(LogLikelihood::of(std::nan("")), Error);
}

}  // namespace
}  // namespace hsshmm
