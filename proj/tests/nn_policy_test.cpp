#include "qevo/nn_policy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace qevo;

namespace {

// Straight-line reference written without the shared affine helper.
std::vector<double> reference_forward(const NnGenome& g,
                                      const std::vector<double>& x) {
  const int h1 = g.hidden[0], h2 = g.hidden[1];
  std::size_t p = 0;
  std::vector<double> a(h1), b(h2), out(g.n_actions);
  for (int o = 0; o < h1; ++o) {
    double acc = 0.0;
    for (int i = 0; i < g.input_dim; ++i) {
      acc += g.params[p + o * g.input_dim + i] * x[i];
    }
    a[o] = acc;
  }
  p += static_cast<std::size_t>(h1) * g.input_dim;
  for (int o = 0; o < h1; ++o) a[o] = std::tanh(a[o] + g.params[p + o]);
  p += h1;
  for (int o = 0; o < h2; ++o) {
    double acc = 0.0;
    for (int i = 0; i < h1; ++i) acc += g.params[p + o * h1 + i] * a[i];
    b[o] = acc;
  }
  p += static_cast<std::size_t>(h2) * h1;
  for (int o = 0; o < h2; ++o) b[o] = std::tanh(b[o] + g.params[p + o]);
  p += h2;
  for (int o = 0; o < g.n_actions; ++o) {
    double acc = 0.0;
    for (int i = 0; i < h2; ++i) acc += g.params[p + o * h2 + i] * b[i];
    out[o] = acc;
  }
  p += static_cast<std::size_t>(g.n_actions) * h2;
  for (int o = 0; o < g.n_actions; ++o) out[o] += g.params[p + o];
  return out;
}

TEST(NnParamCount, PublishedConfigurations) {
  EXPECT_EQ(nn_param_count(36, {3, 4}, 4), 147u);
  EXPECT_EQ(nn_param_count(36, {64, 64}, 4), 6788u);
  EXPECT_EQ(nn_param_count(1, {1, 1}, 1), 6u);
  EXPECT_THROW(nn_param_count(0, {1, 1}, 1), std::invalid_argument);
  EXPECT_THROW(nn_param_count(1, {1, 0}, 1), std::invalid_argument);
}

TEST(InitNnGenome, ShapeAndDeterminism) {
  std::mt19937_64 rng(9);
  const NnGenome g = init_nn_genome(36, {3, 4}, 4, rng);
  EXPECT_EQ(g.params.size(), 147u);
  for (double p : g.params) {
    EXPECT_GE(p, -3.14159266);
    EXPECT_LE(p, 3.14159266);
  }
  EXPECT_EQ(init_nn_genome(36, {64, 64}, 4, rng).params.size(), 6788u);
  std::mt19937_64 rng_a(4), rng_b(4);
  EXPECT_EQ(init_nn_genome(36, {3, 4}, 4, rng_a).params,
            init_nn_genome(36, {3, 4}, 4, rng_b).params);
}

TEST(NnForward, ZeroNetworkIsZero) {
  const NnGenome g{36, {3, 4}, 4, std::vector<double>(147, 0.0)};
  const std::vector<double> out = nn_forward(g, std::vector<double>(36, 1.0));
  ASSERT_EQ(out.size(), 4u);
  for (double v : out) EXPECT_EQ(v, 0.0);
}

TEST(NnForward, OutputBiasesPassThrough) {
  NnGenome g{36, {3, 4}, 4, std::vector<double>(147, 0.0)};
  g.params[143] = 1.0;
  g.params[144] = 2.0;
  g.params[145] = 3.0;
  g.params[146] = 4.0;
  const std::vector<double> out = nn_forward(g, std::vector<double>(36, 0.5));
  EXPECT_DOUBLE_EQ(out[0], 1.0);
  EXPECT_DOUBLE_EQ(out[1], 2.0);
  EXPECT_DOUBLE_EQ(out[2], 3.0);
  EXPECT_DOUBLE_EQ(out[3], 4.0);
}

TEST(NnForward, MatchesStraightLineReference) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> feature(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const NnGenome g = init_nn_genome(36, {3, 4}, 4, rng);
    std::vector<double> x(36);
    for (double& f : x) f = feature(rng);
    const std::vector<double> got = nn_forward(g, x);
    const std::vector<double> want = reference_forward(g, x);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t k = 0; k < got.size(); ++k) {
      EXPECT_NEAR(got[k], want[k], 1e-12);
    }
  }
}

TEST(NnForward, FiniteForLargeWeights) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> weight(-10.0, 10.0);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    NnGenome g{36, {3, 4}, 4,
               std::vector<double>(nn_param_count(36, {3, 4}, 4))};
    for (double& p : g.params) p = weight(rng);
    std::vector<double> x(36);
    for (double& f : x) f = bit(rng);
    for (double v : nn_forward(g, x)) EXPECT_TRUE(std::isfinite(v));
  }
}

TEST(NnForward, RejectsBadShapes) {
  const NnGenome g{36, {3, 4}, 4, std::vector<double>(147, 0.0)};
  EXPECT_THROW(nn_forward(g, std::vector<double>(35, 0.0)),
               std::invalid_argument);
  const NnGenome wrong{36, {3, 4}, 4, std::vector<double>(146, 0.0)};
  EXPECT_THROW(nn_forward(wrong, std::vector<double>(36, 0.0)),
               std::invalid_argument);
}

TEST(NnSelectAction, SharedMaskingRule) {
  const std::vector<double> v1{5.0, 1.0, 1.0, 1.0};
  const std::array<bool, 4> all{true, true, true, true};
  EXPECT_EQ(nn_select_action(v1, all), 0);

  const std::vector<double> v2{5.0, 1.0, 2.0, 1.0};
  const std::array<bool, 4> no_first{false, true, true, true};
  EXPECT_EQ(nn_select_action(v2, no_first), 2);

  const std::vector<double> v3{2.0, 2.0, 2.0, 2.0};
  EXPECT_EQ(nn_select_action(v3, all), 0);

  const std::array<bool, 4> none{false, false, false, false};
  EXPECT_THROW(nn_select_action(v1, none), std::invalid_argument);
}

}  // namespace
