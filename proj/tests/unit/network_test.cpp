#include <gtest/gtest.h>

#include <random>

#include "freight/adam.hpp"
#include "freight/network.hpp"
#include "gradient_check.hpp"

namespace freight {
namespace {

TEST(DenseNetwork, RejectsDegenerateShapes) {
  EXPECT_THROW(DenseNetwork({3}), std::invalid_argument);
  EXPECT_THROW(DenseNetwork({3, 0, 1}), std::invalid_argument);
}

TEST(DenseNetwork, ParameterLayout) {
  DenseNetwork net({3, 4, 2});
  EXPECT_EQ(net.num_params(), 3u * 4 + 4 + 4 * 2 + 2);
  EXPECT_EQ(net.num_layers(), 2u);
  net.bias(0, 0) = 7.0;
  EXPECT_EQ(net.params()[12], 7.0);
  net.weight(1, 1, 3) = -2.0;
  EXPECT_EQ(net.params()[16 + 1 * 4 + 3], -2.0);
}

TEST(DenseNetwork, LinearForward) {
  DenseNetwork net({2, 1});
  net.weight(0, 0, 0) = 2.0;
  net.weight(0, 0, 1) = -1.0;
  net.bias(0, 0) = 0.5;
  const std::vector<double> x{3.0, 4.0};
  EXPECT_DOUBLE_EQ(net.forward(x)[0], 2.5);
  EXPECT_THROW(net.forward(std::vector<double>{1.0}), std::invalid_argument);
}

TEST(DenseNetwork, HiddenReluClipsNegatives) {
  DenseNetwork net({1, 2, 1});
  net.weight(0, 0, 0) = 1.0;
  net.weight(0, 1, 0) = -1.0;
  net.weight(1, 0, 0) = 1.0;
  net.weight(1, 0, 1) = 1.0;
  EXPECT_DOUBLE_EQ(net.forward(std::vector<double>{2.0})[0], 2.0);
  EXPECT_DOUBLE_EQ(net.forward(std::vector<double>{-3.0})[0], 3.0);
}

TEST(DenseNetwork, BackwardAccumulates) {
  DenseNetwork net({2, 1});
  DenseNetwork::Trace t;
  net.forward(std::vector<double>{3.0, 4.0}, t);
  std::vector<double> g(net.num_params(), 1.0);
  net.backward(t, std::vector<double>{2.0}, g);
  EXPECT_EQ(g, (std::vector<double>{7.0, 9.0, 3.0}));
}

TEST(DenseNetwork, BackwardMatchesFiniteDifferences) {
  std::mt19937_64 eng(11);
  DenseNetwork net({5, 6, 4, 3});
  testing::randomize(net, eng);
  const std::vector<double> x{0.3, -0.2, 0.9, 0.1, 0.5};
  const std::vector<double> w{0.7, -1.3, 0.4};
  auto loss = [&] {
    const auto y = net.forward(x);
    return w[0] * y[0] + w[1] * y[1] + w[2] * y[2];
  };
  DenseNetwork::Trace t;
  net.forward(x, t);
  std::vector<double> g(net.num_params(), 0.0);
  net.backward(t, w, g);
  EXPECT_LT(testing::max_gradient_error(net, g, loss), 1e-6);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  AdamOptimizer opt({0.01, 0.9, 0.999, 1e-8}, 3);
  std::vector<double> p{1.0, 1.0, 1.0};
  opt.step(p, std::vector<double>{4.0, -0.5, 0.0});
  EXPECT_NEAR(p[0], 0.99, 1e-9);
  EXPECT_NEAR(p[1], 1.01, 1e-9);
  EXPECT_EQ(p[2], 1.0);
  EXPECT_EQ(opt.steps(), 1);
  EXPECT_NEAR(opt.first_moment()[0], 0.4, 1e-15);
  EXPECT_NEAR(opt.second_moment()[0], 0.016, 1e-15);
}

TEST(Adam, SecondStepUsesBiasCorrection) {
  AdamOptimizer opt({0.1, 0.9, 0.999, 0.0}, 1);
  std::vector<double> p{0.0};
  opt.step(p, std::vector<double>{1.0});
  opt.step(p, std::vector<double>{1.0});
  EXPECT_NEAR(p[0], -0.2, 1e-12);
}

TEST(Adam, RejectsBadInput) {
  EXPECT_THROW(AdamOptimizer({0.0}, 2), std::invalid_argument);
  AdamOptimizer opt({0.1}, 2);
  std::vector<double> p{0.0, 0.0};
  EXPECT_THROW(opt.step(p, std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(opt.restore(3, {0.0}, {0.0, 0.0}), std::invalid_argument);
  opt.restore(3, {0.1, 0.2}, {0.3, 0.4});
  EXPECT_EQ(opt.steps(), 3);
  EXPECT_EQ(opt.second_moment()[1], 0.4);
}

}  // namespace
}  // namespace freight
