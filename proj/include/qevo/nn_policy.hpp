#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qevo/action_select.hpp"

namespace qevo {

// Two-hidden-layer fully connected baseline, tanh hidden activations and a
// linear output layer. Flat parameter layout, in order:
//   W1 (h1 rows of input_dim, row-major by output unit), b1 (h1),
//   W2 (h2 rows of h1), b2 (h2), W3 (n_actions rows of h2), b3 (n_actions).
struct NnGenome {
  int input_dim = 0;
  std::array<int, 2> hidden{0, 0};
  int n_actions = 0;
  std::vector<double> params;
};

inline std::size_t nn_param_count(int input_dim, std::array<int, 2> hidden,
                                  int n_actions) {
  if (input_dim < 1 || hidden[0] < 1 || hidden[1] < 1 || n_actions < 1) {
    throw std::invalid_argument("nn dimensions must be positive");
  }
  const auto [h1, h2] = hidden;
  return static_cast<std::size_t>(input_dim) * h1 + h1 +
         static_cast<std::size_t>(h1) * h2 + h2 +
         static_cast<std::size_t>(h2) * n_actions + n_actions;
}

// All parameters uniform in [-pi, pi], the same range the circuit genomes
// start from, so one mutation power serves both agent types.
inline NnGenome init_nn_genome(int input_dim, std::array<int, 2> hidden,
                               int n_actions, std::mt19937_64& rng) {
  const std::size_t count = nn_param_count(input_dim, hidden, n_actions);
  NnGenome genome{input_dim, hidden, n_actions, std::vector<double>(count)};
  std::uniform_real_distribution<double> weight(-std::numbers::pi,
                                                std::numbers::pi);
  for (double& p : genome.params) p = weight(rng);
  return genome;
}

namespace detail {

// y = W x + b where W occupies `out_dim` rows starting at params[offset],
// followed by the biases. Returns the offset past this layer.
inline std::size_t affine(std::span<const double> params, std::size_t offset,
                          std::span<const double> x, std::vector<double>& y,
                          int out_dim) {
  y.assign(static_cast<std::size_t>(out_dim), 0.0);
  for (int o = 0; o < out_dim; ++o) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      acc += params[offset + o * x.size() + i] * x[i];
    }
    y[o] = acc;
  }
  offset += static_cast<std::size_t>(out_dim) * x.size();
  for (int o = 0; o < out_dim; ++o) y[o] += params[offset + o];
  return offset + out_dim;
}

}  // namespace detail

inline std::vector<double> nn_forward(const NnGenome& genome,
                                      std::span<const double> observation) {
  if (static_cast<int>(observation.size()) != genome.input_dim) {
    throw std::invalid_argument("observation length must equal input_dim");
  }
  if (genome.params.size() !=
      nn_param_count(genome.input_dim, genome.hidden, genome.n_actions)) {
    throw std::invalid_argument("nn genome has wrong parameter count");
  }
  std::vector<double> h1;
  std::vector<double> h2;
  std::vector<double> out;
  std::size_t offset =
      detail::affine(genome.params, 0, observation, h1, genome.hidden[0]);
  for (double& v : h1) v = std::tanh(v);
  offset = detail::affine(genome.params, offset, h1, h2, genome.hidden[1]);
  for (double& v : h2) v = std::tanh(v);
  detail::affine(genome.params, offset, h2, out, genome.n_actions);
  return out;
}

// Same masking rule as the circuit agent.
inline int nn_select_action(std::span<const double> values,
                            std::span<const bool> mask) {
  return select_action(values, mask);
}

}  // namespace qevo
