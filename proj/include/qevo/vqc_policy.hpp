#pragma once

#include <cstddef>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qevo/statevector.hpp"

namespace qevo {

// Variational-circuit agent. The flat parameter layout is load-bearing
// (crossover operators cut it at fixed offsets):
//
//   params[l * 3 * n_qubits + q * 3 + s]   rotation angle, layer l, qubit q,
//                                          slot s in {0: RZ, 1: RY, 2: RZ}
//   params[3 * n_qubits * n_layers + k]    bias added to action value k
struct VqcGenome {
  int n_qubits = 0;
  int n_layers = 0;
  int n_actions = 0;
  std::vector<double> params;

  std::size_t angle_count() const {
    return static_cast<std::size_t>(3) * n_qubits * n_layers;
  }
  double angle(int layer, int qubit, int slot) const {
    return params[static_cast<std::size_t>(layer) * 3 * n_qubits + qubit * 3 +
                  slot];
  }
  double bias(int action) const { return params[angle_count() + action]; }
  std::span<const double> angles() const {
    return {params.data(), angle_count()};
  }
  std::span<const double> biases() const {
    return {params.data() + angle_count(),
            static_cast<std::size_t>(n_actions)};
  }
};

inline std::size_t vqc_param_count(int n_qubits, int n_layers, int n_actions) {
  if (n_qubits < 1 || n_layers < 1 || n_actions < 1) {
    throw std::invalid_argument("vqc dimensions must be positive");
  }
  return static_cast<std::size_t>(3) * n_qubits * n_layers + n_actions;
}

// Angles uniform in [-pi, pi], biases zero.
inline VqcGenome init_vqc_genome(int n_qubits, int n_layers, int n_actions,
                                 std::mt19937_64& rng) {
  const std::size_t count = vqc_param_count(n_qubits, n_layers, n_actions);
  VqcGenome genome{n_qubits, n_layers, n_actions,
                   std::vector<double>(count, 0.0)};
  std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                               std::numbers::pi);
  for (std::size_t i = 0; i < genome.angle_count(); ++i) {
    genome.params[i] = angle(rng);
  }
  return genome;
}

namespace detail {

// Destination index of every basis state under the entangling ring
// CNOT(0,1), CNOT(1,2), ..., CNOT(n-1,0), applied in ascending control
// order. CNOTs only relabel basis states, so the whole ring is a
// permutation of the amplitudes.
inline std::vector<std::size_t> ring_permutation(int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<std::size_t> perm(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t image = k;
    for (int i = 0; i < n_qubits; ++i) {
      const std::size_t cm = qubit_mask(n_qubits, i);
      const std::size_t tm = qubit_mask(n_qubits, (i + 1) % n_qubits);
      if (image & cm) image ^= tm;
    }
    perm[k] = image;
  }
  return perm;
}

}  // namespace detail

// A genome compiled for repeated evaluation: the RZ/RY/RZ triple fuses into
// one 2x2 unitary per qubit per layer, and the CNOT ring becomes a
// precomputed amplitude permutation. Observationally identical to applying
// the gates one by one.
class VqcCircuit {
 public:
  explicit VqcCircuit(const VqcGenome& genome)
      : n_qubits_(genome.n_qubits),
        n_layers_(genome.n_layers),
        n_actions_(genome.n_actions) {
    if (genome.params.size() !=
        vqc_param_count(n_qubits_, n_layers_, n_actions_)) {
      throw std::invalid_argument("vqc genome has wrong parameter count");
    }
    if (n_actions_ > n_qubits_) {
      throw std::invalid_argument(
          "cannot measure more actions than qubits");
    }
    rotations_.reserve(static_cast<std::size_t>(n_layers_) * n_qubits_);
    for (int l = 0; l < n_layers_; ++l) {
      for (int q = 0; q < n_qubits_; ++q) {
        const double alpha = genome.angle(l, q, 0);
        const double beta = genome.angle(l, q, 1);
        const double gamma = genome.angle(l, q, 2);
        // state <- RZ(gamma) RY(beta) RZ(alpha) state
        rotations_.push_back(mat2_mul(
            rz_matrix(gamma), mat2_mul(ry_matrix(beta), rz_matrix(alpha))));
      }
    }
    biases_.assign(genome.biases().begin(), genome.biases().end());
    if (n_qubits_ >= 2) ring_ = detail::ring_permutation(n_qubits_);
  }

  int n_actions() const { return n_actions_; }

  std::vector<double> forward(std::span<const double> observation) const {
    StateVector state = amplitude_embed(observation, n_qubits_);
    std::vector<Complex> scratch(state.dim());
    for (int l = 0; l < n_layers_; ++l) {
      if (!ring_.empty()) {
        for (std::size_t k = 0; k < state.dim(); ++k) {
          scratch[ring_[k]] = state.amps[k];
        }
        state.amps.swap(scratch);
      }
      for (int q = 0; q < n_qubits_; ++q) {
        apply_1q(state, q, rotations_[static_cast<std::size_t>(l) * n_qubits_ + q]);
      }
    }
    std::vector<double> values(n_actions_);
    for (int k = 0; k < n_actions_; ++k) {
      values[k] = expectation_z(state, k) + biases_[k];
    }
    return values;
  }

 private:
  int n_qubits_;
  int n_layers_;
  int n_actions_;
  std::vector<Mat2> rotations_;      // layer-major, one per qubit
  std::vector<double> biases_;
  std::vector<std::size_t> ring_;    // empty for a single qubit
};

// Embed + n_layers x (CNOT ring, then RZ/RY/RZ on every qubit), then Z
// expectation of the first n_actions qubits plus their biases.
inline std::vector<double> vqc_forward(const VqcGenome& genome,
                                       std::span<const double> observation) {
  return VqcCircuit(genome).forward(observation);
}

}  // namespace qevo
