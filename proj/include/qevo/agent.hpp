#pragma once

#include <array>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "qevo/coin_game.hpp"
#include "qevo/nn_policy.hpp"
#include "qevo/vqc_policy.hpp"

namespace qevo {

using ParamVector = std::vector<double>;

enum class AgentKind { vqc, nn, random };

// Shape of one agent; together with a flat parameter vector this fully
// determines the policy. The random agent carries no parameters.
struct AgentSpec {
  AgentKind kind = AgentKind::vqc;
  int n_qubits = 6;
  int n_layers = 8;
  std::array<int, 2> hidden{3, 4};
  int input_dim = kObservationSize;
  int n_actions = kNumActions;
};

inline std::size_t agent_param_count(const AgentSpec& spec) {
  switch (spec.kind) {
    case AgentKind::vqc:
      return vqc_param_count(spec.n_qubits, spec.n_layers, spec.n_actions);
    case AgentKind::nn:
      return nn_param_count(spec.input_dim, spec.hidden, spec.n_actions);
    case AgentKind::random:
      return 0;
  }
  throw std::invalid_argument("unknown agent kind");
}

inline ParamVector agent_init_params(const AgentSpec& spec,
                                     std::mt19937_64& rng) {
  switch (spec.kind) {
    case AgentKind::vqc:
      return init_vqc_genome(spec.n_qubits, spec.n_layers, spec.n_actions, rng)
          .params;
    case AgentKind::nn:
      return init_nn_genome(spec.input_dim, spec.hidden, spec.n_actions, rng)
          .params;
    case AgentKind::random:
      return {};
  }
  throw std::invalid_argument("unknown agent kind");
}

// One genome bound to its circuit or network, ready to score observations.
class Policy {
 public:
  Policy(const AgentSpec& spec, const ParamVector& params) : kind_(spec.kind) {
    if (params.size() != agent_param_count(spec)) {
      throw std::invalid_argument("genome size does not match agent spec");
    }
    switch (spec.kind) {
      case AgentKind::vqc:
        circuit_.emplace(
            VqcGenome{spec.n_qubits, spec.n_layers, spec.n_actions, params});
        break;
      case AgentKind::nn:
        network_ = NnGenome{spec.input_dim, spec.hidden, spec.n_actions,
                            params};
        break;
      case AgentKind::random:
        break;
    }
  }

  AgentKind kind() const { return kind_; }

  std::vector<double> values(std::span<const double> observation) const {
    switch (kind_) {
      case AgentKind::vqc:
        return circuit_->forward(observation);
      case AgentKind::nn:
        return nn_forward(*network_, observation);
      case AgentKind::random:
        break;
    }
    throw std::logic_error("the random agent has no action values");
  }

 private:
  AgentKind kind_;
  std::optional<VqcCircuit> circuit_;
  std::optional<NnGenome> network_;
};

}  // namespace qevo
