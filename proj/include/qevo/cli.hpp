#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qevo/experiment.hpp"

namespace qevo {

struct CliOptions {
  ExperimentConfig config;
  std::string trace_file;  // empty = no demo trace requested
};

// Builds the experiment configuration from argv, an optional key=value
// config file and the built-in defaults, in that order of precedence.
// Returns the process exit code when parsing already settled the outcome
// (help text or a usage error), otherwise nullopt with `options` filled in.
inline std::optional<int> parse_command_line(int argc,
                                             const char* const* argv,
                                             CliOptions& options) {
  CLI::App app{
      "Evolutionary training of variational-quantum-circuit and "
      "neural-network agents in the cooperative Coin Game"};
  app.set_config("--config", "", "flat key=value configuration file");

  std::string agent = "vqc";
  std::string strategy = "mu";
  int qubits = 6;
  int layers = 8;
  std::vector<int> hidden{3, 4};
  int population = 250;
  int generations = 200;
  int tau = 5;
  double sigma = 0.01;
  int episode_steps = kEpisodeSteps;
  int threads = 0;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::string out = "runs";
  std::string trace;

  app.add_option("--agent", agent, "agent kind")
      ->check(CLI::IsMember({"vqc", "nn", "random"}))
      ->capture_default_str();
  app.add_option("--strategy", strategy, "generational strategy")
      ->check(CLI::IsMember({"mu", "raremu", "laremu"}))
      ->capture_default_str();
  app.add_option("--qubits", qubits, "circuit width")->capture_default_str();
  app.add_option("--layers", layers, "variational layer count")
      ->capture_default_str();
  app.add_option("--hidden", hidden, "NN hidden sizes H1,H2")
      ->delimiter(',')
      ->expected(1, 2);
  app.add_option("--population", population, "population size")
      ->capture_default_str();
  app.add_option("--generations", generations, "generation count")
      ->capture_default_str();
  app.add_option("--tau", tau, "truncation selection size")
      ->capture_default_str();
  app.add_option("--sigma", sigma, "mutation power")->capture_default_str();
  app.add_option("--episode-steps", episode_steps, "episode length")
      ->capture_default_str();
  app.add_option("--threads", threads,
                 "evaluation worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--seeds", seeds, "run seeds, comma separated")
      ->delimiter(',');
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--trace", trace,
                 "after training, write one demo episode of the first "
                 "seed's elite to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (hidden.size() != 2) {
      throw std::invalid_argument("--hidden expects exactly two sizes");
    }
    ExperimentConfig config;
    config.evolution.agent.kind = parse_agent_kind(agent);
    config.evolution.agent.n_qubits = qubits;
    config.evolution.agent.n_layers = layers;
    config.evolution.agent.hidden = {hidden[0], hidden[1]};
    config.evolution.strategy = parse_strategy(strategy);
    config.evolution.population_size = population;
    config.evolution.generations = generations;
    config.evolution.truncation = tau;
    config.evolution.mutation_power = sigma;
    config.evolution.episode_steps = episode_steps;
    config.evolution.threads = threads;
    config.seeds = seeds;
    config.out_dir = out;
    if (config.seeds.empty()) {
      throw std::invalid_argument("at least one seed is required");
    }
    config.evolution.run_seed = config.seeds[0];
    validate(config.evolution);
    options.config = std::move(config);
    options.trace_file = trace;
  } catch (const std::exception& e) {
    std::cerr << argv[0] << ": " << e.what() << '\n';
    return 2;
  }
  return std::nullopt;
}

}  // namespace qevo
