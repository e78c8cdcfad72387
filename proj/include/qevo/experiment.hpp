#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qevo/evolution.hpp"

namespace qevo {

inline constexpr const char* kVersion = "1.0.0";

inline constexpr const char* kCsvHeader =
    "seed,generation,mean_score,max_score,mean_total_coins,mean_own_coins,"
    "own_coin_rate";

inline std::string strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::mu: return "mu";
    case Strategy::raremu: return "raremu";
    case Strategy::laremu: return "laremu";
  }
  throw std::invalid_argument("unknown strategy");
}

inline Strategy parse_strategy(const std::string& name) {
  if (name == "mu") return Strategy::mu;
  if (name == "raremu") return Strategy::raremu;
  if (name == "laremu") return Strategy::laremu;
  throw std::invalid_argument("unknown strategy: " + name);
}

inline std::string agent_kind_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::vqc: return "vqc";
    case AgentKind::nn: return "nn";
    case AgentKind::random: return "random";
  }
  throw std::invalid_argument("unknown agent kind");
}

inline AgentKind parse_agent_kind(const std::string& name) {
  if (name == "vqc") return AgentKind::vqc;
  if (name == "nn") return AgentKind::nn;
  if (name == "random") return AgentKind::random;
  throw std::invalid_argument("unknown agent kind: " + name);
}

struct ExperimentConfig {
  EvolutionConfig evolution;  // run_seed is overridden per seed below
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  std::filesystem::path out_dir = "runs";
};

inline nlohmann::json config_to_json(const ExperimentConfig& config) {
  const EvolutionConfig& evo = config.evolution;
  return nlohmann::json{
      {"agent", agent_kind_name(evo.agent.kind)},
      {"strategy", strategy_name(evo.strategy)},
      {"qubits", evo.agent.n_qubits},
      {"layers", evo.agent.n_layers},
      {"hidden", {evo.agent.hidden[0], evo.agent.hidden[1]}},
      {"population", evo.population_size},
      {"generations", evo.generations},
      {"tau", evo.truncation},
      {"sigma", evo.mutation_power},
      {"episode_steps", evo.episode_steps},
      {"threads", evo.threads},
      {"seeds", config.seeds},
      {"out", config.out_dir.string()},
  };
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig config;
  EvolutionConfig& evo = config.evolution;
  evo.agent.kind = parse_agent_kind(j.at("agent").get<std::string>());
  evo.strategy = parse_strategy(j.at("strategy").get<std::string>());
  evo.agent.n_qubits = j.at("qubits").get<int>();
  evo.agent.n_layers = j.at("layers").get<int>();
  const auto hidden = j.at("hidden").get<std::vector<int>>();
  if (hidden.size() != 2) {
    throw std::invalid_argument("hidden must list exactly two sizes");
  }
  evo.agent.hidden = {hidden[0], hidden[1]};
  evo.population_size = j.at("population").get<int>();
  evo.generations = j.at("generations").get<int>();
  evo.truncation = j.at("tau").get<int>();
  evo.mutation_power = j.at("sigma").get<double>();
  evo.episode_steps = j.at("episode_steps").get<int>();
  evo.threads = j.value("threads", 0);
  config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  config.out_dir = j.value("out", std::string("runs"));
  return config;
}

// One CSV row, floats fixed to 6 decimals, LF line ending supplied by the
// writer.
inline std::string format_record_row(const GenerationRecord& record) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "%llu,%d,%.6f,%.6f,%.6f,%.6f,%.6f",
                static_cast<unsigned long long>(record.run_seed),
                record.generation, record.mean_score, record.max_score,
                record.mean_total_coins, record.mean_own_coins,
                record.own_coin_rate);
  return buf;
}

inline void write_seed_csv(const std::filesystem::path& path,
                           std::span<const GenerationRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << kCsvHeader << '\n';
  for (const GenerationRecord& record : records) {
    out << format_record_row(record) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Per-generation means of every metric across seeds.
inline void write_aggregate_csv(
    const std::filesystem::path& path,
    const std::vector<std::vector<GenerationRecord>>& runs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "generation,mean_score,max_score,mean_total_coins,mean_own_coins,"
         "own_coin_rate\n";
  if (runs.empty()) return;
  const std::size_t generations = runs[0].size();
  for (std::size_t g = 0; g < generations; ++g) {
    double mean_score = 0.0, max_score = 0.0, total = 0.0, own = 0.0,
           rate = 0.0;
    for (const std::vector<GenerationRecord>& run : runs) {
      mean_score += run[g].mean_score;
      max_score += run[g].max_score;
      total += run[g].mean_total_coins;
      own += run[g].mean_own_coins;
      rate += run[g].own_coin_rate;
    }
    const double n = static_cast<double>(runs.size());
    char buf[192];
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f,%.6f,%.6f\n", g,
                  mean_score / n, max_score / n, total / n, own / n,
                  rate / n);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct ExperimentOutput {
  std::vector<std::vector<GenerationRecord>> per_seed_records;
  std::vector<ParamVector> final_elites;  // one per seed
};

// Runs one experiment over all seeds, writing seed_<n>.csv per seed plus
// aggregate.csv and manifest.json. Returns a process exit status.
inline int run_experiment(const ExperimentConfig& config,
                          ExperimentOutput* output = nullptr) {
  try {
    if (config.seeds.empty()) {
      throw std::invalid_argument("at least one seed is required");
    }
    {
      EvolutionConfig probe = config.evolution;
      probe.run_seed = config.seeds[0];
      validate(probe);
    }
    std::filesystem::create_directories(config.out_dir);

    const auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<GenerationRecord>> runs;
    nlohmann::json elites = nlohmann::json::array();
    ExperimentOutput local;
    for (std::uint64_t seed : config.seeds) {
      EvolutionConfig evo = config.evolution;
      evo.run_seed = seed;
      EvolutionResult result = run_evolution(evo);
      write_seed_csv(config.out_dir / ("seed_" + std::to_string(seed) +
                                       ".csv"),
                     result.records);
      elites.push_back(result.final_elite);
      runs.push_back(std::move(result.records));
      local.final_elites.push_back(std::move(result.final_elite));
    }
    write_aggregate_csv(config.out_dir / "aggregate.csv", runs);

    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    nlohmann::json manifest{
        {"version", kVersion},
        {"config", config_to_json(config)},
        {"final_elites", std::move(elites)},
        {"duration_seconds", duration},
    };
    std::ofstream out(config.out_dir / "manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: manifest.json");

    if (output) {
      local.per_seed_records = std::move(runs);
      *output = std::move(local);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qevo
