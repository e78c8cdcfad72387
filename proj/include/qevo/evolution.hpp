#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "qevo/action_select.hpp"
#include "qevo/agent.hpp"
#include "qevo/coin_game.hpp"
#include "qevo/metrics.hpp"

namespace qevo {

// Generational strategies: mutation only, random-point crossover plus
// mutation, layer-boundary crossover plus mutation.
enum class Strategy { mu, raremu, laremu };

struct EvolutionConfig {
  int population_size = 250;        // eta
  int generations = 200;            // mu
  int episode_steps = kEpisodeSteps;  // kappa
  int truncation = 5;               // tau
  double mutation_power = 0.01;     // sigma
  Strategy strategy = Strategy::mu;
  AgentSpec agent;
  std::uint64_t run_seed = 0;
  int threads = 0;  // 0 = all hardware threads; never affects results
};

inline void validate(const EvolutionConfig& config) {
  if (config.population_size < 2) {
    throw std::invalid_argument("population size must be at least 2");
  }
  if (config.truncation < 1 || config.truncation >= config.population_size) {
    throw std::invalid_argument("truncation must satisfy 1 <= tau < eta");
  }
  if (config.mutation_power < 0.0) {
    throw std::invalid_argument("mutation power must be nonnegative");
  }
  if (config.generations < 1) {
    throw std::invalid_argument("generation count must be positive");
  }
  if (config.episode_steps < 1) {
    throw std::invalid_argument("episode length must be positive");
  }
  if (config.strategy != Strategy::mu && config.truncation < 2) {
    throw std::invalid_argument(
        "crossover strategies need two distinct parents (tau >= 2)");
  }
  if (config.strategy == Strategy::laremu &&
      config.agent.kind != AgentKind::vqc) {
    throw std::invalid_argument(
        "layerwise crossover is specific to circuit genomes");
  }
  agent_param_count(config.agent);  // validates the agent shape
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
// only its own slots, so scheduling cannot change results.
template <typename Fn>
inline void parallel_for(int n, int threads, Fn&& fn) {
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    } catch (...) {
      std::scoped_lock lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

// Every (run, generation, individual) triple owns its own episode stream,
// so evaluation order and parallelism cannot leak into the results.
inline std::uint64_t episode_seed(std::uint64_t run_seed, int generation,
                                  int individual) {
  return detail::splitmix64(
      detail::splitmix64(detail::splitmix64(run_seed) +
                         static_cast<std::uint64_t>(generation)) +
      static_cast<std::uint64_t>(individual));
}

// Episode seed used when scoring one individual inside the training loop.
// Genome-driven agents all face the same evaluation episode for the whole
// run, which makes fitness a deterministic function of the genome; scoring
// each individual on its own fresh episode buries the tiny true fitness
// differences (sigma = 0.01 mutations) under per-episode noise and stalls
// selection. The untrained random baseline keeps fresh per-individual
// episodes so its reported score keeps fluctuating around zero.
inline std::uint64_t evaluation_seed(std::uint64_t run_seed, int generation,
                                     int individual, AgentKind kind) {
  if (kind == AgentKind::random) {
    return episode_seed(run_seed, generation, individual);
  }
  return episode_seed(run_seed, 0, 0);
}

struct EvaluatedIndividual {
  ParamVector genome;
  EpisodeStats stats;

  double fitness() const { return stats.score; }
};

namespace detail {

template <typename SelectFn>
inline EpisodeStats play_selfplay_episode(SelectFn&& select,
                                          std::mt19937_64& rng,
                                          int episode_steps,
                                          EpisodeTrace* trace) {
  CoinGameState state = reset(rng);
  EpisodeStats stats;
  for (int t = 0; t < episode_steps; ++t) {
    const Observation obs = observe(state);
    const ActionMask mask = legal_mask(state);
    const int agent = state.active_agent;
    const int action = select(obs, mask);
    const StepOutcome outcome = step(state, action, rng);
    stats.score += outcome.rewards[0] + outcome.rewards[1];
    if (outcome.collection) {
      ++stats.total_coins;
      if (outcome.collection->own_color) ++stats.own_coins;
    }
    if (trace) trace->push_back({t, agent, action, outcome});
  }
  return stats;
}

}  // namespace detail

// One self-play episode: both grid agents act with the same genome; fitness
// is the summed reward of both agents. Deterministic given (genome, seed).
inline EvaluatedIndividual evaluate_fitness(const AgentSpec& spec,
                                            const ParamVector& genome,
                                            std::uint64_t seed,
                                            int episode_steps = kEpisodeSteps,
                                            EpisodeTrace* trace = nullptr) {
  std::mt19937_64 rng(seed);
  EpisodeStats stats;
  if (spec.kind == AgentKind::random) {
    stats = detail::play_selfplay_episode(
        [&rng](const Observation&, const ActionMask& mask) {
          std::array<int, kNumActions> legal{};
          int count = 0;
          for (int a = 0; a < kNumActions; ++a) {
            if (mask[a]) legal[count++] = a;
          }
          std::uniform_int_distribution<int> pick(0, count - 1);
          return legal[pick(rng)];
        },
        rng, episode_steps, trace);
  } else {
    const Policy policy(spec, genome);
    stats = detail::play_selfplay_episode(
        [&policy](const Observation& obs, const ActionMask& mask) {
          return select_action(policy.values(obs), mask);
        },
        rng, episode_steps, trace);
  }
  return {genome, stats};
}

struct SelectionResult {
  std::vector<std::size_t> selected;  // population indices of the top tau, best first
  std::size_t elite = 0;              // population index of the single best
};

// Top tau by fitness, ties broken by lower population index.
inline SelectionResult truncation_select(
    std::span<const EvaluatedIndividual> population, int tau) {
  if (tau < 1 || static_cast<std::size_t>(tau) > population.size()) {
    throw std::invalid_argument("tau must be in [1, population size]");
  }
  std::vector<std::size_t> order(population.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&population](std::size_t a, std::size_t b) {
                     return population[a].fitness() > population[b].fitness();
                   });
  order.resize(static_cast<std::size_t>(tau));
  const std::size_t elite = order[0];
  return {std::move(order), elite};
}

// theta <- theta + sigma * N(0, 1), independently per parameter, no
// clipping (angles are periodic anyway).
inline ParamVector mutate(ParamVector genome, double sigma,
                          std::mt19937_64& rng) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be nonnegative");
  if (sigma == 0.0) return genome;
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double& p : genome) p += sigma * noise(rng);
  return genome;
}

inline ParamVector crossover_at(const ParamVector& parent_a,
                                const ParamVector& parent_b,
                                std::size_t point) {
  if (parent_a.size() != parent_b.size()) {
    throw std::invalid_argument("crossover parents must have equal shape");
  }
  if (point > parent_a.size()) {
    throw std::invalid_argument("crossover point out of range");
  }
  ParamVector child(parent_a.begin(),
                    parent_a.begin() + static_cast<std::ptrdiff_t>(point));
  child.insert(child.end(),
               parent_b.begin() + static_cast<std::ptrdiff_t>(point),
               parent_b.end());
  return child;
}

// Cut at a uniform index in [0, param_count]; child = A-prefix ++ B-suffix.
inline ParamVector crossover_random(const ParamVector& parent_a,
                                    const ParamVector& parent_b,
                                    std::mt19937_64& rng) {
  if (parent_a.size() != parent_b.size()) {
    throw std::invalid_argument("crossover parents must have equal shape");
  }
  std::uniform_int_distribution<std::size_t> point(0, parent_a.size());
  return crossover_at(parent_a, parent_b, point(rng));
}

// Cut after the last angle of a uniformly chosen layer: point
// (l + 1) * 3 * n_qubits in the flat layout, so the child takes layers
// 0..l from A and the remaining layers plus all biases from B.
inline ParamVector crossover_layerwise(const ParamVector& parent_a,
                                       const ParamVector& parent_b,
                                       int n_layers, int n_qubits,
                                       std::mt19937_64& rng) {
  if (n_layers < 1 || n_qubits < 1) {
    throw std::invalid_argument("layerwise crossover needs circuit shape");
  }
  std::uniform_int_distribution<int> layer(0, n_layers - 1);
  const std::size_t point =
      static_cast<std::size_t>(layer(rng) + 1) * 3 * n_qubits;
  return crossover_at(parent_a, parent_b, point);
}

namespace detail {

// Two distinct indices into `selected`, each uniform.
inline std::pair<std::size_t, std::size_t> distinct_parents(
    std::size_t tau, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> first(0, tau - 1);
  std::uniform_int_distribution<std::size_t> second(0, tau - 2);
  const std::size_t a = first(rng);
  std::size_t b = second(rng);
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace detail

// eta - 1 offspring bred from the top tau (strategy-dependent), all mutated,
// plus the untouched elite appended last.
inline std::vector<ParamVector> next_generation(
    std::span<const EvaluatedIndividual> evaluated,
    const EvolutionConfig& config, std::mt19937_64& rng) {
  if (evaluated.size() !=
      static_cast<std::size_t>(config.population_size)) {
    throw std::invalid_argument("evaluated population has the wrong size");
  }
  const SelectionResult selection =
      truncation_select(evaluated, config.truncation);
  const std::size_t tau = selection.selected.size();

  std::vector<ParamVector> population;
  population.reserve(evaluated.size());
  std::uniform_int_distribution<std::size_t> parent(0, tau - 1);
  for (std::size_t i = 0; i + 1 < evaluated.size(); ++i) {
    ParamVector child;
    switch (config.strategy) {
      case Strategy::mu:
        child = evaluated[selection.selected[parent(rng)]].genome;
        break;
      case Strategy::raremu: {
        const auto [a, b] = detail::distinct_parents(tau, rng);
        child = crossover_random(evaluated[selection.selected[a]].genome,
                                 evaluated[selection.selected[b]].genome, rng);
        break;
      }
      case Strategy::laremu: {
        const auto [a, b] = detail::distinct_parents(tau, rng);
        child = crossover_layerwise(
            evaluated[selection.selected[a]].genome,
            evaluated[selection.selected[b]].genome, config.agent.n_layers,
            config.agent.n_qubits, rng);
        break;
      }
    }
    population.push_back(mutate(std::move(child), config.mutation_power, rng));
  }
  population.push_back(evaluated[selection.elite].genome);
  return population;
}

struct EvolutionResult {
  std::vector<GenerationRecord> records;
  ParamVector final_elite;
  std::vector<ParamVector> final_population;
};

// Full optimization loop. Each generation scores every individual (see
// evaluation_seed for the episode-seeding rule), records the population
// metrics and breeds the next population. Deterministic for a fixed config,
// regardless of thread count.
inline EvolutionResult run_evolution(const EvolutionConfig& config) {
  validate(config);
  std::mt19937_64 rng(config.run_seed);
  const int eta = config.population_size;

  std::vector<ParamVector> population;
  population.reserve(static_cast<std::size_t>(eta));
  for (int i = 0; i < eta; ++i) {
    population.push_back(agent_init_params(config.agent, rng));
  }

  EvolutionResult result;
  result.records.reserve(static_cast<std::size_t>(config.generations));
  for (int g = 0; g < config.generations; ++g) {
    std::vector<EvaluatedIndividual> evaluated(
        static_cast<std::size_t>(eta));
    detail::parallel_for(eta, config.threads, [&](int i) {
      evaluated[static_cast<std::size_t>(i)] = evaluate_fitness(
          config.agent, population[static_cast<std::size_t>(i)],
          evaluation_seed(config.run_seed, g, i, config.agent.kind),
          config.episode_steps);
    });

    std::vector<EpisodeStats> stats;
    stats.reserve(evaluated.size());
    for (const EvaluatedIndividual& ind : evaluated) {
      stats.push_back(ind.stats);
    }
    result.records.push_back(aggregate(stats, g, config.run_seed));

    if (g + 1 < config.generations) {
      population = next_generation(evaluated, config, rng);
    } else {
      const SelectionResult last = truncation_select(evaluated, 1);
      result.final_elite = evaluated[last.selected[0]].genome;
      result.final_population = std::move(population);
    }
  }
  return result;
}

}  // namespace qevo
