#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "qevo/coin_game.hpp"

namespace qevo {

struct EpisodeStats {
  double score = 0.0;   // summed reward of both agents
  int total_coins = 0;
  int own_coins = 0;
};

inline EpisodeStats episode_metrics(const EpisodeTrace& trace) {
  EpisodeStats stats;
  for (const StepRecord& record : trace) {
    stats.score += record.outcome.rewards[0] + record.outcome.rewards[1];
    if (record.outcome.collection) {
      ++stats.total_coins;
      if (record.outcome.collection->own_color) ++stats.own_coins;
    }
  }
  return stats;
}

// OC/TC with the empty case defined as 0.
inline double own_coin_rate(long long own_coins, long long total_coins) {
  if (own_coins < 0 || total_coins < 0 || own_coins > total_coins) {
    throw std::invalid_argument("own_coins must be in [0, total_coins]");
  }
  if (total_coins == 0) return 0.0;
  return static_cast<double>(own_coins) / static_cast<double>(total_coins);
}

struct GenerationRecord {
  std::uint64_t run_seed = 0;
  int generation = 0;
  double mean_score = 0.0;
  double max_score = 0.0;
  double mean_total_coins = 0.0;
  double mean_own_coins = 0.0;
  double own_coin_rate = 0.0;  // micro-averaged: sum own / sum total
};

inline GenerationRecord aggregate(std::span<const EpisodeStats> population,
                                  int generation, std::uint64_t run_seed) {
  if (population.empty()) {
    throw std::invalid_argument("cannot aggregate an empty population");
  }
  GenerationRecord record{run_seed, generation};
  double score_sum = 0.0;
  long long total_sum = 0;
  long long own_sum = 0;
  record.max_score = population[0].score;
  for (const EpisodeStats& stats : population) {
    score_sum += stats.score;
    total_sum += stats.total_coins;
    own_sum += stats.own_coins;
    if (stats.score > record.max_score) record.max_score = stats.score;
  }
  const double n = static_cast<double>(population.size());
  record.mean_score = score_sum / n;
  record.mean_total_coins = static_cast<double>(total_sum) / n;
  record.mean_own_coins = static_cast<double>(own_sum) / n;
  record.own_coin_rate = own_coin_rate(own_sum, total_sum);
  return record;
}

}  // namespace qevo
