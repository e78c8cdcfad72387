#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qevo {

// Cooperative sequential Coin Game on a 3x3 grid. Two agents (0 = red,
// 1 = blue) alternate moves, one colored coin is on the board at all times.
// Collecting any coin pays the collector +1; collecting the other agent's
// color additionally costs that agent -2, so each collection contributes
// +1 (own color) or -1 (opposing color) to the summed reward.

inline constexpr int kGridSize = 3;
inline constexpr int kNumActions = 4;   // 0 north, 1 south, 2 west, 3 east
inline constexpr int kNumAgents = 2;
inline constexpr int kEpisodeSteps = 50;  // 25 moves per agent
inline constexpr int kObservationSize = 4 * kGridSize * kGridSize;

using Observation = std::array<double, kObservationSize>;
using ActionMask = std::array<bool, kNumActions>;

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

enum class CoinColor { red = 0, blue = 1 };  // color i belongs to agent i

struct CoinGameState {
  std::array<Cell, kNumAgents> agents;
  Cell coin;
  CoinColor coin_color = CoinColor::red;
  int active_agent = 0;  // agent 0 moves on even step counts
  int step_count = 0;
};

struct Collection {
  int collector = 0;
  bool own_color = false;
};

struct StepOutcome {
  std::array<double, kNumAgents> rewards{0.0, 0.0};
  std::optional<Collection> collection;
};

namespace detail {

inline int cell_index(Cell c) { return c.row * kGridSize + c.col; }

inline Cell cell_at(int index) {
  return {index / kGridSize, index % kGridSize};
}

// Uniform over the cells not occupied by either agent. Agents may share a
// cell, in which case one more cell is free.
inline Cell random_free_cell(const CoinGameState& state,
                             std::mt19937_64& rng) {
  std::array<int, kGridSize * kGridSize> free{};
  int count = 0;
  for (int i = 0; i < kGridSize * kGridSize; ++i) {
    const Cell c = cell_at(i);
    if (c == state.agents[0] || c == state.agents[1]) continue;
    free[count++] = i;
  }
  std::uniform_int_distribution<int> pick(0, count - 1);
  return cell_at(free[pick(rng)]);
}

inline CoinColor random_color(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  return static_cast<CoinColor>(coin(rng));
}

inline constexpr std::array<Cell, kNumActions> kActionDelta{
    Cell{-1, 0}, Cell{1, 0}, Cell{0, -1}, Cell{0, 1}};

}  // namespace detail

// Agents on two distinct random cells, coin on one of the remaining seven,
// random coin color, agent 0 to move.
inline CoinGameState reset(std::mt19937_64& rng) {
  CoinGameState state;
  std::uniform_int_distribution<int> first(0, kGridSize * kGridSize - 1);
  std::uniform_int_distribution<int> second(0, kGridSize * kGridSize - 2);
  const int a0 = first(rng);
  int a1 = second(rng);
  if (a1 >= a0) ++a1;
  state.agents[0] = detail::cell_at(a0);
  state.agents[1] = detail::cell_at(a1);
  state.coin = detail::random_free_cell(state, rng);
  state.coin_color = detail::random_color(rng);
  return state;
}

// Four binary 9-cell planes, row-major: agent 0, agent 1, red coin, blue
// coin. Exactly three entries are 1.
inline Observation observe(const CoinGameState& state) {
  Observation obs{};
  obs[detail::cell_index(state.agents[0])] = 1.0;
  obs[9 + detail::cell_index(state.agents[1])] = 1.0;
  const int coin_plane = state.coin_color == CoinColor::red ? 2 : 3;
  obs[coin_plane * 9 + detail::cell_index(state.coin)] = 1.0;
  return obs;
}

// An action is legal iff the move stays on the grid.
inline ActionMask legal_mask(const CoinGameState& state) {
  const Cell mover = state.agents[state.active_agent];
  return {mover.row > 0, mover.row < kGridSize - 1, mover.col > 0,
          mover.col < kGridSize - 1};
}

// Moves the active agent, pays out any collection, respawns the coin off
// both agents, flips the turn. Callers must mask illegal actions first.
inline StepOutcome step(CoinGameState& state, int action,
                        std::mt19937_64& rng) {
  if (action < 0 || action >= kNumActions) {
    throw std::invalid_argument("action must be in [0, 4)");
  }
  if (!legal_mask(state)[action]) {
    throw std::logic_error("illegal action: move leaves the grid");
  }
  Cell& mover = state.agents[state.active_agent];
  mover.row += detail::kActionDelta[action].row;
  mover.col += detail::kActionDelta[action].col;

  StepOutcome outcome;
  if (mover == state.coin) {
    const int collector = state.active_agent;
    const bool own = static_cast<int>(state.coin_color) == collector;
    outcome.rewards[collector] += 1.0;
    if (!own) outcome.rewards[1 - collector] -= 2.0;
    outcome.collection = Collection{collector, own};
    state.coin = detail::random_free_cell(state, rng);
    state.coin_color = detail::random_color(rng);
  }
  state.active_agent = 1 - state.active_agent;
  ++state.step_count;
  return outcome;
}

struct StepRecord {
  int step = 0;
  int agent = 0;
  int action = 0;
  StepOutcome outcome;
};

using EpisodeTrace = std::vector<StepRecord>;

// One debug line per step, e.g. "step=3 agent=1 action=0 reward=(1,0) coin=own".
inline std::string format_step_line(const StepRecord& record) {
  const char* coin = "none";
  if (record.outcome.collection) {
    coin = record.outcome.collection->own_color ? "own" : "opposing";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "step=%d agent=%d action=%d reward=(%d,%d) coin=%s",
                record.step, record.agent, record.action,
                static_cast<int>(record.outcome.rewards[0]),
                static_cast<int>(record.outcome.rewards[1]), coin);
  return buf;
}

}  // namespace qevo
