#pragma once

#include <span>
#include <stdexcept>

namespace qevo {

// Masked argmax shared by every agent type. Values are min-max normalized to
// [0, 1] (when max == min they all map to 1), illegal entries are dropped and
// the best remaining index wins. Ties break toward the lowest index, which
// also covers the case where every legal normalized value is 0.
inline int select_action(std::span<const double> values,
                         std::span<const bool> mask) {
  if (values.empty() || values.size() != mask.size()) {
    throw std::invalid_argument("values and mask must have equal length");
  }
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const double range = hi - lo;
  int best = -1;
  double best_value = -1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!mask[i]) continue;
    const double v = range == 0.0 ? 1.0 : (values[i] - lo) / range;
    if (v > best_value) {
      best_value = v;
      best = static_cast<int>(i);
    }
  }
  if (best < 0) {
    throw std::invalid_argument("action mask rejects every action");
  }
  return best;
}

}  // namespace qevo
