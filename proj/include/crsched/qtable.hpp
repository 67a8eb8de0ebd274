#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <ostream>
#include <span>

#include "crsched/action_space.hpp"
#include "crsched/errors.hpp"
#include "crsched/spectrum.hpp"

namespace crsched {

// Compressed environment state: the number of free blocks when an agent acts.
struct StateKey {
  int free_count = 0;
  auto operator<=>(const StateKey&) const = default;
};

inline StateKey state_key(const SpectrumState& state) { return StateKey{state.count_free()}; }

inline constexpr double kDefaultAlpha = 0.8;
inline constexpr double kDefaultGamma = 0.9;

// Tabular Q-values keyed on (state, action key). Absent entries read as 0.
//
// Entries are kept ordered so that iteration (and anything summed over it)
// is deterministic.
template <class ActionKey>
class QTable {
 public:
  using Row = std::map<ActionKey, double>;
  using Entries = std::map<StateKey, Row>;

  explicit QTable(double alpha = kDefaultAlpha, double gamma = kDefaultGamma) : alpha_(alpha), gamma_(gamma) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigInvalid("alpha", "must lie in (0, 1)");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigInvalid("gamma", "must lie in [0, 1)");
  }

  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  double get(StateKey s, const ActionKey& a) const {
    auto row = entries_.find(s);
    if (row == entries_.end()) return 0.0;
    auto it = row->second.find(a);
    return it == row->second.end() ? 0.0 : it->second;
  }

  // max over `available` of Q(s, .); 0 for an empty set.
  double max_value(StateKey s, std::span<const ActionKey> available) const {
    if (available.empty()) return 0.0;
    double best = get(s, available.front());
    for (const auto& a : available.subspan(1)) best = std::max(best, get(s, a));
    return best;
  }

  // max over the whole (mostly unstored) key space at s, i.e. max(0, stored).
  double max_value_any(StateKey s) const {
    double best = 0.0;
    for_each_at(s, [&best](const ActionKey&, double v) { best = std::max(best, v); });
    return best;
  }

  // Q(s,a) <- (1-alpha) Q(s,a) + alpha (reward + gamma V), with V supplied by the caller.
  double update_with_value(StateKey s, const ActionKey& a, double reward, double next_value) {
    double& q = entries_[s][a];
    q = (1.0 - alpha_) * q + alpha_ * (reward + gamma_ * next_value);
    return q;
  }

  // Standard update with V(s_next) = max over available_next.
  double update(StateKey s, const ActionKey& a, double reward, StateKey s_next,
                std::span<const ActionKey> available_next) {
    return update_with_value(s, a, reward, max_value(s_next, available_next));
  }

  void set(StateKey s, const ActionKey& a, double value) { entries_[s][a] = value; }

  const Entries& entries() const { return entries_; }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [s, row] : entries_) n += row.size();
    return n;
  }

  // Stored entries at state s, in key order.
  template <class Fn>
  void for_each_at(StateKey s, Fn&& fn) const {
    auto row = entries_.find(s);
    if (row == entries_.end()) return;
    for (const auto& [a, v] : row->second) fn(a, v);
  }

  // Multiplies every stored value; used by invariance checks.
  void scale(double factor) {
    for (auto& [s, row] : entries_) {
      for (auto& [a, v] : row) v *= factor;
    }
  }

 private:
  Entries entries_;
  double alpha_;
  double gamma_;
};

using IndependentQTable = QTable<Action>;

// Argmax over `available` of Q(s, .); ties go to the smallest request size.
inline Action greedy_action(const IndependentQTable& table, StateKey s, const ActionSet& available) {
  if (available.empty()) throw EmptyActionSet("greedy_action: no available actions");
  Action best = available.actions().front();
  double best_value = table.get(s, best);
  for (Action a : available.actions()) {
    const double v = table.get(s, a);
    if (v > best_value) {
      best = a;
      best_value = v;
    }
  }
  return best;
}

inline void write_action_key(std::ostream& out, const Action& a) { out << a.request_size; }

// Debug/regression snapshot, one `state_key,action_key,value` line per entry.
template <class ActionKey>
void dump(std::ostream& out, const QTable<ActionKey>& table) {
  const auto old_precision = out.precision(17);
  for (const auto& [s, row] : table.entries()) {
    for (const auto& [a, value] : row) {
      out << s.free_count << ',';
      write_action_key(out, a);
      out << ',' << value << '\n';
    }
  }
  out.precision(old_precision);
}

}  // namespace crsched
