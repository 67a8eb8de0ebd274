#pragma once

#include <compare>
#include <vector>

#include "crsched/spectrum.hpp"

namespace crsched {

enum class Algorithm { Collaborative, Competitive };

// A request for `request_size` resource blocks.
struct Action {
  int request_size = 0;
  auto operator<=>(const Action&) const = default;
};

// Set of actions with pairwise-distinct request sizes, kept ascending.
class ActionSet {
 public:
  ActionSet() = default;
  // Validates distinctness and the cap; throws std::invalid_argument.
  ActionSet(std::vector<Action> actions, int cap);

  // {0, 1, ..., max_size}
  static ActionSet up_to(int max_size);

  const std::vector<Action>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }
  int cap() const { return cap_; }
  bool contains(Action a) const;

  // Removes `taken`; throws ActionNotPresent if it is not in the set.
  void remove(Action taken);

  bool operator==(const ActionSet&) const = default;

 private:
  std::vector<Action> actions_;
  int cap_ = 0;
};

// Collaborative: {0..num_rb}. Competitive: {0..floor(num_rb / num_pu)}.
ActionSet build_pu_actions(Algorithm algorithm, const CellConfig& config);

// {0..floor(remaining_free / num_su)}; rebuilt every TTI after the PU stage.
ActionSet build_su_actions(int remaining_free, int num_su);

ActionSet remove_action(ActionSet set, Action taken);

// Actions of `set` whose request fits in `free_count` blocks.
ActionSet feasible_actions(const ActionSet& set, int free_count);

// Lowest-indexed free blocks, min(request_size, free count) of them.
std::vector<int> materialize(Action action, const SpectrumState& state);

}  // namespace crsched
