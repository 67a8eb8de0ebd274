#include "crsched/action_space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "crsched/errors.hpp"

namespace crsched {

ActionSet::ActionSet(std::vector<Action> actions, int cap) : actions_(std::move(actions)), cap_(cap) {
  std::ranges::sort(actions_);
  if (std::ranges::adjacent_find(actions_) != actions_.end()) {
    throw std::invalid_argument("action set has duplicate request sizes");
  }
  if (!actions_.empty() && (actions_.front().request_size < 0 || actions_.back().request_size > cap_)) {
    throw std::invalid_argument("action request size outside [0, cap]");
  }
}

ActionSet ActionSet::up_to(int max_size) {
  ActionSet set;
  set.cap_ = std::max(max_size, 0);
  set.actions_.reserve(static_cast<std::size_t>(set.cap_) + 1);
  for (int k = 0; k <= set.cap_; ++k) set.actions_.push_back(Action{k});
  return set;
}

bool ActionSet::contains(Action a) const { return std::ranges::binary_search(actions_, a); }

void ActionSet::remove(Action taken) {
  auto it = std::ranges::lower_bound(actions_, taken);
  if (it == actions_.end() || *it != taken) {
    throw ActionNotPresent("action of size " + std::to_string(taken.request_size) + " is not in the set");
  }
  actions_.erase(it);
}

ActionSet build_pu_actions(Algorithm algorithm, const CellConfig& config) {
  switch (algorithm) {
    case Algorithm::Collaborative:
      return ActionSet::up_to(config.num_rb);
    case Algorithm::Competitive:
      return ActionSet::up_to(config.num_pu > 0 ? config.num_rb / config.num_pu : 0);
  }
  return {};
}

ActionSet build_su_actions(int remaining_free, int num_su) {
  if (num_su <= 0) throw std::invalid_argument("build_su_actions: num_su must be positive");
  return ActionSet::up_to(std::max(remaining_free, 0) / num_su);
}

ActionSet remove_action(ActionSet set, Action taken) {
  set.remove(taken);
  return set;
}

ActionSet feasible_actions(const ActionSet& set, int free_count) {
  std::vector<Action> fit;
  for (Action a : set.actions()) {
    if (a.request_size <= free_count) fit.push_back(a);
  }
  return ActionSet(std::move(fit), set.cap());
}

std::vector<int> materialize(Action action, const SpectrumState& state) {
  std::vector<int> out;
  if (action.request_size <= 0) return out;
  out.reserve(static_cast<std::size_t>(action.request_size));
  for (int i = 0; i < state.size() && static_cast<int>(out.size()) < action.request_size; ++i) {
    if (state.block(i).is_free()) out.push_back(i);
  }
  return out;
}

}  // namespace crsched
