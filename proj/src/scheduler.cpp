#include "crsched/scheduler.hpp"

#include <numeric>
#include <utility>

#include "crsched/errors.hpp"
#include "crsched/metrics.hpp"

namespace crsched {

namespace {

std::vector<int> turn_order(int n, const SchedulerParams& params, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(order.begin(), order.end(), 0);
  if (params.shuffle_agent_order) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  return order;
}

Action random_action(const ActionSet& available, Rng& rng) {
  return available.actions()[rng.uniform_index(available.size())];
}

double normalized_throughput(const SpectrumState& state, UserId user, const CellConfig& config) {
  const double capacity = config.total_capacity();
  return capacity > 0.0 ? throughput(state, user, config) / capacity : 0.0;
}

void init_outcome(TtiOutcome& out, const CellConfig& config) {
  out.pu_blocks.assign(static_cast<std::size_t>(config.num_pu), 0);
  out.pu_actions.assign(static_cast<std::size_t>(config.num_pu), std::nullopt);
  out.pu_rewards.assign(static_cast<std::size_t>(config.num_pu), 0.0);
  out.su_blocks.assign(static_cast<std::size_t>(config.num_su), 0);
  out.su_actions.assign(static_cast<std::size_t>(config.num_su), std::nullopt);
  out.su_rewards.assign(static_cast<std::size_t>(config.num_su), 0.0);
}

// Takes `a` for `user`: marks blocks (clamped to what is free) and returns the
// number of blocks actually obtained.
int take(SpectrumState& state, UserId user, Action a) {
  const auto indices = materialize(a, state);
  state.allocate(user, indices);
  return static_cast<int>(indices.size());
}

// Explore/exploit turn for an independent learner, including its update.
// `candidates` is non-empty. Returns the action taken.
Action independent_turn(SpectrumState& state, IndependentQTable& table, const ActionSet& own_actions,
                        const ActionSet& candidates, UserId user, Decision decision, Rng& rng,
                        const CellConfig& config, int& blocks, double& reward) {
  const StateKey s = state_key(state);
  const Action a =
      decision == Decision::Explore ? random_action(candidates, rng) : greedy_action(table, s, candidates);
  blocks = take(state, user, a);
  reward = normalized_throughput(state, user, config);
  table.update(s, a, reward, state_key(state), own_actions.actions());
  return a;
}

}  // namespace

void SchedulerParams::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigInvalid("epsilon", "must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigInvalid("alpha", "must lie in (0, 1)");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigInvalid("gamma", "must lie in [0, 1)");
}

Decision explore_or_exploit(Rng& rng, double epsilon) {
  return rng.uniform01() <= epsilon ? Decision::Explore : Decision::Exploit;
}

int TtiOutcome::total_blocks() const {
  return std::accumulate(pu_blocks.begin(), pu_blocks.end(), 0) +
         std::accumulate(su_blocks.begin(), su_blocks.end(), 0);
}

CollaborativeLearner::CollaborativeLearner(const CellConfig& config, const SchedulerParams& params)
    : actions(build_pu_actions(Algorithm::Collaborative, config)),
      table(params.alpha, params.gamma),
      model(config.num_pu),
      ev(config.num_pu) {}

IndependentLearners::IndependentLearners(int num_agents, ActionSet action_set, const SchedulerParams& params)
    : actions(std::move(action_set)),
      tables(static_cast<std::size_t>(std::max(num_agents, 0)), IndependentQTable(params.alpha, params.gamma)) {}

void schedule_sus(SpectrumState& state, IndependentLearners& sus, const SchedulerParams& params, Rng& rng,
                  const CellConfig& config, TtiOutcome& out) {
  if (config.num_su <= 0) return;
  const ActionSet su_actions = build_su_actions(state.count_free(), config.num_su);
  ActionSet available = su_actions;
  for (int k : turn_order(config.num_su, params, rng)) {
    const Decision decision = explore_or_exploit(rng, params.epsilon);
    if (state.count_free() <= 0) continue;
    const ActionSet candidates = feasible_actions(available, state.count_free());
    if (candidates.empty()) continue;
    const Action a = independent_turn(state, sus.tables.at(k), su_actions, candidates, UserId::su(k), decision, rng,
                                      config, out.su_blocks[k], out.su_rewards[k]);
    out.su_actions[k] = a;
    ++out.su_updates;
    available.remove(a);
  }
}

TtiOutcome schedule_tti_collaborative(SpectrumState& state, CollaborativeLearner& pus, IndependentLearners& sus,
                                      const SchedulerParams& params, Rng& rng, const CellConfig& config) {
  TtiOutcome out;
  init_outcome(out, config);

  const StateKey s = state_key(state);
  ActionSet available = pus.actions;
  JointAction joint{std::vector<std::optional<Action>>(static_cast<std::size_t>(config.num_pu))};
  bool any_acted = false;

  for (int i : turn_order(config.num_pu, params, rng)) {
    const Decision decision = explore_or_exploit(rng, params.epsilon);
    if (state.count_free() <= 0) continue;
    // Full-access requests are limited to what is still free; an oversized
    // request would otherwise swallow every remaining block.
    const ActionSet candidates = feasible_actions(available, state.count_free());
    if (candidates.empty()) continue;
    Action a;
    if (decision == Decision::Explore || pus.model.observations() == 0) {
      // No joint action observed yet: opponent frequencies are undefined,
      // so exploitation degenerates to a uniform pick.
      a = random_action(candidates, rng);
    } else {
      a = select_by_ev(pus.ev.row(i), candidates);
    }
    available.remove(a);
    joint.per_agent[i] = a;
    out.pu_actions[i] = a;
    out.pu_blocks[i] = take(state, UserId::pu(i), a);
    any_acted = true;
  }

  out.after_pu = state;
  if (any_acted) {
    std::vector<double> throughputs;
    throughputs.reserve(static_cast<std::size_t>(config.num_pu));
    for (int i = 0; i < config.num_pu; ++i) throughputs.push_back(throughput(state, UserId::pu(i), config));
    const double reward = jain_index(throughputs);
    out.joint_reward = reward;
    for (int i = 0; i < config.num_pu; ++i) {
      if (joint.per_agent[i]) out.pu_rewards[i] = reward;
    }

    pus.table.update_with_value(s, joint, reward, pus.table.max_value_any(state_key(state)));
    ++out.shared_updates;
    update_counters(pus.model, joint);
    for (int i = 0; i < config.num_pu; ++i) {
      pus.ev.set_row(i, expectation_values(pus.table, pus.model, i, pus.actions, s, pus.actions.size()));
    }
  }

  schedule_sus(state, sus, params, rng, config, out);
  out.state = state;
  return out;
}

TtiOutcome schedule_tti_competitive(SpectrumState& state, IndependentLearners& pus, IndependentLearners& sus,
                                    const SchedulerParams& params, Rng& rng, const CellConfig& config) {
  TtiOutcome out;
  init_outcome(out, config);

  ActionSet available = pus.actions;
  for (int i : turn_order(config.num_pu, params, rng)) {
    const Decision decision = explore_or_exploit(rng, params.epsilon);
    if (state.count_free() <= 0) continue;
    const ActionSet candidates = feasible_actions(available, state.count_free());
    if (candidates.empty()) continue;
    const Action a = independent_turn(state, pus.tables.at(i), pus.actions, candidates, UserId::pu(i), decision, rng,
                                      config, out.pu_blocks[i], out.pu_rewards[i]);
    out.pu_actions[i] = a;
    ++out.pu_updates;
    available.remove(a);
  }

  out.after_pu = state;
  schedule_sus(state, sus, params, rng, config, out);
  out.state = state;
  return out;
}

namespace {

std::variant<CollaborativeLearner, IndependentLearners> make_pu_learners(const CellConfig& config,
                                                                        const SchedulerParams& params) {
  if (params.algorithm == Algorithm::Collaborative) return CollaborativeLearner(config, params);
  return IndependentLearners(config.num_pu, build_pu_actions(Algorithm::Competitive, config), params);
}

}  // namespace

Simulation::Simulation(CellConfig config, SchedulerParams params, std::uint64_t seed)
    : config_((config.validate(), config)),
      params_((params.validate(), params)),
      rng_(seed),
      state_(config.num_rb),
      pus_(make_pu_learners(config, params)),
      sus_(config.num_su, ActionSet{}, params) {}

TtiOutcome Simulation::step() {
  state_.reset();
  if (auto* collab = std::get_if<CollaborativeLearner>(&pus_)) {
    return schedule_tti_collaborative(state_, *collab, sus_, params_, rng_, config_);
  }
  return schedule_tti_competitive(state_, std::get<IndependentLearners>(pus_), sus_, params_, rng_, config_);
}

}  // namespace crsched
