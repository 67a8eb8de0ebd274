#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "crsched/action_space.hpp"
#include "crsched/jal.hpp"
#include "crsched/qtable.hpp"
#include "crsched/random.hpp"
#include "crsched/spectrum.hpp"

namespace crsched {

struct SchedulerParams {
  Algorithm algorithm = Algorithm::Collaborative;
  // Probability of exploring. Larger means more exploration.
  double epsilon = 0.5;
  double alpha = kDefaultAlpha;
  double gamma = kDefaultGamma;
  // Permute the agent turn order every TTI. With a fixed ascending order the
  // first agent systematically takes the largest share.
  bool shuffle_agent_order = true;

  void validate() const;
};

enum class Decision { Explore, Exploit };

// Draws one uniform sample u; Explore iff u <= epsilon.
Decision explore_or_exploit(Rng& rng, double epsilon);

struct TtiOutcome {
  std::vector<int> pu_blocks;
  std::vector<int> su_blocks;
  // Chosen (pre-clamp) actions; empty for agents that did not act.
  std::vector<std::optional<Action>> pu_actions;
  std::vector<std::optional<Action>> su_actions;
  // Reward credited to each PU learner. In collaborative mode every acting PU
  // is credited the shared joint reward.
  std::vector<double> pu_rewards;
  std::vector<double> su_rewards;
  // Jain's index over PU throughputs; set only when a collaborative joint
  // action was formed.
  std::optional<double> joint_reward;
  int shared_updates = 0;
  int pu_updates = 0;
  int su_updates = 0;
  SpectrumState after_pu;
  SpectrumState state;

  int total_blocks() const;
};

// Learning state of the collaborative PU stage.
struct CollaborativeLearner {
  CollaborativeLearner(const CellConfig& config, const SchedulerParams& params);

  ActionSet actions;
  SharedQTable table;
  OpponentModel model;
  ExpectationTable ev;
};

// One Q-table per agent. `actions` is the agent's fixed action set (PU stage);
// SU action sets are rebuilt every TTI and leave it empty.
struct IndependentLearners {
  IndependentLearners(int num_agents, ActionSet action_set, const SchedulerParams& params);

  ActionSet actions;
  std::vector<IndependentQTable> tables;
};

// SU stage shared by both algorithms. Appends into `out`.
void schedule_sus(SpectrumState& state, IndependentLearners& sus, const SchedulerParams& params, Rng& rng,
                  const CellConfig& config, TtiOutcome& out);

// Collaborative PU stage (joint-action learners over a shared table), then the SU stage.
TtiOutcome schedule_tti_collaborative(SpectrumState& state, CollaborativeLearner& pus, IndependentLearners& sus,
                                      const SchedulerParams& params, Rng& rng, const CellConfig& config);

// Competitive PU stage (independent learners), then the SU stage.
TtiOutcome schedule_tti_competitive(SpectrumState& state, IndependentLearners& pus, IndependentLearners& sus,
                                    const SchedulerParams& params, Rng& rng, const CellConfig& config);

// One seeded run: owns the spectrum grid, the RNG and every learner.
class Simulation {
 public:
  Simulation(CellConfig config, SchedulerParams params, std::uint64_t seed);

  // Resets the grid and schedules one TTI.
  TtiOutcome step();

  const CellConfig& config() const { return config_; }
  const SchedulerParams& params() const { return params_; }
  const CollaborativeLearner* collaborative() const { return std::get_if<CollaborativeLearner>(&pus_); }
  const IndependentLearners* competitive() const { return std::get_if<IndependentLearners>(&pus_); }
  const IndependentLearners& sus() const { return sus_; }

 private:
  CellConfig config_;
  SchedulerParams params_;
  Rng rng_;
  SpectrumState state_;
  std::variant<CollaborativeLearner, IndependentLearners> pus_;
  IndependentLearners sus_;
};

}  // namespace crsched
