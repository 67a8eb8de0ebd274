#pragma once

#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "crsched/action_space.hpp"
#include "crsched/qtable.hpp"

namespace crsched {

// One action slot per PU agent, indexed by agent id. An empty slot means the
// agent did not act that TTI (no blocks were available when its turn came).
struct JointAction {
  std::vector<std::optional<Action>> per_agent;

  std::size_t size() const { return per_agent.size(); }
  auto operator<=>(const JointAction&) const = default;
};

void write_action_key(std::ostream& out, const JointAction& joint);

using SharedQTable = QTable<JointAction>;

// How often each PU agent has taken each action. Every agent observes the same
// public joint actions, so one set of counters serves all observers.
class OpponentModel {
 public:
  explicit OpponentModel(int num_agents = 0);

  int num_agents() const { return static_cast<int>(counts_.size()); }
  long count(int agent, Action a) const;
  // Row sum: number of TTIs in which `agent` acted.
  long total(int agent) const { return totals_.at(agent); }
  long observations() const { return observations_; }
  const std::map<Action, long>& row(int agent) const { return counts_.at(agent); }

  void record(const JointAction& joint);

 private:
  std::vector<std::map<Action, long>> counts_;
  std::vector<long> totals_;
  long observations_ = 0;
};

void update_counters(OpponentModel& model, const JointAction& joint);

// count / row total. Throws NoHistory when the agent has never acted.
double action_probability(const OpponentModel& model, int agent, Action a);

// Product of action_probability over every agent except `self_id`, using the
// components of `joint`. An opponent slot that is empty lies outside the
// opponents' action space, so the product is 0. With `uniform_support` set, an
// agent without history contributes 1/support instead of throwing NoHistory.
double joint_probability(const OpponentModel& model, int self_id, const JointAction& joint,
                         std::optional<std::size_t> uniform_support = std::nullopt);

using EvRow = std::map<Action, double>;

// Per-agent expectation values, recomputed wholesale after each shared update.
class ExpectationTable {
 public:
  explicit ExpectationTable(int num_agents = 0) : rows_(static_cast<std::size_t>(num_agents)) {}

  const EvRow& row(int agent) const { return rows_.at(agent); }
  void set_row(int agent, EvRow row) { rows_.at(agent) = std::move(row); }
  int num_agents() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<EvRow> rows_;
};

// EV(a) = sum over stored joints J at state s with J[self_id] == a of
//         Q(s, J) * joint_probability(J without self_id).
// Joints that were never stored have Q = 0 and are skipped, as are joints in
// which some opponent did not act. Every action in
// `own_actions` gets a row entry, zero if nothing contributes.
EvRow expectation_values(const SharedQTable& shared, const OpponentModel& model, int self_id,
                         const ActionSet& own_actions, StateKey s,
                         std::optional<std::size_t> uniform_support = std::nullopt);

// Argmax of EV over `available`; actions without an entry count as 0 and ties
// go to the smallest request size. Throws EmptyActionSet.
Action select_by_ev(const EvRow& ev_row, const ActionSet& available);

}  // namespace crsched
