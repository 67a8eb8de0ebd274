#include "crsched/jal.hpp"

#include <string>

#include "crsched/errors.hpp"

namespace crsched {

void write_action_key(std::ostream& out, const JointAction& joint) {
  for (std::size_t j = 0; j < joint.per_agent.size(); ++j) {
    if (j > 0) out << ':';
    if (joint.per_agent[j]) {
      out << joint.per_agent[j]->request_size;
    } else {
      out << '-';
    }
  }
}

OpponentModel::OpponentModel(int num_agents)
    : counts_(static_cast<std::size_t>(num_agents)), totals_(static_cast<std::size_t>(num_agents), 0) {}

long OpponentModel::count(int agent, Action a) const {
  const auto& r = counts_.at(agent);
  auto it = r.find(a);
  return it == r.end() ? 0 : it->second;
}

void OpponentModel::record(const JointAction& joint) {
  if (static_cast<int>(joint.size()) != num_agents()) {
    throw LengthMismatch("joint action has " + std::to_string(joint.size()) + " slots, model tracks " +
                         std::to_string(num_agents()) + " agents");
  }
  for (int j = 0; j < num_agents(); ++j) {
    if (const auto& a = joint.per_agent[j]) {
      ++counts_[j][*a];
      ++totals_[j];
    }
  }
  ++observations_;
}

void update_counters(OpponentModel& model, const JointAction& joint) { model.record(joint); }

double action_probability(const OpponentModel& model, int agent, Action a) {
  const long total = model.total(agent);
  if (total == 0) throw NoHistory("agent " + std::to_string(agent) + " has no recorded actions");
  return static_cast<double>(model.count(agent, a)) / static_cast<double>(total);
}

double joint_probability(const OpponentModel& model, int self_id, const JointAction& joint,
                         std::optional<std::size_t> uniform_support) {
  double p = 1.0;
  for (int j = 0; j < static_cast<int>(joint.size()); ++j) {
    if (j == self_id) continue;
    if (!joint.per_agent[j]) return 0.0;
    if (uniform_support && model.total(j) == 0) {
      p *= 1.0 / static_cast<double>(*uniform_support);
    } else {
      p *= action_probability(model, j, *joint.per_agent[j]);
    }
  }
  return p;
}

EvRow expectation_values(const SharedQTable& shared, const OpponentModel& model, int self_id,
                         const ActionSet& own_actions, StateKey s, std::optional<std::size_t> uniform_support) {
  EvRow row;
  for (Action a : own_actions.actions()) row.emplace(a, 0.0);
  shared.for_each_at(s, [&](const JointAction& joint, double q) {
    const auto& own = joint.per_agent.at(self_id);
    if (!own) return;
    auto it = row.find(*own);
    if (it == row.end()) return;
    it->second += q * joint_probability(model, self_id, joint, uniform_support);
  });
  return row;
}

Action select_by_ev(const EvRow& ev_row, const ActionSet& available) {
  if (available.empty()) throw EmptyActionSet("select_by_ev: no available actions");
  auto value = [&ev_row](Action a) {
    auto it = ev_row.find(a);
    return it == ev_row.end() ? 0.0 : it->second;
  };
  Action best = available.actions().front();
  double best_value = value(best);
  for (Action a : available.actions()) {
    if (value(a) > best_value) {
      best = a;
      best_value = value(a);
    }
  }
  return best;
}

}  // namespace crsched
