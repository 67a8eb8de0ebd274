#include "doctest.h"

#include <optional>
#include <sstream>
#include <vector>

#include "crsched/errors.hpp"
#include "crsched/jal.hpp"
#include "oracles.hpp"

using namespace crsched;

namespace {

JointAction joint(std::initializer_list<std::optional<int>> sizes) {
  JointAction j;
  for (const auto& s : sizes) j.per_agent.push_back(s ? std::optional<Action>(Action{*s}) : std::nullopt);
  return j;
}

}  // namespace

TEST_CASE("counters track each agent's observed actions") {
  OpponentModel model(5);
  update_counters(model, joint({10, 15, 20, 5, 25}));
  CHECK(model.count(1, Action{15}) == 1);
  CHECK(model.count(3, Action{15}) == 0);
  CHECK(model.total(1) == 1);

  OpponentModel m2(5);
  for (int i = 0; i < 3; ++i) update_counters(m2, joint({10, 15, 20, 5, 25}));
  CHECK(m2.count(1, Action{15}) == 3);
  CHECK(m2.observations() == 3);

  update_counters(m2, joint({std::nullopt, 15, 20, 5, 25}));
  CHECK(m2.total(0) == 3);
  CHECK(m2.total(1) == 4);

  CHECK_THROWS_AS(update_counters(m2, joint({1, 2})), LengthMismatch);
}

TEST_CASE("action probabilities") {
  OpponentModel model(2);
  update_counters(model, joint({0, 10}));
  update_counters(model, joint({0, 15}));
  update_counters(model, joint({0, 10}));
  update_counters(model, joint({0, 15}));
  CHECK(action_probability(model, 1, Action{10}) == doctest::Approx(0.5));
  CHECK(action_probability(model, 1, Action{3}) == 0.0);

  OpponentModel fresh(3);
  CHECK_THROWS_AS(action_probability(fresh, 2, Action{0}), NoHistory);
}

TEST_CASE("joint probability is a product over opponents") {
  OpponentModel model(3);
  update_counters(model, joint({1, 10, 15}));
  update_counters(model, joint({2, 5, 20}));
  // self = 0; Pr1(10) = 0.5, Pr2(15) = 0.5.
  CHECK(joint_probability(model, 0, joint({7, 10, 15})) == doctest::Approx(0.25));
  CHECK(joint_probability(model, 0, joint({7, 10, std::nullopt})) == 0.0);

  OpponentModel fresh(2);
  CHECK_THROWS_AS(joint_probability(fresh, 0, joint({0, 1})), NoHistory);
  CHECK(joint_probability(fresh, 0, joint({0, 1}), 4) == doctest::Approx(0.25));
}

TEST_CASE("expectation values weight stored Q by opponent frequencies") {
  SharedQTable q;
  const StateKey s{75};
  q.set(s, joint({5, 10}), 0.6);
  q.set(s, joint({5, 20}), 0.4);
  OpponentModel model(2);
  update_counters(model, joint({1, 10}));
  update_counters(model, joint({1, 20}));

  const auto actions = ActionSet::up_to(20);
  const EvRow row = expectation_values(q, model, 0, actions, s);
  CHECK(row.at(Action{5}) == doctest::Approx(0.6 * 0.5 + 0.4 * 0.5));
  CHECK(row.at(Action{5}) == doctest::Approx(0.5));
  CHECK(row.at(Action{0}) == 0.0);
  CHECK(row.size() == actions.size());

  const EvRow empty = expectation_values(SharedQTable{}, model, 0, actions, s);
  for (const auto& [a, v] : empty) CHECK(v == 0.0);
}

TEST_CASE("expectation values agree with brute-force enumeration") {
  const auto actions = ActionSet::up_to(3);
  const int n = 3;
  SharedQTable q;
  OpponentModel model(n);
  std::vector<JointAction> history;
  const StateKey s{3};
  const std::vector<std::vector<int>> plays{{0, 1, 2}, {3, 0, 1}, {1, 2, 0}, {0, 1, 3}, {2, 3, 1}};
  double r = 0.1;
  for (const auto& p : plays) {
    const auto j = joint({p[0], p[1], p[2]});
    q.update_with_value(s, j, r, 0.0);
    r += 0.17;
    update_counters(model, j);
    history.push_back(j);
  }
  for (int self = 0; self < n; ++self) {
    const auto row = expectation_values(q, model, self, actions, s, actions.size());
    for (Action a : actions.actions()) {
      CHECK(row.at(a) == doctest::Approx(oracle::brute_force_ev(q, history, self, a, actions, s, n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("select_by_ev") {
  EvRow row{{Action{0}, 0.1}, {Action{5}, 0.9}, {Action{10}, 0.4}};
  CHECK(select_by_ev(row, ActionSet::up_to(10)) == Action{5});
  CHECK(select_by_ev(row, remove_action(ActionSet::up_to(10), Action{5})) == Action{10});
  CHECK(select_by_ev(EvRow{}, ActionSet::up_to(10)) == Action{0});
  CHECK_THROWS_AS(select_by_ev(row, ActionSet{}), EmptyActionSet);
}

TEST_CASE("joint action keys") {
  std::ostringstream out;
  write_action_key(out, joint({1, std::nullopt, 3}));
  CHECK(out.str() == "1:-:3");
}
