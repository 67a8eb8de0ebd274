#include "doctest.h"

#include <vector>

#include "crsched/metrics.hpp"
#include "crsched/scheduler.hpp"
#include "oracles.hpp"

using namespace crsched;

namespace {

SchedulerParams params_for(Algorithm algorithm, double epsilon, bool shuffle = true) {
  SchedulerParams p;
  p.algorithm = algorithm;
  p.epsilon = epsilon;
  p.shuffle_agent_order = shuffle;
  return p;
}

}  // namespace

TEST_CASE("explore_or_exploit boundaries and frequency") {
  Rng rng(3);
  int explores_at_one = 0;
  int explores_at_zero = 0;
  for (int i = 0; i < 1000; ++i) {
    explores_at_one += explore_or_exploit(rng, 1.0) == Decision::Explore;
    explores_at_zero += explore_or_exploit(rng, 0.0) == Decision::Explore;
  }
  CHECK(explores_at_one == 1000);
  CHECK(explores_at_zero == 0);

  Rng rng2(5);
  const int n = 100000;
  int explores = 0;
  for (int i = 0; i < n; ++i) explores += explore_or_exploit(rng2, 0.5) == Decision::Explore;
  CHECK(static_cast<double>(explores) / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("joint reward is Jain's index of PU throughputs") {
  const std::vector<double> t{13, 14, 15, 16, 17};
  CHECK(jain_index(t) == doctest::Approx(5625.0 / 5675.0));
  CHECK(jain_index(t) == doctest::Approx(oracle::jain(t)));

  CellConfig cell{.num_rb = 75, .num_pu = 5, .num_su = 5, .rb_capacity_units = 1};
  Simulation sim(cell, params_for(Algorithm::Collaborative, 0.5), 17);
  for (int e = 0; e < 30; ++e) {
    const auto out = sim.step();
    REQUIRE(out.joint_reward.has_value());
    std::vector<double> tp;
    for (int b : out.pu_blocks) tp.push_back(b);
    CHECK(*out.joint_reward == doctest::Approx(oracle::jain(tp)));
    CHECK(out.shared_updates == 1);
  }
}

TEST_CASE("collaborative cold start with a single PU") {
  CellConfig cell{.num_rb = 10, .num_pu = 1, .num_su = 0, .rb_capacity_units = 1};
  Simulation sim(cell, params_for(Algorithm::Collaborative, 0.0), 1);
  const auto out = sim.step();
  REQUIRE(out.pu_actions[0].has_value());
  const auto* learner = sim.collaborative();
  REQUIRE(learner != nullptr);
  CHECK(learner->table.size() == 1);
  CHECK(learner->model.observations() == 1);
  const double expected = out.pu_blocks[0] > 0 ? 1.0 : 0.0;
  CHECK(*out.joint_reward == expected);
}

TEST_CASE("empty grid: no agent acts and nothing is learned") {
  CellConfig cell{.num_rb = 0, .num_pu = 2, .num_su = 2, .rb_capacity_units = 1};
  const auto params = params_for(Algorithm::Competitive, 0.5);
  SpectrumState state(0);
  IndependentLearners pus(2, ActionSet::up_to(0), params);
  IndependentLearners sus(2, ActionSet{}, params);
  Rng rng(1);
  const auto out = schedule_tti_competitive(state, pus, sus, params, rng, cell);
  CHECK(out.pu_updates == 0);
  CHECK(out.su_updates == 0);
  CHECK(out.total_blocks() == 0);
  for (const auto& t : pus.tables) CHECK(t.size() == 0);
}

TEST_CASE("competitive greedy agents follow their tables") {
  CellConfig cell{.num_rb = 75, .num_pu = 5, .num_su = 5, .rb_capacity_units = 1};
  const auto params = params_for(Algorithm::Competitive, 0.0, false);
  IndependentLearners pus(5, build_pu_actions(Algorithm::Competitive, cell), params);
  IndependentLearners sus(5, ActionSet{}, params);
  const int want[] = {15, 14, 13, 12, 11};
  int free = 75;
  for (int i = 0; i < 5; ++i) {
    pus.tables[i].set(StateKey{free}, Action{want[i]}, 1.0);
    free -= want[i];
  }
  SpectrumState state(75);
  Rng rng(9);
  const auto out = schedule_tti_competitive(state, pus, sus, params, rng, cell);
  for (int i = 0; i < 5; ++i) CHECK(out.pu_blocks[i] == want[i]);
  CHECK(out.after_pu.count_free() == 10);
  // Sizes 0..2 with fresh tables: each SU takes the smallest size still
  // available, and the last two find the set exhausted.
  CHECK(out.su_blocks == std::vector<int>{0, 1, 2, 0, 0});
  CHECK_FALSE(out.su_actions[3].has_value());
  CHECK(out.pu_updates == 5);
  CHECK(out.su_updates == 3);
}

TEST_CASE("a single greedy PU with an empty table requests nothing") {
  CellConfig cell{.num_rb = 75, .num_pu = 1, .num_su = 0, .rb_capacity_units = 1};
  const auto params = params_for(Algorithm::Competitive, 0.0);
  IndependentLearners pus(1, build_pu_actions(Algorithm::Competitive, cell), params);
  IndependentLearners sus(0, ActionSet{}, params);
  SpectrumState state(75);
  Rng rng(2);
  const auto out = schedule_tti_competitive(state, pus, sus, params, rng, cell);
  CHECK(out.pu_actions[0] == Action{0});
  CHECK(out.pu_blocks[0] == 0);
}

TEST_CASE("one table entry is written per acting agent per TTI") {
  CellConfig cell{.num_rb = 75, .num_pu = 5, .num_su = 5, .rb_capacity_units = 1};
  const auto params = params_for(Algorithm::Competitive, 1.0);
  IndependentLearners pus(5, build_pu_actions(Algorithm::Competitive, cell), params);
  IndependentLearners sus(5, ActionSet{}, params);
  SpectrumState state(75);
  Rng rng(4);
  const auto out = schedule_tti_competitive(state, pus, sus, params, rng, cell);
  for (int i = 0; i < 5; ++i) CHECK(pus.tables[i].size() == (out.pu_actions[i] ? 1u : 0u));
  for (int k = 0; k < 5; ++k) CHECK(sus.tables[k].size() == (out.su_actions[k] ? 1u : 0u));
}

TEST_CASE("SU stage with fewer free blocks than SUs") {
  CellConfig cell{.num_rb = 75, .num_pu = 5, .num_su = 5, .rb_capacity_units = 1};
  const auto params = params_for(Algorithm::Competitive, 1.0);
  std::vector<int> busy;
  for (int i = 0; i < 71; ++i) busy.push_back(i);

  SpectrumState state(75);
  state.allocate(UserId::pu(0), busy);
  IndependentLearners sus(5, ActionSet{}, params);
  Rng rng(6);
  TtiOutcome out;
  out.su_blocks.assign(5, 0);
  out.su_actions.assign(5, std::nullopt);
  out.su_rewards.assign(5, 0.0);
  schedule_sus(state, sus, params, rng, cell, out);
  CHECK(state.count_free() == 4);
  for (int k = 0; k < 5; ++k) {
    // Only the zero request exists, and distinct choices leave it to one SU.
    CHECK(out.su_blocks[k] == 0);
  }
  CHECK(out.su_updates == 1);

  SpectrumState full(75);
  std::vector<int> all;
  for (int i = 0; i < 75; ++i) all.push_back(i);
  full.allocate(UserId::pu(0), all);
  TtiOutcome out2 = out;
  out2.su_updates = 0;
  schedule_sus(full, sus, params, rng, cell, out2);
  CHECK(out2.su_updates == 0);
}

TEST_CASE("identical seeds give identical runs") {
  for (Algorithm algorithm : {Algorithm::Collaborative, Algorithm::Competitive}) {
    CellConfig cell;
    Simulation a(cell, params_for(algorithm, 0.5), 123);
    Simulation b(cell, params_for(algorithm, 0.5), 123);
    for (int e = 0; e < 50; ++e) {
      const auto x = a.step();
      const auto y = b.step();
      CHECK(x.pu_blocks == y.pu_blocks);
      CHECK(x.su_blocks == y.su_blocks);
      CHECK(x.state == y.state);
    }
  }
}

TEST_CASE("with full exploration the learned values do not influence choices") {
  CellConfig cell;
  const auto params = params_for(Algorithm::Competitive, 1.0);
  IndependentLearners blank(5, build_pu_actions(Algorithm::Competitive, cell), params);
  IndependentLearners primed = blank;
  for (auto& t : primed.tables) {
    for (int f = 0; f <= 75; ++f) t.set(StateKey{f}, Action{15}, 5.0);
  }
  IndependentLearners sus_a(5, ActionSet{}, params);
  IndependentLearners sus_b(5, ActionSet{}, params);
  Rng ra(77);
  Rng rb(77);
  for (int e = 0; e < 20; ++e) {
    SpectrumState sa(75);
    SpectrumState sb(75);
    const auto x = schedule_tti_competitive(sa, blank, sus_a, params, ra, cell);
    const auto y = schedule_tti_competitive(sb, primed, sus_b, params, rb, cell);
    CHECK(x.pu_actions == y.pu_actions);
    CHECK(x.su_actions == y.su_actions);
  }
}

TEST_CASE("scheduler parameters are validated") {
  CHECK_THROWS(params_for(Algorithm::Collaborative, 1.5).validate());
  CHECK_THROWS(params_for(Algorithm::Collaborative, -0.1).validate());
  CHECK_NOTHROW(params_for(Algorithm::Collaborative, 0.0).validate());
  CHECK_NOTHROW(params_for(Algorithm::Collaborative, 1.0).validate());
}
