#include <doctest.h>

#include <random>

#include "depthforge/checker.hpp"
#include "depthforge/prover.hpp"
#include "depthforge/simulator.hpp"
#include "fixtures.hpp"

using namespace depthforge;
namespace fx = depthforge::fixtures;

TEST_CASE("honest VQA schedule lengths follow the closed form") {
  const VqaInstance inst = fx::ref_vqa();  // |A| = 2, L = 3, |D| = 4
  CHECK(honest_vqa_schedule("00", inst).predicted_length == 5);   // |A| + L
  CHECK(honest_vqa_schedule("10", inst).predicted_length == 12);  // 1*7 + 2 + 3
  CHECK(honest_vqa_schedule("11", inst).predicted_length == 19);

  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 8; ++trial) {
    std::string y(2, '0');
    int hw = 0;
    for (auto& ch : y) {
      if (rng() & 1) {
        ch = '1';
        ++hw;
      }
    }
    const HonestPlan plan = honest_vqa_schedule(y, inst);
    CHECK(plan.predicted_length == hw * (2LL * inst.regs.d - 1) + inst.regs.a + 3);
    CHECK(plan.predicted_length == static_cast<long long>(plan.schedule.size()));
  }
  CHECK_THROWS(honest_vqa_schedule("101", inst));
}

TEST_CASE("honest VQA run lands on the predicted basis vector") {
  const VqaInstance inst = fx::ref_vqa_yes();
  const LogicalSpace space = LogicalSpace::for_vqa(inst);
  const HonestPlan plan = honest_vqa_schedule("10", inst);
  LogicalState st = space.start_state();
  for (size_t i = 0; i < plan.schedule.steps.size(); ++i) {
    space.evolve(st, plan.schedule.steps[i].id, plan.schedule.steps[i].theta);
    const int ord = space.ordinal(plan.checkpoints[i]);
    CHECK(std::abs(std::abs(st.amps[static_cast<size_t>(ord)]) - 1.0) <= 1e-9);
  }
  const int final_ord =
      space.ordinal(LogicalIndex{1, space.clock1_size(), 1});
  CHECK(std::abs(std::abs(st.amps[static_cast<size_t>(final_ord)]) - 1.0) <= 1e-9);
}

TEST_CASE("honest VQA plan on the YES instance drives <M> to zero") {
  const VqaInstance inst = fx::ref_vqa_yes();
  const HonestPlan plan = honest_vqa_schedule("10", inst);
  CHECK(plan.predicted_length == inst.m);  // 1*(2|D|-1) + |A| + L = 13
  const SimResult logical = simulate_vqa(inst, plan.schedule, Engine::Logical);
  CHECK(logical.expectation <= 1e-9);
  const SimResult dense = simulate_vqa(inst, plan.schedule, Engine::Closed);
  CHECK(dense.expectation <= 1e-9);
}

TEST_CASE("honest QAOA schedule lengths and alternation") {
  const QaoaInstance inst = fx::ref_qaoa_yes();  // |C| = 9, |D| = 4
  const HonestPlan zero = honest_qaoa_schedule("00", inst);
  CHECK(zero.predicted_length == inst.regs.c - 1);
  CHECK(zero.schedule.alternates_from_hc());
  const HonestPlan one = honest_qaoa_schedule("10", inst);
  CHECK(one.predicted_length == 1 * (2LL * inst.regs.d - 2) + inst.regs.c - 1);  // 14
  CHECK(one.predicted_length == inst.m);
  CHECK(one.schedule.alternates_from_hc());
}

TEST_CASE("honest QAOA run passes every checkpoint and the final bound") {
  const QaoaInstance inst = fx::ref_qaoa_yes();
  const LogicalSpace space = LogicalSpace::for_qaoa(inst);
  const HonestPlan plan = honest_qaoa_schedule("10", inst);
  LogicalState st = space.start_state();
  for (size_t i = 0; i < plan.schedule.steps.size(); ++i) {
    space.evolve(st, plan.schedule.steps[i].id, plan.schedule.steps[i].theta);
    const int ord = space.ordinal(plan.checkpoints[i]);
    REQUIRE(ord >= 0);
    CHECK(std::abs(std::abs(st.amps[static_cast<size_t>(ord)]) - 1.0) <= 1e-9);
  }
  CHECK(space.expectation_hc(st) <= 1.0 / 3.0);
  CHECK(space.expectation_m(st) <= inst.epsilon_q + 1e-9);
}

TEST_CASE("honest QAOA run agrees with the dense closed engine") {
  const QaoaInstance inst = fx::ref_qaoa_yes();
  const HonestPlan plan = honest_qaoa_schedule("10", inst);
  const SimResult dense = simulate_qaoa(inst, plan.schedule, Engine::Closed);
  CHECK(dense.expectation <= 1.0 / 3.0);
  const SimResult logical = simulate_qaoa(inst, plan.schedule, Engine::Logical);
  CHECK(logical.expectation == doctest::Approx(dense.expectation).epsilon(1e-9));
}

TEST_CASE("honest QAOA run survives the structure-blind dense oracle") {
  // 13-qubit instance keeps the taylor evolution at the pi/(2 kappa) angle
  // affordable; this cross-checks the closed product path end to end.
  const QaoaInstance inst = fx::ref_qaoa();
  const HonestPlan plan = honest_qaoa_schedule("0", inst);
  const SimResult closed = simulate_qaoa(inst, plan.schedule, Engine::Closed);
  const SimResult taylor = simulate_qaoa(inst, plan.schedule, Engine::Dense);
  CHECK((closed.dense->amps - taylor.dense->amps).cwiseAbs().maxCoeff() <= 1e-8);
}
