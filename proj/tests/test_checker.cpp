#include <doctest.h>

#include "depthforge/checker.hpp"
#include "depthforge/simulator.hpp"
#include "fixtures.hpp"

using namespace depthforge;
namespace fx = depthforge::fixtures;

TEST_CASE("BFS distances reproduce the Hamming-weight bound") {
  const VqaInstance inst = fx::ref_vqa();  // |A| = 2, |D| = 4
  const LogicalSpace space = LogicalSpace::for_vqa(inst);
  CHECK(min_gates_to_reach(space, LogicalIndex{0, 1, 1}) == 0);
  CHECK(min_gates_to_reach(space, LogicalIndex{0, 3, 1}) == 2);       // |A| G-hops
  CHECK(min_gates_to_reach(space, LogicalIndex{1, 3, 1}) == 9);       // 1*(2*4-1) + 2
  CHECK(min_gates_to_reach(space, LogicalIndex{3, 3, 1}) == 16);      // 2*7 + 2

  // tightness across every proof string and |A| <= 3, |D| <= 6 instances
  for (int nv : {1, 2, 3}) {
    const VqaInstance sized = build_vqa(fx::qmsa_of(fx::core_zero_gate(nv), 0, 0), 0.1, 6);
    const LogicalSpace sp = LogicalSpace::for_vqa(sized);
    for (uint32_t y = 0; y < (uint32_t{1} << nv); ++y) {
      const long long expect =
          static_cast<long long>(__builtin_popcount(y)) * (2LL * 6 - 1) + nv;
      CHECK(min_gates_to_reach(sp, LogicalIndex{y, nv + 1, 1}) == expect);
    }
  }
}

TEST_CASE("fewer than L Q-applications pin <M> at 1") {
  const VqaInstance inst = fx::ref_vqa();
  const LogicalSpace space = LogicalSpace::for_vqa(inst);
  const FewerThanLReport rep = check_lemma_fewer_than_l(space, 40, /*seed=*/3);
  CHECK(rep.pass);
  CHECK(rep.max_deviation <= 1e-9);

  // empty schedule
  LogicalState st = space.start_state();
  CHECK(space.expectation_m(st) == doctest::Approx(1.0));

  // the honest plan with all L Q-applications leaves the plateau
  const VqaInstance yes = fx::ref_vqa_yes();
  const LogicalSpace yes_space = LogicalSpace::for_vqa(yes);
  LogicalState honest = yes_space.start_state();
  const HonestPlan plan = honest_vqa_schedule("10", yes);
  yes_space.run(honest, plan.schedule);
  CHECK(yes_space.expectation_m(honest) < 1.0 - 1e-6);
}

TEST_CASE("soundness search at zero length reports the start expectation") {
  const VqaInstance inst = fx::ref_vqa_no();
  const LogicalSpace space = LogicalSpace::for_vqa(inst);
  SoundnessOptions opt;
  opt.max_len = 0;
  const SoundnessReport rep = brute_force_soundness(space, opt);
  CHECK(rep.min_expectation == doctest::Approx(1.0));
}

TEST_CASE("soundness probe: YES instance reaches 1/3, NO instance stays at 2/3") {
  const VqaInstance yes = fx::ref_vqa_yes();
  const LogicalSpace yes_space = LogicalSpace::for_vqa(yes);
  SoundnessOptions opt;
  opt.max_len = static_cast<int>(yes.m);
  opt.beam_width = 400;
  opt.threads = 4;
  for (uint32_t y = 0; y < 4; ++y) {
    std::string bits(2, '0');
    for (int i = 0; i < 2; ++i) {
      if ((y >> i) & 1) bits[static_cast<size_t>(i)] = '1';
    }
    opt.seeds.push_back(honest_vqa_schedule(bits, yes).schedule);
  }
  const SoundnessReport found = brute_force_soundness(yes_space, opt);
  CHECK(found.min_expectation <= 1.0 / 3.0);

  const VqaInstance no = fx::ref_vqa_no();
  const LogicalSpace no_space = LogicalSpace::for_vqa(no);
  SoundnessOptions nopt;
  nopt.max_len = 6;  // short probe here; the acceptance suite runs m'
  nopt.beam_width = 400;
  nopt.threads = 4;
  const SoundnessReport rep = brute_force_soundness(no_space, nopt);
  CHECK(rep.min_expectation >= 2.0 / 3.0 - 1e-6);

  // minimum is monotone non-increasing in max_len
  nopt.max_len = 3;
  const SoundnessReport shorter = brute_force_soundness(no_space, nopt);
  CHECK(rep.min_expectation <= shorter.min_expectation + 1e-12);
}

TEST_CASE("rounding lemma distances stay within 4 zeta sqrt(eps)") {
  const QaoaInstance inst = fx::ref_qaoa_no();
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  Schedule sched;
  for (int i = 0; i < 8; ++i) {
    sched.push(i % 2 == 0 ? HamiltonianId::hc() : HamiltonianId::hb(), angle(rng));
  }
  const RoundingReport rep = check_rounding_lemma(inst, sched);
  CHECK(rep.pass);
  CHECK(rep.prefixes.size() == 8);
  CHECK(rep.max_distance_slack <= 0.0);
}

TEST_CASE("schedules of only H_b steps keep psi and psi-prime identical") {
  const QaoaInstance inst = fx::ref_qaoa_no();
  Schedule sched;
  // the checker accepts any Hb/Hc labels; use Hb-only to keep M out
  for (int i = 0; i < 5; ++i) sched.push(HamiltonianId::hb(), 0.3 + 0.2 * i);
  const RoundingReport rep = check_rounding_lemma(inst, sched);
  CHECK(rep.pass);
  for (const auto& row : rep.prefixes) CHECK(row.trace_distance <= 1e-9);
}

TEST_CASE("decision wrapper classifies via the m' cutoff") {
  const VqaInstance yes = fx::ref_vqa_yes();
  const long long m_opt_yes = exact_min_depth_vqa(yes);
  CHECK(m_opt_yes == yes.m);
  CHECK(decide_from_estimator(yes.m_prime, m_opt_yes));
  CHECK(decide_from_estimator(yes.m_prime, yes.m_prime));  // boundary inclusive

  const VqaInstance no = fx::ref_vqa_no();
  const long long m_opt_no = exact_min_depth_vqa(no);
  CHECK(m_opt_no == 2 * (2LL * no.regs.d - 1) + no.regs.a + no.verifier_gate_count());
  CHECK(m_opt_no > no.m_prime);
  CHECK(!decide_from_estimator(no.m_prime, m_opt_no));

  const VqaInstance never = fx::ref_vqa();  // rejects everything
  CHECK(exact_min_depth_vqa(never) == kUnreachable);
}
