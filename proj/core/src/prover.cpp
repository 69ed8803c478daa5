#include "depthforge/prover.hpp"

#include <cmath>
#include <stdexcept>

namespace depthforge {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

uint32_t parse_proof_string(const std::string& y, int n_proof) {
  if (static_cast<int>(y.size()) != n_proof) {
    throw std::invalid_argument("witness length must equal the proof register size");
  }
  uint32_t v = 0;
  for (int i = 0; i < n_proof; ++i) {
    if (y[static_cast<size_t>(i)] == '1') {
      v |= uint32_t{1} << i;
    } else if (y[static_cast<size_t>(i)] != '0') {
      throw std::invalid_argument("witness must be a bitstring");
    }
  }
  return v;
}

HonestPlan honest_vqa_schedule(const std::string& y, const VqaInstance& inst) {
  const int a = inst.regs.a;
  const int d = inst.regs.d;
  const int l = inst.verifier_gate_count();
  const uint32_t yv = parse_proof_string(y, a);
  const double half_pi = kPi / 2.0;

  HonestPlan plan;
  uint32_t y_partial = 0;
  auto mark = [&](int t, int s) { plan.checkpoints.push_back(LogicalIndex{y_partial, t, s}); };

  for (int j = 1; j <= a; ++j) {
    if ((yv >> (j - 1)) & 1) {
      for (int i = 1; i <= d - 1; ++i) {
        plan.schedule.push(HamiltonianId::term(Family::F, i), half_pi);
        mark(j, i + 1);
      }
      plan.schedule.push(HamiltonianId::term(Family::P, j), half_pi);
      y_partial |= uint32_t{1} << (j - 1);
      mark(j, d);
      for (int i = d - 1; i >= 1; --i) {
        plan.schedule.push(HamiltonianId::term(Family::F, i), half_pi);
        mark(j, i);
      }
    }
    plan.schedule.push(HamiltonianId::term(Family::G, j), half_pi);
    mark(j + 1, 1);
  }
  for (int k = 1; k <= l; ++k) {
    plan.schedule.push(HamiltonianId::term(Family::Q, k), half_pi);
    mark(a + k + 1, 1);
  }
  const long long hw = __builtin_popcount(yv);
  plan.predicted_length = hw * (2LL * d - 1) + a + l;
  if (plan.predicted_length != static_cast<long long>(plan.schedule.size())) {
    throw std::logic_error("honest VQA schedule length disagrees with the closed form");
  }
  return plan;
}

HonestPlan honest_qaoa_schedule(const std::string& y, const QaoaInstance& inst) {
  const int a = inst.regs.a;
  const int d = inst.regs.d;
  const int l = inst.verifier_gate_count();
  const uint32_t yv = parse_proof_string(y, a);
  const double half_pi = kPi / 2.0;
  const double hc_sweep = kPi / (2.0 * inst.kappa);
  // exp(i (2pi/3) G_even) advances the 3-cycle by two steps (the D hop),
  // exp(i (4pi/3) G_even) by one (the C hop).
  const double d_hop = 2.0 * kPi / 3.0;
  const double c_hop = 4.0 * kPi / 3.0;

  HonestPlan plan;
  uint32_t y_partial = 0;
  auto mark = [&](int t, int s) { plan.checkpoints.push_back(LogicalIndex{y_partial, t, s}); };
  auto push_f = [&](int i) {
    // F_i with odd i lives in H_b, with even i in H_c (kappa-scaled).
    if (i % 2 == 1) {
      plan.schedule.push(HamiltonianId::hb(), half_pi);
    } else {
      plan.schedule.push(HamiltonianId::hc(), hc_sweep);
    }
  };

  for (int j = 1; j <= a; ++j) {
    plan.schedule.push(HamiltonianId::hc(), hc_sweep);  // G_{2j-1}
    mark(2 * j, 1);
    if ((yv >> (j - 1)) & 1) {
      plan.schedule.push(HamiltonianId::hb(), d_hop);  // G_{2j}: D 1 -> 2
      mark(2 * j, 2);
      for (int i = 2; i <= d - 1; ++i) {
        push_f(i);
        mark(2 * j, i + 1);
      }
      plan.schedule.push(HamiltonianId::hc(), hc_sweep);  // P_j
      y_partial |= uint32_t{1} << (j - 1);
      mark(2 * j, d);
      for (int i = d - 1; i >= 2; --i) {
        push_f(i);
        mark(2 * j, i);
      }
      plan.schedule.push(HamiltonianId::hb(), d_hop);  // G_{2j}: D 2 -> 1, C hop
      mark(2 * j + 1, 1);
    } else {
      plan.schedule.push(HamiltonianId::hb(), c_hop);  // G_{2j}: C hop
      mark(2 * j + 1, 1);
    }
  }
  for (int k = 1; k <= l; ++k) {
    if (k % 2 == 1) {
      plan.schedule.push(HamiltonianId::hc(), hc_sweep);
    } else {
      plan.schedule.push(HamiltonianId::hb(), half_pi);
    }
    mark(2 * a + k + 1, 1);
  }

  const long long hw = __builtin_popcount(yv);
  plan.predicted_length = hw * (2LL * d - 2) + inst.regs.c - 1;
  if (plan.predicted_length != static_cast<long long>(plan.schedule.size())) {
    throw std::logic_error("honest QAOA schedule length disagrees with the closed form");
  }
  if (!plan.schedule.alternates_from_hc()) {
    throw std::logic_error("honest QAOA schedule must alternate H_c, H_b, ...");
  }
  return plan;
}

}  // namespace depthforge
