#pragma once

#include <string>
#include <vector>

#include "depthforge/logical.hpp"
#include "depthforge/qaoa.hpp"
#include "depthforge/schedule.hpp"
#include "depthforge/vqa.hpp"

namespace depthforge {

// Honest prover plan: the schedule, its closed-form length, and the logical
// index the state should sit on (up to phase) after each step.
struct HonestPlan {
  Schedule schedule;
  long long predicted_length = 0;
  double target_expectation_bound = 1.0 / 3.0;
  std::vector<LogicalIndex> checkpoints;
};

// F-ladder / P / F-ladder / G sweep per set proof bit, then the Q ladder,
// all at angle pi/2. Length HW(y)(2|D|-1) + |A| + L.
HonestPlan honest_vqa_schedule(const std::string& y, const VqaInstance& inst);

// Alternating H_c / H_b realization of the same sweep. The even-G clock hop
// runs at angle 4*pi/3 (the printed pi/3 does not reproduce the displayed
// relation; 2*pi/3 and 4*pi/3 are the exact cycle steps). Length
// g(2|D|-2) + |C| - 1 for HW(y) = g.
HonestPlan honest_qaoa_schedule(const std::string& y, const QaoaInstance& inst);

uint32_t parse_proof_string(const std::string& y, int n_proof);

}  // namespace depthforge
