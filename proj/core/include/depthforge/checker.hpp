#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "depthforge/logical.hpp"
#include "depthforge/prover.hpp"

namespace depthforge {

inline constexpr long long kUnreachable = std::numeric_limits<long long>::max();

// Fewest generator applications mapping the start index to `target` in the
// logical transition graph (one edge per nontrivial generator application).
// kUnreachable when no path exists.
long long min_gates_to_reach(const LogicalSpace& space, const LogicalIndex& target);

struct FewerThanLReport {
  int trials = 0;
  double max_deviation = 0.0;  // max |<M> - 1|
  bool pass = false;
};

// Random schedules with strictly fewer than L Q-applications must keep
// <M> = 1 (checked in the logical engine).
FewerThanLReport check_lemma_fewer_than_l(const LogicalSpace& space, int trials,
                                          uint64_t seed = 0, int max_len = 50,
                                          int threads = 1);

struct SoundnessOptions {
  std::vector<double> angles;  // empty -> default grid plus random angles
  int max_len = 0;
  int beam_width = 10000;
  uint64_t seed = 0;
  int threads = 1;
  // Schedules whose prefix states are kept in the beam regardless of rank
  // (e.g. the honest plans), so the known witnesses stay in the search space.
  std::vector<Schedule> seeds;
};

std::vector<double> default_angle_grid(uint64_t seed);

struct SoundnessReport {
  double min_expectation = 1.0;
  long long states_explored = 0;
  bool truncated = false;  // beam dropped candidates; result is a probe
  Schedule best_schedule;
};

// Beam/grid search for the lowest observable expectation reachable within
// max_len evolutions. A lower-bound probe over the angle grid, not a proof.
// VQA mode searches generator sequences against <M>; QAOA mode searches
// alternating H_c/H_b sequences against <H_c> in psi-prime semantics.
SoundnessReport brute_force_soundness(const LogicalSpace& space, const SoundnessOptions& opt);

struct RoundingPrefix {
  double trace_distance = 0.0;
  double bound = 0.0;
  double span_residual = 0.0;   // of the psi-prime state
  double w_violation = 0.0;     // amplitude mass above W <= zeta + 1
};

struct RoundingReport {
  std::vector<RoundingPrefix> prefixes;
  bool pass = false;
  double max_distance_slack = 0.0;  // max (distance - bound), negative when safe
};

// Lemma check: evolves the full and the M-dropped trajectories densely and
// asserts ||psi psi^dag - psi' psi'^dag||_tr <= 4 zeta sqrt(eps_q) for every
// prefix, plus span membership and the W <= zeta + 1 support bound for psi'.
RoundingReport check_rounding_lemma(const QaoaInstance& inst, const Schedule& schedule);

// Appendix-style decision wrapper: accept iff the estimate is at most m'.
bool decide_from_estimator(long long m_prime, long long m_estimate);

// Exact minimum depth for compiled VQA instances of deterministic desk-scale
// circuits: min over accepted y of HW(y)(2|D|-1) + |A| + L (completeness
// gives the upper bound, the Hamming-weight and fewer-than-L lemmas the
// lower bound). kUnreachable when the verifier rejects everything.
long long exact_min_depth_vqa(const VqaInstance& inst, double accept_threshold = 2.0 / 3.0);

}  // namespace depthforge
