#include "depthforge/checker.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <unordered_map>

#include "depthforge/parallel.hpp"

namespace depthforge {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

long long min_gates_to_reach(const LogicalSpace& space, const LogicalIndex& target) {
  const int target_ord = space.ordinal(target);
  if (target_ord < 0) throw std::invalid_argument("target outside the logical index set");
  const int start = space.ordinal(LogicalIndex{0, 1, 1});
  std::vector<long long> dist(static_cast<size_t>(space.dimension()), kUnreachable);
  std::deque<int> queue;
  dist[static_cast<size_t>(start)] = 0;
  queue.push_back(start);
  const auto gens = space.generators();
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    if (cur == target_ord) return dist[static_cast<size_t>(cur)];
    for (const Generator* g : gens) {
      for (int nxt : space.transition_targets(cur, *g)) {
        if (dist[static_cast<size_t>(nxt)] == kUnreachable) {
          dist[static_cast<size_t>(nxt)] = dist[static_cast<size_t>(cur)] + 1;
          queue.push_back(nxt);
        }
      }
    }
  }
  return dist[static_cast<size_t>(target_ord)];
}

FewerThanLReport check_lemma_fewer_than_l(const LogicalSpace& space, int trials, uint64_t seed,
                                          int max_len, int threads) {
  const auto gens = space.generators();
  int l = 0;
  std::vector<const Generator*> non_q;
  for (const Generator* g : gens) {
    if (g->family == Family::Q) {
      ++l;
    } else {
      non_q.push_back(g);
    }
  }
  std::vector<double> deviations(static_cast<size_t>(trials), 0.0);
  parallel_for(trials, threads, [&](int64_t trial) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(trial) + 1);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_int_distribution<int> len_dist(0, max_len);
    const int len = len_dist(rng);
    // at most L-1 Q applications, positions and families random
    int q_budget = l - 1;
    LogicalState st = space.start_state();
    std::uniform_int_distribution<size_t> pick_any(0, gens.size() - 1);
    std::uniform_int_distribution<size_t> pick_non_q(0, non_q.size() - 1);
    for (int i = 0; i < len; ++i) {
      const Generator* g = nullptr;
      const size_t k = pick_any(rng);
      if (gens[k]->family == Family::Q) {
        if (q_budget > 0) {
          --q_budget;
          g = gens[k];
        } else {
          g = non_q[pick_non_q(rng)];
        }
      } else {
        g = gens[k];
      }
      space.evolve(st, HamiltonianId::term(g->family, g->index), angle(rng));
    }
    deviations[static_cast<size_t>(trial)] = std::abs(space.expectation_m(st) - 1.0);
  });
  FewerThanLReport rep;
  rep.trials = trials;
  for (double d : deviations) rep.max_deviation = std::max(rep.max_deviation, d);
  rep.pass = rep.max_deviation <= 1e-9;
  return rep;
}

std::vector<double> default_angle_grid(uint64_t seed) {
  std::vector<double> grid = {0.0,       kPi / 3.0,  -kPi / 3.0,      kPi / 2.0,
                              -kPi / 2.0, 2.0 * kPi / 3.0, -2.0 * kPi / 3.0, kPi};
  std::mt19937_64 rng(seed + 0x51ed270b);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 8; ++i) grid.push_back(angle(rng));
  return grid;
}

namespace {

uint64_t state_fingerprint(const LogicalState& st) {
  uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](uint64_t x) {
    h ^= x;
    h *= 1099511628211ULL;
  };
  for (const cxd& a : st.amps) {
    // quantize to make the dedup robust to round-off
    mix(static_cast<uint64_t>(static_cast<int64_t>(std::llround(a.real() * 1e9))));
    mix(static_cast<uint64_t>(static_cast<int64_t>(std::llround(a.imag() * 1e9))));
  }
  return h;
}

struct BeamEntry {
  LogicalState state;
  double expectation = 1.0;
  Schedule history;
};

struct Candidate {
  double expectation = 1.0;
  uint64_t fingerprint = 0;
  int entry = 0;
  int move = 0;
  int angle = 0;
};

}  // namespace

SoundnessReport brute_force_soundness(const LogicalSpace& space, const SoundnessOptions& opt) {
  const std::vector<double> angles =
      opt.angles.empty() ? default_angle_grid(opt.seed) : opt.angles;
  const bool qaoa = space.mode() == ReductionMode::Qaoa;

  std::vector<HamiltonianId> moves;
  if (qaoa) {
    moves = {HamiltonianId::hc(), HamiltonianId::hb()};
  } else {
    for (const Generator* g : space.generators()) {
      moves.push_back(HamiltonianId::term(g->family, g->index));
    }
  }
  auto measure = [&](const LogicalState& st) {
    return qaoa ? space.expectation_hc(st) : space.expectation_m(st);
  };
  auto move_allowed = [&](const HamiltonianId& id, int depth) {
    if (!qaoa) return true;
    // alternating ansatz: H_c first, then strictly alternate
    const auto want = (depth % 2 == 0) ? HamiltonianId::Kind::Hc : HamiltonianId::Kind::Hb;
    return id.kind == want;
  };

  SoundnessReport rep;
  std::vector<BeamEntry> beam;
  {
    BeamEntry e;
    e.state = space.start_state();
    e.expectation = measure(e.state);
    beam.push_back(std::move(e));
  }
  rep.min_expectation = beam[0].expectation;
  rep.states_explored = 1;

  // Protected prefix states of the seed schedules, indexed by depth.
  std::vector<std::vector<BeamEntry>> protected_at(static_cast<size_t>(opt.max_len) + 1);
  for (const Schedule& seed : opt.seeds) {
    BeamEntry e;
    e.state = space.start_state();
    for (size_t d = 0; d < seed.steps.size() && d < static_cast<size_t>(opt.max_len); ++d) {
      space.evolve(e.state, seed.steps[d].id, seed.steps[d].theta,
                   /*psi_prime_semantics=*/true);
      e.history.push(seed.steps[d].id, seed.steps[d].theta);
      e.expectation = measure(e.state);
      ++rep.states_explored;
      if (e.expectation < rep.min_expectation) {
        rep.min_expectation = e.expectation;
        rep.best_schedule = e.history;
      }
      protected_at[d + 1].push_back(e);
    }
  }

  for (int depth = 0; depth < opt.max_len; ++depth) {
    std::vector<int> active_moves;
    for (int mi = 0; mi < static_cast<int>(moves.size()); ++mi) {
      if (move_allowed(moves[static_cast<size_t>(mi)], depth)) active_moves.push_back(mi);
    }
    if (active_moves.empty()) break;
    const int64_t per_entry =
        static_cast<int64_t>(active_moves.size()) * static_cast<int64_t>(angles.size());
    std::vector<Candidate> cands(static_cast<size_t>(per_entry) * beam.size());
    parallel_for(static_cast<int64_t>(beam.size()), opt.threads, [&](int64_t ei) {
      LogicalState scratch;
      int64_t slot = ei * per_entry;
      for (int mi : active_moves) {
        for (int ai = 0; ai < static_cast<int>(angles.size()); ++ai, ++slot) {
          Candidate& c = cands[static_cast<size_t>(slot)];
          c.entry = static_cast<int>(ei);
          c.move = mi;
          c.angle = ai;
          if (angles[static_cast<size_t>(ai)] == 0.0) {
            c.expectation = 2.0;  // skipped: identity move
            c.fingerprint = 0;
            continue;
          }
          scratch = beam[static_cast<size_t>(ei)].state;
          space.evolve(scratch, moves[static_cast<size_t>(mi)],
                       angles[static_cast<size_t>(ai)], /*psi_prime_semantics=*/true);
          c.expectation = measure(scratch);
          c.fingerprint = state_fingerprint(scratch);
        }
      }
    });

    std::vector<const Candidate*> kept;
    std::unordered_map<uint64_t, bool> seen;
    for (const Candidate& c : cands) {
      if (c.fingerprint == 0 && c.expectation == 2.0) continue;  // skipped slot
      ++rep.states_explored;
      if (c.expectation < rep.min_expectation) {
        rep.min_expectation = c.expectation;
        rep.best_schedule = beam[static_cast<size_t>(c.entry)].history;
        rep.best_schedule.push(moves[static_cast<size_t>(c.move)],
                               angles[static_cast<size_t>(c.angle)]);
      }
      if (seen.emplace(c.fingerprint, true).second) kept.push_back(&c);
    }
    std::stable_sort(kept.begin(), kept.end(), [](const Candidate* a, const Candidate* b) {
      return a->expectation < b->expectation;
    });
    if (static_cast<int>(kept.size()) > opt.beam_width) {
      kept.resize(static_cast<size_t>(opt.beam_width));
      rep.truncated = true;
    }

    std::vector<BeamEntry> next(kept.size());
    parallel_for(static_cast<int64_t>(kept.size()), opt.threads, [&](int64_t ki) {
      const Candidate& c = *kept[static_cast<size_t>(ki)];
      BeamEntry& e = next[static_cast<size_t>(ki)];
      e.state = beam[static_cast<size_t>(c.entry)].state;
      space.evolve(e.state, moves[static_cast<size_t>(c.move)],
                   angles[static_cast<size_t>(c.angle)], /*psi_prime_semantics=*/true);
      e.expectation = c.expectation;
      e.history = beam[static_cast<size_t>(c.entry)].history;
      e.history.push(moves[static_cast<size_t>(c.move)], angles[static_cast<size_t>(c.angle)]);
    });
    for (const BeamEntry& p : protected_at[static_cast<size_t>(depth) + 1]) {
      next.push_back(p);
    }
    beam = std::move(next);
    if (beam.empty()) break;
  }
  return rep;
}

RoundingReport check_rounding_lemma(const QaoaInstance& inst, const Schedule& schedule) {
  auto [hb, hc] = assemble_hamiltonians(inst);
  LocalOperator hc_no_m(inst.regs.total());
  for (const auto& g : inst.group2) hc_no_m.add_term(g.support, g.matrix, inst.kappa);

  const LogicalSpace space = LogicalSpace::for_qaoa(inst);
  const double sqrt_eps = std::sqrt(inst.epsilon_q);

  DenseState psi = DenseState::from_bitstring(inst.ground_state_string);
  DenseState psi_prime = psi;

  RoundingReport rep;
  rep.pass = true;
  double prev_distance = 0.0;
  for (size_t zeta = 1; zeta <= schedule.size(); ++zeta) {
    const ScheduleStep& step = schedule.steps[zeta - 1];
    const bool is_c = step.id.kind == HamiltonianId::Kind::Hc;
    if (!is_c && step.id.kind != HamiltonianId::Kind::Hb) {
      throw std::invalid_argument("rounding check expects an alternating Hb/Hc schedule");
    }
    const LocalOperator& h = is_c ? hc : hb;
    const LocalOperator& h_dropped = is_c ? hc_no_m : hb;
    psi.amps = h.expi_apply_product(step.theta, psi.amps);
    psi_prime.amps = h_dropped.expi_apply_product(step.theta, psi_prime.amps);

    RoundingPrefix row;
    const double overlap = fidelity(psi.amps, psi_prime.amps);
    const double inside = std::min(1.0, overlap * overlap);
    row.trace_distance = 2.0 * std::sqrt(1.0 - inside);
    row.bound = 4.0 * static_cast<double>(zeta) * sqrt_eps;

    auto [logical, residual] = space.project(psi_prime);
    row.span_residual = residual;
    double violation = 0.0;
    for (int ord = 0; ord < space.dimension(); ++ord) {
      if (space.w_function(space.index(ord)) > static_cast<long long>(zeta) + 1) {
        violation += std::norm(logical.amps[static_cast<size_t>(ord)]);
      }
    }
    row.w_violation = std::sqrt(violation);

    rep.max_distance_slack =
        std::max(rep.max_distance_slack, row.trace_distance - row.bound);
    if (row.trace_distance > row.bound + 1e-12 || row.span_residual > 1e-9 ||
        row.w_violation > 1e-9) {
      rep.pass = false;
    }
    if (row.trace_distance < prev_distance - 1e-9) rep.pass = false;  // monotonicity
    prev_distance = std::max(prev_distance, row.trace_distance);
    rep.prefixes.push_back(row);
  }
  return rep;
}

bool decide_from_estimator(long long m_prime, long long m_estimate) {
  return m_estimate <= m_prime;
}

long long exact_min_depth_vqa(const VqaInstance& inst, double accept_threshold) {
  const auto weight = min_satisfying_weight(inst.source, accept_threshold);
  if (!weight) return kUnreachable;
  return static_cast<long long>(*weight) * (2LL * inst.regs.d - 1) + inst.regs.a +
         inst.verifier_gate_count();
}

}  // namespace depthforge
