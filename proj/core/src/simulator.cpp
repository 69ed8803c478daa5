#include "depthforge/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace depthforge {

Engine engine_from_name(const std::string& s) {
  if (s == "logical") return Engine::Logical;
  if (s == "dense") return Engine::Dense;
  if (s == "closed") return Engine::Closed;
  throw std::invalid_argument("unknown engine: " + s);
}

Mat closed_form_unitary(const Generator& gen, double theta) {
  const int64_t dim = gen.matrix.rows();
  Mat d = Mat::Zero(dim, dim);
  for (int64_t i = 0; i < dim; ++i) d(i, i) = gen.matrix(i, i);
  const Mat k = gen.matrix - d;
  const Mat k2 = k * k;
  if (max_abs(Mat(k2 * k - k)) > 1e-10) {
    throw std::invalid_argument("no closed form: kinetic part violates K^3 = K for " + gen.id());
  }
  Mat u = Mat::Identity(dim, dim) + cxd(0.0, std::sin(theta)) * k + (std::cos(theta) - 1.0) * k2;
  for (int64_t i = 0; i < dim; ++i) {
    const double di = d(i, i).real();
    if (di != 0.0) {
      // penalties sit outside the kinetic subspace; K must not touch row i
      u(i, i) = std::exp(cxd(0.0, theta * di));
    }
  }
  return u;
}

DenseState initial_dense_state(const VqaInstance& inst) {
  const Registers& r = inst.regs;
  uint64_t idx = (uint64_t{1} << r.qc(1)) | (uint64_t{1} << r.qd(1));
  return DenseState::basis_state(r.total(), idx);
}

DenseState initial_dense_state(const QaoaInstance& inst) {
  return DenseState::from_bitstring(inst.ground_state_string);
}

namespace {

double dense_expectation_m(const Vec& amps, const Registers& r) {
  const uint64_t mask = (uint64_t{1} << r.qb(1)) | (uint64_t{1} << r.qc(r.c));
  double hit = 0.0;
  for (int64_t i = 0; i < amps.size(); ++i) {
    if ((static_cast<uint64_t>(i) & mask) == mask) hit += std::norm(amps(i));
  }
  return amps.squaredNorm() - hit;
}

}  // namespace

void closed_evolve_qaoa(const QaoaInstance& inst, DenseState& state, const HamiltonianId& id,
                        double theta, bool drop_m) {
  const int n = inst.regs.total();
  switch (id.kind) {
    case HamiltonianId::Kind::Hb: {
      for (const auto& g : inst.group1) {
        apply_local(state.amps, n, g.support, closed_form_unitary(g, theta));
      }
      apply_local(state.amps, n, inst.h0.support, closed_form_unitary(inst.h0, theta));
      return;
    }
    case HamiltonianId::Kind::Hc: {
      for (const auto& g : inst.group2) {
        apply_local(state.amps, n, g.support, closed_form_unitary(g, inst.kappa * theta));
      }
      if (!drop_m) {
        apply_local(state.amps, n, inst.observable.support,
                    closed_form_unitary(inst.observable, theta));
      }
      return;
    }
    case HamiltonianId::Kind::Term: {
      const Generator* g = inst.find(id.family, id.index);
      if (g == nullptr) throw std::invalid_argument("unknown generator id: " + id.str());
      apply_local(state.amps, n, g->support, closed_form_unitary(*g, theta));
      return;
    }
  }
}

SimResult simulate_vqa(const VqaInstance& inst, const Schedule& schedule, Engine engine,
                       bool want_trajectory) {
  SimResult res;
  const int n = inst.regs.total();
  std::optional<LogicalSpace> space;
  if (engine == Engine::Logical || want_trajectory) space.emplace(LogicalSpace::for_vqa(inst));

  if (engine == Engine::Logical) {
    LogicalState st = space->start_state();
    int step = 0;
    auto record = [&] {
      if (want_trajectory) res.trajectory.push_back({step, space->expectation_m(st), 0.0});
    };
    record();
    for (const auto& s : schedule.steps) {
      if (s.id.kind != HamiltonianId::Kind::Term) {
        throw std::invalid_argument("VQA schedules evolve single generators");
      }
      space->evolve(st, s.id, s.theta);
      ++step;
      record();
    }
    res.expectation = space->expectation_m(st);
    res.logical = std::move(st);
    return res;
  }

  DenseState state = initial_dense_state(inst);
  int step = 0;
  auto record = [&] {
    if (!want_trajectory) return;
    TrajectoryRow row;
    row.step = step;
    row.expectation = dense_expectation_m(state.amps, inst.regs);
    row.span_residual = space->project(state).second;
    res.trajectory.push_back(row);
  };
  record();
  for (const auto& s : schedule.steps) {
    if (s.id.kind != HamiltonianId::Kind::Term) {
      throw std::invalid_argument("VQA schedules evolve single generators");
    }
    const Generator* g = inst.find(s.id.family, s.id.index);
    if (g == nullptr && s.id.family == Family::M) g = &inst.observable;
    if (g == nullptr) throw std::invalid_argument("unknown generator id: " + s.id.str());
    if (engine == Engine::Closed) {
      apply_local(state.amps, n, g->support, closed_form_unitary(*g, s.theta));
    } else {
      expi_apply_local(state.amps, n, g->support, g->matrix, s.theta);
    }
    ++step;
    record();
  }
  res.expectation = dense_expectation_m(state.amps, inst.regs);
  res.dense = std::move(state);
  return res;
}

SimResult simulate_qaoa(const QaoaInstance& inst, const Schedule& schedule, Engine engine,
                        bool want_trajectory) {
  SimResult res;
  std::optional<LogicalSpace> space;
  if (engine == Engine::Logical || want_trajectory) space.emplace(LogicalSpace::for_qaoa(inst));

  if (engine == Engine::Logical) {
    LogicalState st = space->start_state();
    int step = 0;
    auto record = [&] {
      if (want_trajectory) res.trajectory.push_back({step, space->expectation_hc(st), 0.0});
    };
    record();
    for (const auto& s : schedule.steps) {
      space->evolve(st, s.id, s.theta);
      ++step;
      record();
    }
    res.expectation = space->expectation_hc(st);
    res.logical = std::move(st);
    return res;
  }

  auto [hb, hc] = assemble_hamiltonians(inst);
  DenseState state = initial_dense_state(inst);
  int step = 0;
  auto record = [&] {
    if (!want_trajectory) return;
    TrajectoryRow row;
    row.step = step;
    row.expectation = hc.expectation(state.amps);
    row.span_residual = space->project(state).second;
    res.trajectory.push_back(row);
  };
  record();
  for (const auto& s : schedule.steps) {
    if (engine == Engine::Closed) {
      closed_evolve_qaoa(inst, state, s.id, s.theta);
    } else {
      switch (s.id.kind) {
        case HamiltonianId::Kind::Hb:
          state.amps = hb.expi_apply_taylor(s.theta, state.amps);
          break;
        case HamiltonianId::Kind::Hc:
          state.amps = hc.expi_apply_taylor(s.theta, state.amps);
          break;
        case HamiltonianId::Kind::Term: {
          const Generator* g = inst.find(s.id.family, s.id.index);
          if (g == nullptr) throw std::invalid_argument("unknown generator id: " + s.id.str());
          expi_apply_local(state.amps, inst.regs.total(), g->support, g->matrix, s.theta);
          break;
        }
      }
    }
    ++step;
    record();
  }
  res.expectation = hc.expectation(state.amps);
  res.dense = std::move(state);
  return res;
}

}  // namespace depthforge
