#pragma once

#include <optional>
#include <vector>

#include "depthforge/logical.hpp"

namespace depthforge {

enum class Engine { Logical, Dense, Closed };

Engine engine_from_name(const std::string& s);

// Closed-form local unitary exp(i theta H) for a reduction generator.
// Every kinetic part K = H - diag(H) obeys K^3 = K (the even-G cycle has
// spectrum {0, +1, -1}), so exp(i theta K) = I + i sin(theta) K +
// (cos(theta) - 1) K^2, and the diagonal penalties live on states K never
// touches, contributing bare phases.
Mat closed_form_unitary(const Generator& gen, double theta);

// Start states of the compiled instances: |0...0>_AB |~1>_C |~1>_D.
DenseState initial_dense_state(const VqaInstance& inst);
DenseState initial_dense_state(const QaoaInstance& inst);

struct TrajectoryRow {
  int step = 0;
  double expectation = 0.0;
  double span_residual = 0.0;
};

struct SimResult {
  double expectation = 0.0;
  std::optional<DenseState> dense;
  std::optional<LogicalState> logical;
  std::vector<TrajectoryRow> trajectory;
};

// Runs a schedule of generator evolutions from |phi| and reports <M>.
SimResult simulate_vqa(const VqaInstance& inst, const Schedule& schedule, Engine engine,
                       bool want_trajectory = false);

// Runs a schedule over {Hb, Hc} (or single terms) from |gs_b> and reports
// <H_c>. The logical engine keeps full psi semantics and therefore refuses
// H_c steps once amplitude reaches t = |C|; use the dense/closed engines
// (or psi-prime semantics via LogicalSpace directly) in that regime.
SimResult simulate_qaoa(const QaoaInstance& inst, const Schedule& schedule, Engine engine,
                        bool want_trajectory = false);

// exp(i theta Hb/Hc) on a dense state through per-term closed forms; exact
// given the validated clock-subspace commutation.
void closed_evolve_qaoa(const QaoaInstance& inst, DenseState& state, const HamiltonianId& id,
                        double theta, bool drop_m = false);

}  // namespace depthforge
