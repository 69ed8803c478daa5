#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depthforge/circuit.hpp"
#include "depthforge/dense.hpp"
#include "depthforge/generator.hpp"

namespace depthforge {

// Compiled MIN-QAOA instance. Generators are split into two families whose
// members commute on the clock-valid subspace; H_b = sum(group1) + H_0 and
// H_c = kappa * sum(group2) + M.
//
// The diagonal penalty terms deviate from a literal transcription in three
// places so that the construction is self-consistent (single ground state of
// H_b, exact honest transitions, commuting action on clock-valid states):
//   * even-G penalty conditions on "exactly one token in D_{1,2}" instead of
//     the fixed pattern D_1 = 1, D_2 = 0;
//   * the P penalty is -2|0><0| on D_|D| alone;
//   * H_0 carries an extra -2|0><0|_{D_2} (x) |1><1|_{C_1} piece pinning D_2.
struct QaoaInstance {
  Registers regs;
  std::vector<Generator> group1;  // even G, odd F >= 3, even Q
  std::vector<Generator> group2;  // odd G, even F, odd Q, all P
  Generator h0;
  Generator observable;  // M
  double kappa = 0.0;
  double epsilon_q = 0.0;
  long long m = 0;
  long long m_prime = 0;
  double delta = 0.1;
  std::string ground_state_string;  // |0,0,~1,~1> over the global qubit line
  QmsaInstance source;              // circuit here is the padded one driving Q
  std::string provenance;

  int verifier_gate_count() const { return source.circuit.gate_count(); }
  const Generator* find(Family f, int index) const;
  std::vector<const Generator*> all_generators() const;  // group1 + group2
};

// Builds the instance from a preprocessed, amplified QMSA instance.
// |C| = L + 2 n_V + 1; |D| = ceil(L^(1+delta)) (bumped to even) unless
// d_override (even, >= 4) is given. kappa defaults to 1/(24(|G1|+|G2|)).
QaoaInstance build_qaoa(const QmsaInstance& qmsa, double delta,
                        std::optional<int> d_override = std::nullopt,
                        std::optional<double> kappa_override = std::nullopt);

void validate(const QaoaInstance& inst);

// H_b and H_c as operator handles (H_0 contributes its 2-local pieces).
std::pair<LocalOperator, LocalOperator> assemble_hamiltonians(const QaoaInstance& inst);

struct GroundStateInfo {
  DenseState state;        // the basis state |0,0,~1,~1>
  double lambda_min = 0;   // its H_b eigenvalue
  double uniqueness_gap = 0;
  int lanczos_iterations = 0;
};

// Verifies |0,0,~1,~1> is the unique ground state of H_b by Lanczos
// diagonalization (deflating the exact ground vector for the second
// eigenvalue). Total qubits <= 16.
GroundStateInfo ground_state(const QaoaInstance& inst);

struct ObservableGap {
  double value = 0.0;   // |<psi|(H_c - M)|psi>|
  double bound = 0.0;   // 2 kappa |G2|
  bool within_twelfth = false;
};

ObservableGap observable_gap(const QaoaInstance& inst, const Vec& state);

struct CommutationReport {
  double max_group1_clock = 0.0;    // ||[G,G']psi|| over clock-valid psi
  double max_group2_m_clock = 0.0;  // same for group2 + M
  double max_group1_full = 0.0;     // full-space matrix commutator
  double max_group2_m_full = 0.0;
  double max_hc_m_full = 0.0;       // [H_c, M], full space
};

// Pairwise commutator check. The construction guarantees zero on the
// clock-valid subspace (both clocks unary); full-space values are reported
// for transparency and are zero for the references used here.
CommutationReport check_commutation(const QaoaInstance& inst);

}  // namespace depthforge
