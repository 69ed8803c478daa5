#pragma once

#include <optional>
#include <string>
#include <vector>

#include "depthforge/linalg.hpp"

namespace depthforge {

// One 1- or 2-qubit gate. The matrix acts on the targets tuple with
// targets[0] as the least significant bit of the local index.
struct Gate {
  std::vector<int> targets;
  Mat matrix;

  int arity() const { return static_cast<int>(targets.size()); }
};

Gate make_cnot(int control, int target);
Gate make_x(int qubit);
Gate make_identity(int qubit);
Gate make_1q(int qubit, const Mat& u);
Gate make_2q(int q0, int q1, const Mat& u);

struct AssumptionFlags {
  bool read_only_proof = false;
  bool delayed_output = false;
  bool amplified = false;
};

// QMSA verifier circuit over a proof register (qubits [0, n_proof)) and an
// ancilla register (qubits [n_proof, n_proof + n_ancilla)). Ancillas start
// in |0>, acceptance is P(output qubit = 1).
struct VerifierCircuit {
  int n_proof = 0;
  int n_ancilla = 0;
  std::vector<Gate> gates;
  int output_qubit = 0;
  AssumptionFlags flags;

  int width() const { return n_proof + n_ancilla; }
  int gate_count() const { return static_cast<int>(gates.size()); }
  bool is_proof_qubit(int q) const { return q >= 0 && q < n_proof; }
};

// Throws std::invalid_argument when a structural invariant is violated,
// including the block-diagonality conditions implied by set flags.
void validate(const VerifierCircuit& c);

struct QmsaInstance {
  VerifierCircuit circuit;
  int g = 0;
  int g_prime = 0;
  double epsilon_q = 1.0 / 3.0;
};

void validate(const QmsaInstance& q);

// Rewrites the circuit so it only reads the proof register and sets its
// (fresh) output qubit with the final gate. Sizes follow
// n_V = n_V', m_V = m_V' + n_V' + 1, L = L' + n_V' + 1. The new output
// qubit is the first ancilla, so it lands on B_1 in the reductions.
// A circuit already carrying both flags is returned unchanged.
VerifierCircuit preprocess(const VerifierCircuit& c);

// Parallel k-fold repetition sharing the (read-only) proof register,
// followed by an exact reversible majority vote built from a unary token
// counter (Fredkin ripple decomposed into 1-/2-qubit gates). k must be odd.
// k = 1 only marks the circuit amplified.
VerifierCircuit amplify(const VerifierCircuit& c, int k);

// Amplifies the circuit and updates epsilon_q with the exact binomial
// majority tail.
QmsaInstance amplify(const QmsaInstance& q, int k);

// Majority tail sum_{j >= (k+1)/2} C(k,j) p^j (1-p)^(k-j).
double majority_probability(double p, int k);

// <y;0| V^dag (|1><1| on output) V |y;0>; exact dense simulation, width <= 24.
double accept_probability(const VerifierCircuit& c, const std::string& y);

// Minimum Hamming weight over proof strings with accept probability >=
// threshold; nullopt if the circuit rejects everything. n_proof <= 12.
std::optional<int> min_satisfying_weight(const QmsaInstance& q, double threshold);

// Number of gates the k-fold majority subcircuit adds on top of k*L.
int majority_overhead_gates(int k);

}  // namespace depthforge
