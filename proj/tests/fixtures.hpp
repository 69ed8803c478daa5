#pragma once

// Reference circuits and compiled instances shared by the unit tests and
// the acceptance suite.

#include <random>

#include "depthforge/circuit.hpp"
#include "depthforge/qaoa.hpp"
#include "depthforge/vqa.hpp"

namespace depthforge::fixtures {

inline Mat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Mat a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) a(r, c) = cxd(nd(rng), nd(rng));
  }
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  return q;
}

inline Mat ry(double theta) {
  Mat m(2, 2);
  m(0, 0) = std::cos(theta / 2.0);
  m(0, 1) = -std::sin(theta / 2.0);
  m(1, 0) = std::sin(theta / 2.0);
  m(1, 1) = std::cos(theta / 2.0);
  return m;
}

inline Mat controlled_on_bit0(const Mat& u) {
  Mat m = Mat::Identity(4, 4);
  m(1, 1) = u(0, 0);
  m(1, 3) = u(0, 1);
  m(3, 1) = u(1, 0);
  m(3, 3) = u(1, 1);
  return m;
}

// L' = 0 core: n proof qubits, one ancilla acting as the output. Rejects
// every input.
inline VerifierCircuit core_zero_gate(int n_proof) {
  VerifierCircuit c;
  c.n_proof = n_proof;
  c.n_ancilla = 1;
  c.output_qubit = n_proof;
  return c;
}

// Accepts exactly the strings with y_1 = 1 (one CNOT onto the output).
inline VerifierCircuit core_y1_acceptor(int n_proof) {
  VerifierCircuit c;
  c.n_proof = n_proof;
  c.n_ancilla = 1;
  c.output_qubit = n_proof;
  c.gates.push_back(make_cnot(0, n_proof));
  return c;
}

// Accepts exactly y_1 and y_2 (Toffoli built from five 2-qubit gates).
inline VerifierCircuit core_and_acceptor() {
  VerifierCircuit c;
  c.n_proof = 2;
  c.n_ancilla = 1;
  c.output_qubit = 2;
  const Mat v = [] {
    Mat m(2, 2);
    m(0, 0) = cxd(0.5, 0.5);
    m(0, 1) = cxd(0.5, -0.5);
    m(1, 0) = cxd(0.5, -0.5);
    m(1, 1) = cxd(0.5, 0.5);
    return m;
  }();
  const Mat vd = v.adjoint();
  c.gates.push_back(make_2q(0, 2, controlled_on_bit0(v)));
  c.gates.push_back(make_cnot(0, 1));
  c.gates.push_back(make_2q(1, 2, controlled_on_bit0(vd)));
  c.gates.push_back(make_cnot(0, 1));
  c.gates.push_back(make_2q(1, 2, controlled_on_bit0(v)));
  return c;
}

// Accepts every input with the same probability p (monotone trivially).
inline VerifierCircuit core_const_rotation(int n_proof, double p) {
  VerifierCircuit c;
  c.n_proof = n_proof;
  c.n_ancilla = 1;
  c.output_qubit = n_proof;
  c.gates.push_back(make_1q(n_proof, ry(2.0 * std::asin(std::sqrt(p)))));
  return c;
}

// Accepts strings with y_1 = 1 with probability p, rejects the rest.
inline VerifierCircuit core_controlled_rotation(int n_proof, double p) {
  VerifierCircuit c;
  c.n_proof = n_proof;
  c.n_ancilla = 1;
  c.output_qubit = n_proof;
  c.gates.push_back(make_2q(0, n_proof, controlled_on_bit0(ry(2.0 * std::asin(std::sqrt(p))))));
  return c;
}

inline QmsaInstance qmsa_of(const VerifierCircuit& core, int g, int gp,
                            double eps = 1.0 / 3.0) {
  QmsaInstance q;
  q.circuit = preprocess(core);
  q.g = g;
  q.g_prime = gp;
  q.epsilon_q = eps;
  return q;
}

// n_V = 2, L = 3, |C| = 6, |D| = 4, 16 qubits; m = 12, m' = 19.
inline VqaInstance ref_vqa() { return build_vqa(qmsa_of(core_zero_gate(2), 1, 2), 0.1, 4); }

// y1-acceptor YES instance: n_V = 2, L = 4, |C| = 7, |D| = 4, 17 qubits; m = 13.
inline VqaInstance ref_vqa_yes() {
  return build_vqa(qmsa_of(core_y1_acceptor(2), 1, 2), 0.1, 4);
}

// (y1 and y2) NO instance: L = 8, |C| = 11, |D| = 4, 21 qubits; m' = 17.
inline VqaInstance ref_vqa_no() { return build_vqa(qmsa_of(core_and_acceptor(), 0, 1), 0.1, 4); }

// Zero-gate rejector: n_V = 1, L = 2, |C| = 5, |D| = 4, 13 qubits;
// m = 4, m' = 8.
inline QaoaInstance ref_qaoa() {
  QmsaInstance q = qmsa_of(core_zero_gate(1), 0, 1, 1e-8);
  q = amplify(q, 1);
  return build_qaoa(q, 0.1, 4);
}

// y1-acceptor YES instance: n_V = 2, L = 4, |C| = 9, |D| = 4, 19 qubits;
// m = 14, m' = 16.
inline QaoaInstance ref_qaoa_yes() {
  QmsaInstance q = qmsa_of(core_y1_acceptor(2), 1, 2, 1e-8);
  q = amplify(q, 1);
  return build_qaoa(q, 0.1, 4);
}

// Constant near-rejector (accepts everything with probability 1e-6):
// NO-type instance with nonzero eps_q for the rounding lemma. n_V = 1,
// L = 4 after padding, |C| = 7, |D| = 4, 15 qubits; m' = 10.
inline QaoaInstance ref_qaoa_no() {
  QmsaInstance q = qmsa_of(core_const_rotation(1, 1e-6), 0, 1, 4e-6);
  q = amplify(q, 1);
  return build_qaoa(q, 0.1, 4);
}

}  // namespace depthforge::fixtures
