#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "depthforge/linalg.hpp"

namespace depthforge {

// Full statevector over n qubits, amplitude index bit i = value of qubit i.
struct DenseState {
  int n_qubits = 0;
  Vec amps;

  static DenseState zero_state(int n);
  static DenseState basis_state(int n, uint64_t index);
  // bits[i] is the value of qubit i ('0'/'1'), bits.size() == n.
  static DenseState from_bitstring(const std::string& bits);

  double norm() const { return amps.norm(); }
};

uint64_t bitstring_to_index(const std::string& bits);

// In-place application of a 2^k x 2^k matrix to the (ordered) support tuple.
void apply_local(Vec& amps, int n_qubits, const std::vector<int>& support, const Mat& u);

// One Hermitian local term of an operator sum.
struct LocalTerm {
  std::vector<int> support;
  Mat matrix;
  bool diagonal = false;   // filled by LocalOperator::add_term
  double snorm = 0.0;      // spectral norm, filled by add_term
};

// Hamiltonian handle: a sum of local Hermitian terms with matrix-free action
// and dense materialization at desk scale.
class LocalOperator {
 public:
  explicit LocalOperator(int n_qubits) : n_(n_qubits) {}

  void add_term(std::vector<int> support, const Mat& matrix, double scale = 1.0);
  int n_qubits() const { return n_; }
  const std::vector<LocalTerm>& terms() const { return terms_; }
  double norm_bound() const { return norm_bound_; }  // sum of term norms

  Vec apply(const Vec& in) const;          // H |psi>
  Mat materialize() const;                 // n <= 14
  double expectation(const Vec& psi) const;

  // exp(i theta H)|psi> by truncated Taylor with scaling; structure-blind
  // oracle, relative error <= tol. Cost grows with |theta| * norm_bound().
  Vec expi_apply_taylor(double theta, const Vec& in, double tol = 1e-13) const;

  // exp(i theta H)|psi> as the product of per-term local exponentials.
  // Exact when the terms pairwise commute on the invariant subspace holding
  // |psi> (validated per instance for the reduction Hamiltonians).
  Vec expi_apply_product(double theta, const Vec& in) const;

 private:
  int n_;
  std::vector<LocalTerm> terms_;
  double norm_bound_ = 0.0;
};

// exp(i theta T)|psi> for a single local Hermitian term, via local
// eigendecomposition. The per-generator dense oracle.
void expi_apply_local(Vec& amps, int n_qubits, const std::vector<int>& support, const Mat& h,
                      double theta);

double fidelity(const Vec& a, const Vec& b);  // |<a|b>|

struct LanczosOptions {
  int max_iters = 160;
  uint64_t seed = 1;
  double tol = 1e-11;
};

struct LanczosEigen {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Smallest eigenvalue of H by Lanczos with full reorthogonalization.
// When deflate is given the iteration stays orthogonal to it, so for an
// exact eigenvector this returns the smallest eigenvalue of the
// complementary invariant subspace.
LanczosEigen lanczos_smallest(const LocalOperator& h, const LanczosOptions& opt,
                              const Vec* deflate = nullptr);

}  // namespace depthforge
