#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "depthforge/circuit.hpp"
#include "depthforge/generator.hpp"
#include "depthforge/rational.hpp"

namespace depthforge {

// Compiled MIN-VQA instance: generator families F/G/P/Q over registers
// A,B,C,D, the 2-local observable M, and the depth thresholds.
struct VqaInstance {
  Registers regs;
  std::vector<Generator> generators;  // F(|D|-1), G(|A|), P(|A|), Q(L)
  Generator observable;               // M = I - |1><1|_{B1} x |1><1|_{C_|C|}
  long long m = 0;
  long long m_prime = 0;
  double delta = 0.1;
  QmsaInstance source;
  std::string provenance;

  int verifier_gate_count() const { return source.circuit.gate_count(); }
  const Generator* find(Family f, int index) const;
};

// Builds the instance from a preprocessed QMSA instance.
// |C| = L + n_V + 1; |D| = ceil(L^(1+delta)) unless d_override is given.
VqaInstance build_vqa(const QmsaInstance& qmsa, double delta,
                      std::optional<int> d_override = std::nullopt);

// Structural checks: family counts, threshold formulas, Hermiticity and the
// squared-generator identities. Throws on violation.
void validate(const VqaInstance& inst);

// Conjugates every generator and the observable by X^{x_i} per qubit.
// Simulating the result from |0...0> matches simulating the original from
// |x> after undoing the basis change.
VqaInstance conjugate_instance(const VqaInstance& inst, const std::string& x);

// Deterministic bit count: per generator c0 + 4*ceil(log2 n) bits, the
// observable at c0 + 2*ceil(log2 n), plus bits for m and m'. c0 = 64.
long long encoding_size(const VqaInstance& inst);
extern const int kEncodingMatrixBits;  // c0

Rational hardness_ratio(const VqaInstance& inst);

struct PlannedParameters {
  double epsilon_prime = 0.0;
  double delta = 0.0;
};

// Checks the feasibility inequality relating the QMSA encoding lower bound
// to the compiled-instance encoding upper bound at exponents (eps', delta).
bool ratio_inequality_holds(double epsilon, double epsilon_prime, double delta,
                            long long l_prime, long long n_v_prime, double c);

// Scans a logarithmic grid over (eps', delta) in (0.01, 0.99)^2 and returns
// the first satisfying pair (delta-major order); nullopt if the grid fails
// everywhere (expected for small L').
std::optional<PlannedParameters> plan_parameters(double epsilon, long long l_prime,
                                                 long long n_v_prime, double c);

}  // namespace depthforge
