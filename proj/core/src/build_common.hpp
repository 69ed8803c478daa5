#pragma once

// Shared construction helpers for the two reduction builders.

#include <stdexcept>
#include <utility>
#include <vector>

#include "depthforge/circuit.hpp"
#include "depthforge/generator.hpp"
#include "depthforge/linalg.hpp"

namespace depthforge::detail {

inline Mat swap_pair() { return ket_bra("01", "10") + ket_bra("10", "01"); }

// Kinetic part of Q_k on [gate targets..., C_a, C_{a+1}]:
// V (x) |01><10|_C + V^dag (x) |10><01|_C.
inline Mat q_kinetic(const Mat& v) {
  const int gq = v.rows() == 2 ? 1 : 2;
  const int64_t gdim = int64_t{1} << gq;
  const int64_t dim = gdim * 4;
  Mat m = Mat::Zero(dim, dim);
  const int64_t token_lo = int64_t{1} << gq;        // C pair |10>
  const int64_t token_hi = int64_t{1} << (gq + 1);  // C pair |01>
  for (int64_t r = 0; r < gdim; ++r) {
    for (int64_t c = 0; c < gdim; ++c) {
      m(r + token_hi, c + token_lo) += v(r, c);
      m(r + token_lo, c + token_hi) += std::conj(v(c, r));
    }
  }
  return m;
}

inline Generator make_generator(Family f, int index, std::vector<int> support, Mat matrix) {
  Generator g;
  g.family = f;
  g.index = index;
  g.support = std::move(support);
  g.matrix = std::move(matrix);
  if (!is_hermitian(g.matrix)) throw std::logic_error("generator not Hermitian: " + g.id());
  return g;
}

inline Generator make_observable_m(const Registers& regs) {
  Mat m = Mat::Identity(4, 4) - ket_proj("11");
  return make_generator(Family::M, 0, {regs.qb(1), regs.qc(regs.c)}, std::move(m));
}

inline std::vector<int> gate_supports_in_ab(const Gate& gate, const Registers& regs,
                                            const VerifierCircuit& circuit) {
  std::vector<int> sup;
  for (int t : gate.targets) {
    if (t < circuit.n_proof) {
      sup.push_back(regs.qa(t + 1));
    } else {
      sup.push_back(regs.qb(t - circuit.n_proof + 1));
    }
  }
  return sup;
}

}  // namespace depthforge::detail
