#include "depthforge/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "depthforge/dense.hpp"
#include "depthforge/log.hpp"

namespace depthforge {

namespace {

Mat cnot_matrix() {
  // control = local bit 0, target = local bit 1
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = 1.0;
  m(2, 2) = 1.0;
  m(1, 3) = 1.0;
  m(3, 1) = 1.0;
  return m;
}

Mat sqrt_x() {
  Mat v(2, 2);
  v(0, 0) = cxd(0.5, 0.5);
  v(0, 1) = cxd(0.5, -0.5);
  v(1, 0) = cxd(0.5, -0.5);
  v(1, 1) = cxd(0.5, 0.5);
  return v;
}

Mat controlled(const Mat& u) {
  // control = local bit 0
  Mat m = Mat::Identity(4, 4);
  m(1, 1) = u(0, 0);
  m(1, 3) = u(0, 1);
  m(3, 1) = u(1, 0);
  m(3, 3) = u(1, 1);
  return m;
}

// Toffoli(a, b -> c) from five 2-qubit gates (controlled sqrt-X circuit).
void append_toffoli(std::vector<Gate>& gates, int a, int b, int c) {
  const Mat v = sqrt_x();
  const Mat vd = v.adjoint();
  gates.push_back(make_2q(a, c, controlled(v)));
  gates.push_back(make_cnot(a, b));
  gates.push_back(make_2q(b, c, controlled(vd)));
  gates.push_back(make_cnot(a, b));
  gates.push_back(make_2q(b, c, controlled(v)));
}

// Fredkin(ctrl; x, y): controlled swap as CNOT / Toffoli / CNOT.
void append_fredkin(std::vector<Gate>& gates, int ctrl, int x, int y) {
  gates.push_back(make_cnot(x, y));
  append_toffoli(gates, ctrl, y, x);
  gates.push_back(make_cnot(x, y));
}

}  // namespace

Gate make_1q(int qubit, const Mat& u) {
  Gate g;
  g.targets = {qubit};
  g.matrix = u;
  return g;
}

Gate make_2q(int q0, int q1, const Mat& u) {
  Gate g;
  g.targets = {q0, q1};
  g.matrix = u;
  return g;
}

Gate make_cnot(int control, int target) { return make_2q(control, target, cnot_matrix()); }

Gate make_x(int qubit) {
  Mat x = Mat::Zero(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  return make_1q(qubit, x);
}

Gate make_identity(int qubit) { return make_1q(qubit, Mat::Identity(2, 2)); }

void validate(const VerifierCircuit& c) {
  if (c.n_proof < 0 || c.n_ancilla < 0) throw std::invalid_argument("negative register size");
  if (c.output_qubit < 0 || c.output_qubit >= c.width()) {
    throw std::invalid_argument("output qubit out of range");
  }
  for (size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    if (g.arity() != 1 && g.arity() != 2) {
      throw std::invalid_argument("gates must act on 1 or 2 qubits");
    }
    const int64_t dim = int64_t{1} << g.arity();
    if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
      throw std::invalid_argument("gate matrix dimension mismatch");
    }
    if (!is_unitary(g.matrix, kUnitaryTol)) throw std::invalid_argument("gate not unitary");
    for (int t : g.targets) {
      if (t < 0 || t >= c.width()) throw std::invalid_argument("gate target out of range");
    }
    if (g.arity() == 2 && g.targets[0] == g.targets[1]) {
      throw std::invalid_argument("2-qubit gate targets must be distinct");
    }
    if (c.flags.read_only_proof) {
      for (int p = 0; p < g.arity(); ++p) {
        if (c.is_proof_qubit(g.targets[p]) && !block_diagonal_on_bit(g.matrix, p)) {
          throw std::invalid_argument("read_only_proof violated: gate writes to proof qubit");
        }
      }
    }
    if (c.flags.delayed_output && gi + 1 < c.gates.size()) {
      for (int p = 0; p < g.arity(); ++p) {
        if (g.targets[p] == c.output_qubit && !block_diagonal_on_bit(g.matrix, p)) {
          throw std::invalid_argument("delayed_output violated: early write to output qubit");
        }
      }
    }
  }
}

void validate(const QmsaInstance& q) {
  validate(q.circuit);
  if (!(0 <= q.g && q.g <= q.g_prime && q.g_prime <= q.circuit.n_proof)) {
    throw std::invalid_argument("thresholds must satisfy 0 <= g <= g' <= n_proof");
  }
  if (!(q.epsilon_q > 0.0 && q.epsilon_q < 0.5)) {
    throw std::invalid_argument("epsilon_q must lie in (0, 1/2)");
  }
}

VerifierCircuit preprocess(const VerifierCircuit& c) {
  validate(c);
  if (c.flags.read_only_proof && c.flags.delayed_output) return c;

  const int np = c.n_proof;
  const int ma = c.n_ancilla;
  // New layout: [proof np][fresh output][original ancillas ma][proof copies np]
  VerifierCircuit out;
  out.n_proof = np;
  out.n_ancilla = ma + np + 1;
  out.output_qubit = np;
  out.flags.read_only_proof = true;
  out.flags.delayed_output = true;

  auto remap = [&](int q) {
    if (q < np) return np + 1 + ma + q;  // proof -> its copy
    return q + 1;                        // ancilla shifted past fresh output
  };

  for (int i = 0; i < np; ++i) {
    out.gates.push_back(make_cnot(i, np + 1 + ma + i));
  }
  for (const Gate& g : c.gates) {
    Gate ng = g;
    for (int& t : ng.targets) t = remap(t);
    out.gates.push_back(std::move(ng));
  }
  out.gates.push_back(make_cnot(remap(c.output_qubit), np));
  validate(out);
  return out;
}

int majority_overhead_gates(int k) {
  if (k == 1) return 0;
  // X(u0) + 7 gates per Fredkin (k(k+1)/2 of them) + (k+1)/2 staging CNOTs
  // + final CNOT onto the fresh output.
  return 1 + 7 * (k * (k + 1) / 2) + (k + 1) / 2 + 1;
}

VerifierCircuit amplify(const VerifierCircuit& c, int k) {
  validate(c);
  if (!c.flags.read_only_proof || !c.flags.delayed_output) {
    throw std::invalid_argument("amplify requires a preprocessed circuit");
  }
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("repetition count must be odd");
  if (k == 1) {
    VerifierCircuit out = c;
    out.flags.amplified = true;
    return out;
  }

  const int np = c.n_proof;
  const int ma = c.n_ancilla;
  // Layout: [proof np][fresh output][k ancilla blocks of ma][counter k+1][staging]
  VerifierCircuit out;
  out.n_proof = np;
  out.n_ancilla = 1 + k * ma + (k + 1) + 1;
  out.output_qubit = np;
  out.flags.read_only_proof = true;
  out.flags.delayed_output = true;
  out.flags.amplified = true;

  auto block_qubit = [&](int copy, int q) {
    if (q < np) return q;  // shared proof register (read-only)
    return np + 1 + copy * ma + (q - np);
  };
  const int counter0 = np + 1 + k * ma;
  const int staging = counter0 + k + 1;

  for (int copy = 0; copy < k; ++copy) {
    for (const Gate& g : c.gates) {
      Gate ng = g;
      for (int& t : ng.targets) t = block_qubit(copy, t);
      out.gates.push_back(std::move(ng));
    }
  }
  // Unary token counter: token position = number of accepting copies.
  out.gates.push_back(make_x(counter0));
  for (int i = 1; i <= k; ++i) {
    const int bi = block_qubit(i - 1, c.output_qubit);
    for (int j = i - 1; j >= 0; --j) {
      append_fredkin(out.gates, bi, counter0 + j, counter0 + j + 1);
    }
  }
  for (int j = (k + 1) / 2; j <= k; ++j) {
    out.gates.push_back(make_cnot(counter0 + j, staging));
  }
  out.gates.push_back(make_cnot(staging, np));
  validate(out);
  return out;
}

QmsaInstance amplify(const QmsaInstance& q, int k) {
  validate(q);
  QmsaInstance out = q;
  out.circuit = amplify(q.circuit, k);
  out.epsilon_q = majority_probability(q.epsilon_q, k);
  return out;
}

double majority_probability(double p, int k) {
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("repetition count must be odd");
  double total = 0.0;
  for (int j = (k + 1) / 2; j <= k; ++j) {
    double binom = 1.0;
    for (int i = 0; i < j; ++i) binom = binom * (k - i) / (i + 1);
    total += binom * std::pow(p, j) * std::pow(1.0 - p, k - j);
  }
  return total;
}

double accept_probability(const VerifierCircuit& c, const std::string& y) {
  validate(c);
  if (static_cast<int>(y.size()) != c.n_proof) {
    throw std::invalid_argument("proof string length mismatch");
  }
  if (c.width() > 24) throw std::invalid_argument("width overflow");
  Vec psi = Vec::Zero(int64_t{1} << c.width());
  psi(static_cast<int64_t>(bitstring_to_index(y))) = 1.0;
  for (const Gate& g : c.gates) {
    apply_local(psi, c.width(), g.targets, g.matrix);
  }
  const uint64_t out_mask = uint64_t{1} << c.output_qubit;
  double p = 0.0;
  for (int64_t idx = 0; idx < psi.size(); ++idx) {
    if (static_cast<uint64_t>(idx) & out_mask) p += std::norm(psi(idx));
  }
  return p;
}

std::optional<int> min_satisfying_weight(const QmsaInstance& q, double threshold) {
  validate(q);
  const int n = q.circuit.n_proof;
  if (n > 12) throw std::invalid_argument("width overflow");
  std::optional<int> best;
  for (uint64_t y = 0; y < (uint64_t{1} << n); ++y) {
    const int hw = __builtin_popcountll(y);
    if (best && hw >= *best) continue;
    std::string bits(n, '0');
    for (int i = 0; i < n; ++i) {
      if ((y >> i) & 1) bits[i] = '1';
    }
    if (accept_probability(q.circuit, bits) >= threshold) best = hw;
  }
  return best;
}

}  // namespace depthforge
