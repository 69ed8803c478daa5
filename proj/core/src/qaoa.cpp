#include "depthforge/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "build_common.hpp"
#include "depthforge/log.hpp"

namespace depthforge {

namespace {

constexpr double kInvSqrt3 = 0.5773502691896258;

// Cycle states on (C_j, C_{j+1}, D_1, D_2): v1 = |1010>, v2 = |0110>,
// v3 = |1001>, i.e. (t=j,s=1) -> (t=j+1,s=1) -> (t=j,s=2).
Mat g_even_matrix() {
  const cxd is3(0.0, kInvSqrt3);
  Mat m = is3 * (ket_bra("0110", "1010") + ket_bra("1001", "0110") + ket_bra("1010", "1001") -
                 ket_bra("1010", "0110") - ket_bra("0110", "1001") - ket_bra("1001", "1010"));
  // penalty: clock window empty while the D token sits in the {D_1, D_2} window
  m -= 2.0 * (ket_proj("0010") + ket_proj("0001"));
  return m;
}

Mat g_odd_matrix() {
  Mat m = Mat::Zero(8, 8);
  m += ket_bra("011", "101") + ket_bra("101", "011");  // swap on C pair at D_1 = 1
  m -= 2.0 * ket_proj("001");
  return m;
}

Mat f_matrix_qaoa() {
  Mat m = detail::swap_pair();
  m -= 2.0 * ket_proj("00");
  return m;
}

Mat p_matrix_qaoa() {
  // support (A_i, C_{2i}, D_|D|)
  Mat m = ket_bra("011", "111") + ket_bra("111", "011");
  m -= 2.0 * (ket_proj("000") + ket_proj("100") + ket_proj("010") + ket_proj("110"));
  return m;
}

Mat q_matrix_qaoa(const Mat& v) {
  Mat m = detail::q_kinetic(v);
  const int gq = v.rows() == 2 ? 1 : 2;
  const int64_t gdim = int64_t{1} << gq;
  for (int64_t b = 0; b < gdim; ++b) m(b, b) -= 2.0;  // C pair |00>
  return m;
}

Generator make_h0(const Registers& r) {
  // Diagonal on (A, B, C_1, D_2): -(# zeros in AB) [C_1 = 1] - 2 [D_2 = 0][C_1 = 1].
  const int ab = r.a + r.b;
  std::vector<int> support;
  for (int i = 1; i <= r.a; ++i) support.push_back(r.qa(i));
  for (int i = 1; i <= r.b; ++i) support.push_back(r.qb(i));
  support.push_back(r.qc(1));
  support.push_back(r.qd(2));
  const int64_t dim = int64_t{1} << (ab + 2);
  Mat m = Mat::Zero(dim, dim);
  for (int64_t idx = 0; idx < dim; ++idx) {
    const bool c1 = (idx >> ab) & 1;
    if (!c1) continue;
    const bool d2 = (idx >> (ab + 1)) & 1;
    const int zeros = ab - __builtin_popcountll(static_cast<uint64_t>(idx) & ((1ULL << ab) - 1));
    m(idx, idx) = -static_cast<double>(zeros) - (d2 ? 0.0 : 2.0);
  }
  return detail::make_generator(Family::H0, 0, std::move(support), std::move(m));
}

}  // namespace

QaoaInstance build_qaoa(const QmsaInstance& qmsa_in, double delta,
                        std::optional<int> d_override, std::optional<double> kappa_override) {
  validate(qmsa_in);
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  QmsaInstance qmsa = qmsa_in;
  VerifierCircuit& circ = qmsa.circuit;
  if (!circ.flags.read_only_proof || !circ.flags.delayed_output) {
    throw std::invalid_argument("build_qaoa requires a preprocessed circuit");
  }
  if (!circ.flags.amplified) throw std::invalid_argument("build_qaoa requires an amplified circuit");
  if (circ.output_qubit != circ.n_proof) {
    throw std::invalid_argument("preprocessed circuit must output on its first ancilla (B1)");
  }

  std::string padding_note;
  if (circ.gate_count() % 2 != 0) {
    // keep the output-writing gate last: insert the identity just before it
    circ.gates.insert(circ.gates.end() - 1, make_identity(circ.n_proof + 1));
    padding_note = "; padded L with one identity gate";
  }
  const int l = circ.gate_count();
  const int n_v = circ.n_proof;

  int d_size;
  if (d_override) {
    if (*d_override < 4 || *d_override % 2 != 0) {
      throw std::invalid_argument("d_override must be even and at least 4");
    }
    d_size = *d_override;
  } else {
    d_size = static_cast<int>(std::ceil(std::pow(static_cast<double>(l), 1.0 + delta)));
    if (d_size % 2 != 0) {
      ++d_size;
      padding_note += "; bumped |D| to even";
    }
    if (d_size < 4) d_size = 4;
  }

  QaoaInstance inst;
  inst.regs = Registers{n_v, circ.n_ancilla, l + 2 * n_v + 1, d_size, ReductionMode::Qaoa};
  inst.delta = delta;
  inst.epsilon_q = qmsa.epsilon_q;
  const Registers& r = inst.regs;

  inst.m = static_cast<long long>(qmsa.g) * (2LL * d_size - 2) + r.c - 1;
  inst.m_prime = static_cast<long long>(qmsa.g_prime) * (2LL * d_size - 4) + r.c - 1;
  if (inst.m > inst.m_prime) {
    throw std::invalid_argument(
        "thresholds give m > m': need g' >= g (2|D|-2)/(2|D|-4) for a valid instance");
  }
  if (std::sqrt(qmsa.epsilon_q) > 1.0 / (48.0 * static_cast<double>(inst.m_prime))) {
    throw std::invalid_argument("amplification insufficient: sqrt(eps_q) > 1/(48 m')");
  }

  for (int j = 2; j <= d_size - 1; ++j) {
    Generator gen = detail::make_generator(Family::F, j, {r.qd(j), r.qd(j + 1)}, f_matrix_qaoa());
    (j % 2 == 1 ? inst.group1 : inst.group2).push_back(std::move(gen));
  }
  for (int j = 1; j <= 2 * n_v; ++j) {
    if (j % 2 == 1) {
      inst.group2.push_back(detail::make_generator(
          Family::G, j, {r.qc(j), r.qc(j + 1), r.qd(1)}, g_odd_matrix()));
    } else {
      inst.group1.push_back(detail::make_generator(
          Family::G, j, {r.qc(j), r.qc(j + 1), r.qd(1), r.qd(2)}, g_even_matrix()));
    }
  }
  for (int i = 1; i <= n_v; ++i) {
    inst.group2.push_back(detail::make_generator(
        Family::P, i, {r.qa(i), r.qc(2 * i), r.qd(d_size)}, p_matrix_qaoa()));
  }
  for (int k = 1; k <= l; ++k) {
    const Gate& gate = circ.gates[k - 1];
    std::vector<int> sup = detail::gate_supports_in_ab(gate, r, circ);
    sup.push_back(r.qc(2 * n_v + k));
    sup.push_back(r.qc(2 * n_v + k + 1));
    Generator gen =
        detail::make_generator(Family::Q, k, std::move(sup), q_matrix_qaoa(gate.matrix));
    (k % 2 == 0 ? inst.group1 : inst.group2).push_back(std::move(gen));
  }
  inst.h0 = make_h0(r);
  inst.observable = detail::make_observable_m(r);

  inst.kappa = kappa_override
                   ? *kappa_override
                   : 1.0 / (24.0 * static_cast<double>(inst.group1.size() + inst.group2.size()));

  std::string gs(r.total(), '0');
  gs[static_cast<size_t>(r.qc(1))] = '1';
  gs[static_cast<size_t>(r.qd(1))] = '1';
  inst.ground_state_string = gs;

  inst.source = qmsa;
  inst.provenance = "compiled from amplified circuit: L=" + std::to_string(l) +
                    " n_V=" + std::to_string(n_v) + " g=" + std::to_string(qmsa.g) +
                    " g'=" + std::to_string(qmsa.g_prime) + padding_note;
  validate(inst);
  return inst;
}

const Generator* QaoaInstance::find(Family f, int index) const {
  for (const auto& g : group1) {
    if (g.family == f && g.index == index) return &g;
  }
  for (const auto& g : group2) {
    if (g.family == f && g.index == index) return &g;
  }
  if (f == Family::H0) return &h0;
  if (f == Family::M) return &observable;
  return nullptr;
}

std::vector<const Generator*> QaoaInstance::all_generators() const {
  std::vector<const Generator*> all;
  for (const auto& g : group1) all.push_back(&g);
  for (const auto& g : group2) all.push_back(&g);
  return all;
}

void validate(const QaoaInstance& inst) {
  const Registers& r = inst.regs;
  const int l = inst.verifier_gate_count();
  if (l % 2 != 0 || r.d % 2 != 0) throw std::invalid_argument("L and |D| must be even");
  if (r.c != l + 2 * r.a + 1) throw std::invalid_argument("|C| must equal L + 2 n_V + 1");
  const size_t g1_expect = static_cast<size_t>(r.a + (r.d / 2 - 1) + l / 2);
  const size_t g2_expect = static_cast<size_t>(2 * r.a + (r.d / 2 - 1) + l / 2);
  if (inst.group1.size() != g1_expect || inst.group2.size() != g2_expect) {
    throw std::invalid_argument("partition sizes disagree with the construction");
  }
  for (const auto* g : inst.all_generators()) {
    if (!is_hermitian(g->matrix)) throw std::invalid_argument("non-Hermitian generator " + g->id());
    if (g->support.size() > 4) throw std::invalid_argument("generator support exceeds 4 qubits");
    if (spectral_norm(g->matrix) > 2.0 + 1e-9) {
      throw std::invalid_argument("generator norm exceeds 2: " + g->id());
    }
  }
  const long long m_expect =
      static_cast<long long>(inst.source.g) * (2LL * r.d - 2) + r.c - 1;
  const long long mp_expect =
      static_cast<long long>(inst.source.g_prime) * (2LL * r.d - 4) + r.c - 1;
  if (inst.m != m_expect || inst.m_prime != mp_expect) {
    throw std::invalid_argument("thresholds disagree with the QAOA formulas");
  }
  if (inst.m > inst.m_prime) throw std::invalid_argument("m must not exceed m'");
  if (std::sqrt(inst.epsilon_q) > 1.0 / (48.0 * static_cast<double>(inst.m_prime)) + 1e-15) {
    throw std::invalid_argument("sqrt(eps_q) must not exceed 1/(48 m')");
  }
  if (2.0 * inst.kappa * static_cast<double>(inst.group2.size()) > 1.0 / 12.0 + 1e-15) {
    throw std::invalid_argument("kappa too large: 2 kappa |G2| must stay below 1/12");
  }
}

namespace {

// H_0 as 2-local diagonal pieces for the operator handles.
void add_h0_pieces(LocalOperator& op, const Registers& r) {
  Mat zero_pin = Mat::Zero(4, 4);
  zero_pin(2, 2) = -1.0;  // |0>_x (x) |1>_{C1}: local index (x=0, c1=1) -> 2
  for (int i = 1; i <= r.a; ++i) op.add_term({r.qa(i), r.qc(1)}, zero_pin);
  for (int i = 1; i <= r.b; ++i) op.add_term({r.qb(i), r.qc(1)}, zero_pin);
  op.add_term({r.qd(2), r.qc(1)}, 2.0 * zero_pin);
}

}  // namespace

std::pair<LocalOperator, LocalOperator> assemble_hamiltonians(const QaoaInstance& inst) {
  LocalOperator hb(inst.regs.total());
  for (const auto& g : inst.group1) hb.add_term(g.support, g.matrix);
  add_h0_pieces(hb, inst.regs);
  LocalOperator hc(inst.regs.total());
  for (const auto& g : inst.group2) hc.add_term(g.support, g.matrix, inst.kappa);
  hc.add_term(inst.observable.support, inst.observable.matrix);
  return {std::move(hb), std::move(hc)};
}

GroundStateInfo ground_state(const QaoaInstance& inst) {
  if (inst.regs.total() > 16) {
    throw std::invalid_argument("uniqueness check limited to 16 qubits");
  }
  auto [hb, hc] = assemble_hamiltonians(inst);
  GroundStateInfo info;
  info.state = DenseState::from_bitstring(inst.ground_state_string);

  Vec hpsi = hb.apply(info.state.amps);
  const cxd lam = info.state.amps.dot(hpsi);
  if ((hpsi - lam * info.state.amps).norm() > 1e-10) {
    throw std::runtime_error("|0,0,~1,~1> is not an exact H_b eigenvector");
  }
  info.lambda_min = lam.real();

  LanczosOptions opt;
  opt.seed = 7;
  const LanczosEigen bottom = lanczos_smallest(hb, opt);
  if (bottom.value < info.lambda_min - 1e-8) {
    throw std::runtime_error("H_b has energy below the designated ground state");
  }
  const LanczosEigen second = lanczos_smallest(hb, opt, &info.state.amps);
  info.uniqueness_gap = second.value - info.lambda_min;
  info.lanczos_iterations = bottom.iterations + second.iterations;
  if (info.uniqueness_gap <= 1e-9) {
    throw std::runtime_error("degenerate ground space: construction bug");
  }
  return info;
}

ObservableGap observable_gap(const QaoaInstance& inst, const Vec& state) {
  LocalOperator diff(inst.regs.total());
  for (const auto& g : inst.group2) diff.add_term(g.support, g.matrix, inst.kappa);
  ObservableGap out;
  out.value = std::abs(diff.expectation(state));
  out.bound = 2.0 * inst.kappa * static_cast<double>(inst.group2.size());
  out.within_twelfth = out.value <= 1.0 / 12.0 + 1e-12;
  return out;
}

namespace {

// Embeds a local Hermitian term into the ordered union support.
Mat embed_in_union(const Generator& g, const std::vector<int>& union_support) {
  const int k = static_cast<int>(union_support.size());
  std::vector<int> pos;
  for (int q : g.support) {
    auto it = std::find(union_support.begin(), union_support.end(), q);
    pos.push_back(static_cast<int>(it - union_support.begin()));
  }
  const int64_t dim = int64_t{1} << k;
  Mat out = Mat::Zero(dim, dim);
  Vec col(dim);
  for (int64_t c = 0; c < dim; ++c) {
    col.setZero();
    col(c) = 1.0;
    apply_local(col, k, pos, g.matrix);
    out.col(c) = col;
  }
  return out;
}

struct PairCheck {
  double clock = 0.0;
  double full = 0.0;
};

PairCheck commutator_pair(const Generator& a, const Generator& b, const Registers& r) {
  std::set<int> uni(a.support.begin(), a.support.end());
  uni.insert(b.support.begin(), b.support.end());
  const std::vector<int> union_support(uni.begin(), uni.end());
  const Mat ea = embed_in_union(a, union_support);
  const Mat eb = embed_in_union(b, union_support);
  const Mat comm = ea * eb - eb * ea;

  PairCheck out;
  out.full = max_abs(comm);
  // Clock-valid columns: at most one token among the C qubits in the union,
  // and likewise for D (A/B bits free). Every such local pattern extends to
  // a global state with both clocks unary.
  const int k = static_cast<int>(union_support.size());
  const int c_lo = r.a + r.b, c_hi = r.a + r.b + r.c;
  for (int64_t col = 0; col < (int64_t{1} << k); ++col) {
    int c_tokens = 0, d_tokens = 0;
    for (int p = 0; p < k; ++p) {
      if (((col >> p) & 1) == 0) continue;
      const int q = union_support[static_cast<size_t>(p)];
      if (q >= c_lo && q < c_hi) {
        ++c_tokens;
      } else if (q >= c_hi) {
        ++d_tokens;
      }
    }
    if (c_tokens > 1 || d_tokens > 1) continue;
    const double colnorm = comm.col(col).cwiseAbs().maxCoeff();
    out.clock = std::max(out.clock, colnorm);
  }
  return out;
}

}  // namespace

CommutationReport check_commutation(const QaoaInstance& inst) {
  CommutationReport rep;
  const auto pairwise = [&](const std::vector<const Generator*>& gens, double& clock_max,
                            double& full_max) {
    for (size_t i = 0; i < gens.size(); ++i) {
      for (size_t j = i + 1; j < gens.size(); ++j) {
        const PairCheck pc = commutator_pair(*gens[i], *gens[j], inst.regs);
        clock_max = std::max(clock_max, pc.clock);
        full_max = std::max(full_max, pc.full);
      }
    }
  };

  std::vector<const Generator*> g1;
  for (const auto& g : inst.group1) g1.push_back(&g);
  pairwise(g1, rep.max_group1_clock, rep.max_group1_full);

  std::vector<const Generator*> g2m;
  for (const auto& g : inst.group2) g2m.push_back(&g);
  g2m.push_back(&inst.observable);
  pairwise(g2m, rep.max_group2_m_clock, rep.max_group2_m_full);

  for (const auto& g : inst.group2) {
    const PairCheck pc = commutator_pair(g, inst.observable, inst.regs);
    rep.max_hc_m_full = std::max(rep.max_hc_m_full, inst.kappa * pc.full);
  }
  return rep;
}

}  // namespace depthforge
