#include "depthforge/vqa.hpp"

#include "build_common.hpp"

#include <cmath>
#include <stdexcept>

namespace depthforge {

const int kEncodingMatrixBits = 64;

std::string family_name(Family f) {
  switch (f) {
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::P: return "P";
    case Family::Q: return "Q";
    case Family::H0: return "H0";
    case Family::M: return "M";
  }
  throw std::logic_error("bad family");
}

Family family_from_name(const std::string& s) {
  if (s == "F") return Family::F;
  if (s == "G") return Family::G;
  if (s == "P") return Family::P;
  if (s == "Q") return Family::Q;
  if (s == "H0") return Family::H0;
  if (s == "M") return Family::M;
  throw std::invalid_argument("unknown generator family: " + s);
}

VqaInstance build_vqa(const QmsaInstance& qmsa, double delta, std::optional<int> d_override) {
  validate(qmsa);
  const VerifierCircuit& circ = qmsa.circuit;
  if (!circ.flags.read_only_proof || !circ.flags.delayed_output) {
    throw std::invalid_argument("build_vqa requires a preprocessed circuit");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  if (circ.output_qubit != circ.n_proof) {
    throw std::invalid_argument("preprocessed circuit must output on its first ancilla (B1)");
  }

  const int l = circ.gate_count();
  const int n_v = circ.n_proof;
  int d_size;
  if (d_override) {
    if (*d_override < 2) throw std::invalid_argument("d_override < 2");
    d_size = *d_override;
  } else {
    d_size = static_cast<int>(std::ceil(std::pow(static_cast<double>(l), 1.0 + delta)));
    if (d_size < 2) d_size = 2;
  }

  VqaInstance inst;
  inst.regs = Registers{n_v, circ.n_ancilla, l + n_v + 1, d_size, ReductionMode::Vqa};
  inst.delta = delta;
  inst.source = qmsa;
  const Registers& r = inst.regs;

  for (int j = 1; j <= d_size - 1; ++j) {
    inst.generators.push_back(
        detail::make_generator(Family::F, j, {r.qd(j), r.qd(j + 1)}, detail::swap_pair()));
  }
  for (int j = 1; j <= n_v; ++j) {
    Mat g = ket_bra("011", "101") + ket_bra("101", "011");  // swap on C pair, D1 = 1
    inst.generators.push_back(
        detail::make_generator(Family::G, j, {r.qc(j), r.qc(j + 1), r.qd(1)}, std::move(g)));
  }
  for (int j = 1; j <= n_v; ++j) {
    Mat p = ket_bra("011", "111") + ket_bra("111", "011");  // X on A_j at C=j, D=|D|
    inst.generators.push_back(
        detail::make_generator(Family::P, j, {r.qa(j), r.qc(j), r.qd(d_size)}, std::move(p)));
  }
  for (int k = 1; k <= l; ++k) {
    const Gate& gate = circ.gates[k - 1];
    std::vector<int> sup = detail::gate_supports_in_ab(gate, r, circ);
    sup.push_back(r.qc(n_v + k));
    sup.push_back(r.qc(n_v + k + 1));
    inst.generators.push_back(detail::make_generator(Family::Q, k, std::move(sup), detail::q_kinetic(gate.matrix)));
  }
  inst.observable = detail::make_observable_m(r);

  inst.m = static_cast<long long>(qmsa.g) * (2LL * d_size - 1) + n_v + l;
  inst.m_prime = static_cast<long long>(qmsa.g_prime) * (2LL * d_size - 1) + n_v + l;
  inst.provenance = "compiled from preprocessed circuit: L=" + std::to_string(l) +
                    " n_V=" + std::to_string(n_v) + " g=" + std::to_string(qmsa.g) +
                    " g'=" + std::to_string(qmsa.g_prime);
  validate(inst);
  return inst;
}

const Generator* VqaInstance::find(Family f, int index) const {
  for (const auto& g : generators) {
    if (g.family == f && g.index == index) return &g;
  }
  return nullptr;
}

void validate(const VqaInstance& inst) {
  const Registers& r = inst.regs;
  const int l = inst.verifier_gate_count();
  if (r.c != l + r.a + 1) throw std::invalid_argument("|C| must equal L + n_V + 1");
  int nf = 0, ng = 0, np = 0, nq = 0;
  for (const auto& g : inst.generators) {
    if (!is_hermitian(g.matrix)) throw std::invalid_argument("non-Hermitian generator " + g.id());
    if (g.support.size() > 4) throw std::invalid_argument("generator support exceeds 4 qubits");
    // squared-generator identities behind the closed forms: H^2 is the
    // projector onto the subspace where H acts, so H^3 = H.
    Mat h2 = g.matrix * g.matrix;
    if (max_abs(Mat(h2 * g.matrix - g.matrix)) > 1e-12) {
      throw std::invalid_argument("generator fails H^3 = H: " + g.id());
    }
    switch (g.family) {
      case Family::F: ++nf; break;
      case Family::G: ++ng; break;
      case Family::P: ++np; break;
      case Family::Q: ++nq; break;
      default: throw std::invalid_argument("unexpected family in VQA generator list");
    }
  }
  if (nf != r.d - 1 || ng != r.a || np != r.a || nq != l) {
    throw std::invalid_argument("family counts must be (|D|-1, |A|, |A|, L)");
  }
  const long long expected_count = 2LL * r.a + l + r.d - 1;
  if (static_cast<long long>(inst.generators.size()) != expected_count) {
    throw std::invalid_argument("|S_FGPQ| must equal 2|A| + L + |D| - 1");
  }
  const long long m_expect =
      static_cast<long long>(inst.source.g) * (2LL * r.d - 1) + r.a + l;
  const long long mp_expect =
      static_cast<long long>(inst.source.g_prime) * (2LL * r.d - 1) + r.a + l;
  if (inst.m != m_expect || inst.m_prime != mp_expect) {
    throw std::invalid_argument("thresholds disagree with g(2|D|-1) + |A| + L");
  }
  if (inst.m > inst.m_prime) throw std::invalid_argument("m must not exceed m'");
}

VqaInstance conjugate_instance(const VqaInstance& inst, const std::string& x) {
  if (static_cast<int>(x.size()) != inst.regs.total()) {
    throw std::invalid_argument("conjugation string length mismatch");
  }
  auto conj_gen = [&](const Generator& g) {
    Mat xbar = Mat::Identity(1, 1);
    Mat x2 = Mat::Zero(2, 2);
    x2(0, 1) = 1.0;
    x2(1, 0) = 1.0;
    const Mat i2 = Mat::Identity(2, 2);
    // kron over the support, support[p] = local bit p (low bit varies fastest)
    for (auto it = g.support.rbegin(); it != g.support.rend(); ++it) {
      const Mat& factor = x[static_cast<size_t>(*it)] == '1' ? x2 : i2;
      Mat next(xbar.rows() * 2, xbar.cols() * 2);
      for (int64_t br = 0; br < 2; ++br) {
        for (int64_t bc = 0; bc < 2; ++bc) {
          next.block(br * xbar.rows(), bc * xbar.cols(), xbar.rows(), xbar.cols()) =
              factor(br, bc) * xbar;
        }
      }
      xbar = std::move(next);
    }
    Generator out = g;
    out.matrix = xbar * g.matrix * xbar;
    return out;
  };
  VqaInstance out = inst;
  for (auto& g : out.generators) g = conj_gen(g);
  out.observable = conj_gen(inst.observable);
  out.provenance += "; conjugated by X-string";
  return out;
}

namespace {

long long bits_for(long long value) {
  long long bits = 0;
  while ((1LL << bits) <= value) ++bits;
  return bits < 1 ? 1 : bits;
}

}  // namespace

long long encoding_size(const VqaInstance& inst) {
  const long long qubit_bits =
      static_cast<long long>(std::ceil(std::log2(static_cast<double>(inst.regs.total()))));
  long long n = 0;
  for (const auto& g : inst.generators) {
    (void)g;
    n += kEncodingMatrixBits + 4 * qubit_bits;
  }
  n += kEncodingMatrixBits + 2 * qubit_bits;  // observable
  n += bits_for(inst.m) + bits_for(inst.m_prime);
  return n;
}

Rational hardness_ratio(const VqaInstance& inst) {
  if (inst.m < 1) throw std::invalid_argument("hardness ratio undefined for m = 0");
  return Rational(inst.m_prime, inst.m);
}

bool ratio_inequality_holds(double epsilon, double epsilon_prime, double delta,
                            long long l_prime, long long n_v_prime, double c) {
  if (l_prime < 2 || n_v_prime < 2) {
    throw std::invalid_argument("feasibility check needs L' >= 2 and n_V' >= 2");
  }
  const double lp = static_cast<double>(l_prime);
  const double nvp = static_cast<double>(n_v_prime);
  // Documented size convention: m_V' <= 2L' ancillas (each gate touches at
  // most two qubits), L = L' + n_V' + 1, |C| = L + n_V' + 1, |D| = ceil(L^(1+delta)).
  const double l = lp + nvp + 1.0;
  const double total = nvp + (2.0 * lp + nvp + 1.0) + (l + nvp + 1.0) +
                       std::ceil(std::pow(l, 1.0 + delta));
  const double lhs = (1.0 - epsilon_prime) / (1.0 + delta);
  const double rhs =
      ((1.0 - epsilon) * (std::log2(c) + std::log2(std::log2(total))) -
       (1.0 - epsilon_prime) * std::log2(std::log2(nvp * nvp))) /
          ((1.0 + delta) * std::log2(lp)) +
      (1.0 - epsilon);
  return lhs >= rhs;
}

std::optional<PlannedParameters> plan_parameters(double epsilon, long long l_prime,
                                                 long long n_v_prime, double c) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  constexpr int kGrid = 48;
  const double lo = 0.01, hi = 0.99;
  auto grid_point = [&](int i) { return lo * std::pow(hi / lo, static_cast<double>(i) / (kGrid - 1)); };
  for (int di = 0; di < kGrid; ++di) {
    const double delta = grid_point(di);
    for (int ei = 0; ei < kGrid; ++ei) {
      const double eps_prime = grid_point(ei);
      if (ratio_inequality_holds(epsilon, eps_prime, delta, l_prime, n_v_prime, c)) {
        return PlannedParameters{eps_prime, delta};
      }
    }
  }
  return std::nullopt;
}

}  // namespace depthforge
