#include "depthforge/logical.hpp"

#include <cmath>
#include <stdexcept>

namespace depthforge {

namespace {

constexpr double kInvSqrt3 = 0.5773502691896258;

Mat sigma_x() {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

// Cyclic kinetic block of even G in the (v1, v2, v3) basis, i.e.
// (t=j, s=1), (t=j+1, s=1), (t=j, s=2).
Mat g_even_block() {
  Mat c = Mat::Zero(3, 3);
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  c(0, 2) = 1.0;
  return cxd(0.0, kInvSqrt3) * (c - c.transpose());
}

}  // namespace

double LogicalState::norm() const {
  double s = 0.0;
  for (const cxd& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

void LogicalState::prune(double eps) {
  for (cxd& a : amps) {
    if (std::abs(a) < eps) a = 0.0;
  }
}

void LogicalSpace::build_common() {
  ordinal_lookup_.assign(static_cast<size_t>(int64_t{1} << a_size_) * c_size_ * d_size_, -1);
  const bool qaoa = mode_ == ReductionMode::Qaoa;
  for (uint32_t y = 0; y < (uint32_t{1} << a_size_); ++y) {
    for (int t = 1; t <= c_size_; ++t) {
      const int s_max = (!qaoa || (t % 2 == 0 && t <= 2 * a_size_)) ? d_size_ : 1;
      for (int s = 1; s <= s_max; ++s) {
        const size_t key = (static_cast<size_t>(y) * c_size_ + (t - 1)) * d_size_ + (s - 1);
        ordinal_lookup_[key] = static_cast<int>(indices_.size());
        indices_.push_back(LogicalIndex{y, t, s});
      }
    }
  }

  // Verifier prefixes over the AB register and exact acceptance probabilities.
  const int ab = a_size_ + b_size_;
  const int l = static_cast<int>(verifier_gates_.size());
  prefix_vectors_.assign(static_cast<size_t>(uint64_t{1} << a_size_) * (l + 1), Vec());
  accept_prob_.assign(size_t{1} << a_size_, 0.0);
  for (uint32_t y = 0; y < (uint32_t{1} << a_size_); ++y) {
    Vec v = Vec::Zero(int64_t{1} << ab);
    v(y) = 1.0;
    prefix_vectors_[static_cast<size_t>(y) * (l + 1)] = v;
    for (int k = 1; k <= l; ++k) {
      apply_local(v, ab, verifier_gates_[k - 1].targets, verifier_gates_[k - 1].matrix);
      prefix_vectors_[static_cast<size_t>(y) * (l + 1) + k] = v;
    }
    const uint64_t out_mask = uint64_t{1} << a_size_;  // B_1
    double p = 0.0;
    for (int64_t idx = 0; idx < v.size(); ++idx) {
      if (static_cast<uint64_t>(idx) & out_mask) p += std::norm(v(idx));
    }
    accept_prob_[y] = p;
  }
}

const Vec& LogicalSpace::prefix(uint32_t y, int t) const {
  const int l = static_cast<int>(verifier_gates_.size());
  int k = t - verifier_prefix_offset_ - 1;
  if (k < 0) k = 0;
  if (k > l) k = l;
  return prefix_vectors_[static_cast<size_t>(y) * (l + 1) + k];
}

double LogicalSpace::accept_probability_of(uint32_t y) const { return accept_prob_[y]; }

int LogicalSpace::ordinal(const LogicalIndex& idx) const {
  if (idx.t < 1 || idx.t > c_size_ || idx.s < 1 || idx.s > d_size_) return -1;
  if (idx.y >= (uint32_t{1} << a_size_)) return -1;
  const size_t key =
      (static_cast<size_t>(idx.y) * c_size_ + (idx.t - 1)) * d_size_ + (idx.s - 1);
  return ordinal_lookup_[key];
}

LogicalState LogicalSpace::start_state() const {
  LogicalState st;
  st.amps.assign(static_cast<size_t>(dimension()), cxd(0.0, 0.0));
  const int ord = ordinal(LogicalIndex{0, 1, 1});
  st.amps[static_cast<size_t>(ord)] = 1.0;
  return st;
}

LogicalState LogicalSpace::basis(int ord) const {
  LogicalState st;
  st.amps.assign(static_cast<size_t>(dimension()), cxd(0.0, 0.0));
  st.amps[static_cast<size_t>(ord)] = 1.0;
  return st;
}

double LogicalSpace::eigen_off_block(const Generator& gen, const LogicalIndex& idx) const {
  if (mode_ == ReductionMode::Vqa) return 0.0;
  const int t = idx.t, s = idx.s;
  switch (gen.family) {
    case Family::F:
      return (s == gen.index || s == gen.index + 1) ? 0.0 : -2.0;
    case Family::G: {
      const int j = gen.index;
      if (j % 2 == 1) {
        if (s != 1) return 0.0;
        return (t == j || t == j + 1) ? 0.0 : -2.0;
      }
      if (t == j || t == j + 1) return 0.0;  // s >= 3 tail of the cycle column
      return s <= 2 ? -2.0 : 0.0;
    }
    case Family::P: {
      if (s != d_size_) return -2.0;
      return 0.0;  // s = |D|, t != 2i
    }
    case Family::Q: {
      const int tk = 2 * a_size_ + gen.index;
      return (t == tk || t == tk + 1) ? 0.0 : -2.0;
    }
    case Family::H0: {
      if (t != 1) return 0.0;
      const int zeros = a_size_ - __builtin_popcount(idx.y) + b_size_;
      return -static_cast<double>(zeros) - 2.0;  // D_2 pin active at (t,s) = (1,1)
    }
    case Family::M:
      return t < c_size_ ? 1.0 : 0.0;  // t = |C| handled by the caller
  }
  return 0.0;
}

std::optional<std::vector<LogicalIndex>> LogicalSpace::block_members_of(
    const Generator& gen, const LogicalIndex& idx) const {
  const uint32_t y = idx.y;
  const int t = idx.t, s = idx.s;
  const bool vqa = mode_ == ReductionMode::Vqa;
  switch (gen.family) {
    case Family::F: {
      const int j = gen.index;
      if (s != j && s != j + 1) return std::nullopt;
      const int base_s = j;
      return std::vector<LogicalIndex>{{y, t, base_s}, {y, t, base_s + 1}};
    }
    case Family::G: {
      const int j = gen.index;
      if (vqa || j % 2 == 1) {
        if (s != 1 || (t != j && t != j + 1)) return std::nullopt;
        return std::vector<LogicalIndex>{{y, j, 1}, {y, j + 1, 1}};
      }
      const bool in_cycle = (t == j && s <= 2) || (t == j + 1 && s == 1);
      if (!in_cycle) return std::nullopt;
      return std::vector<LogicalIndex>{{y, j, 1}, {y, j + 1, 1}, {y, j, 2}};
    }
    case Family::P: {
      const int i = gen.index;
      const int tp = vqa ? i : 2 * i;
      if (t != tp || s != d_size_) return std::nullopt;
      const uint32_t bit = uint32_t{1} << (i - 1);
      const uint32_t y0 = y & ~bit;
      return std::vector<LogicalIndex>{{y0, t, s}, {y0 | bit, t, s}};
    }
    case Family::Q: {
      const int tk = (vqa ? a_size_ : 2 * a_size_) + gen.index;
      if (t != tk && t != tk + 1) return std::nullopt;
      return std::vector<LogicalIndex>{{y, tk, s}, {y, tk + 1, s}};
    }
    case Family::H0:
    case Family::M:
      return std::nullopt;
  }
  return std::nullopt;
}

Mat LogicalSpace::block_matrix(const Generator& gen, const std::vector<LogicalIndex>& members) const {
  if (members.size() == 3) return g_even_block();
  (void)gen;
  return sigma_x();
}

LogicalSpace::GeneratorAction LogicalSpace::make_action(const Generator& gen, double scale) const {
  GeneratorAction act;
  act.gen = &gen;
  act.scale = scale;
  const int dim = dimension();
  act.block_of.assign(static_cast<size_t>(dim), -1);
  act.pos_in_block.assign(static_cast<size_t>(dim), -1);
  act.diag.assign(static_cast<size_t>(dim), 0.0);
  for (int ord = 0; ord < dim; ++ord) {
    if (act.block_of[static_cast<size_t>(ord)] != -1) continue;
    const LogicalIndex& idx = indices_[static_cast<size_t>(ord)];
    auto members = block_members_of(gen, idx);
    if (!members) {
      act.diag[static_cast<size_t>(ord)] = eigen_off_block(gen, idx);
      continue;
    }
    Block blk;
    for (const LogicalIndex& m : *members) {
      const int mo = ordinal(m);
      if (mo < 0) throw std::logic_error("block member outside the logical index set");
      blk.members.push_back(mo);
    }
    blk.base = block_matrix(gen, *members);
    const int bid = static_cast<int>(act.blocks.size());
    for (size_t p = 0; p < blk.members.size(); ++p) {
      act.block_of[static_cast<size_t>(blk.members[p])] = bid;
      act.pos_in_block[static_cast<size_t>(blk.members[p])] = static_cast<int>(p);
    }
    act.blocks.push_back(std::move(blk));
  }
  return act;
}

LogicalSpace LogicalSpace::for_vqa(const VqaInstance& inst) {
  LogicalSpace sp;
  sp.mode_ = ReductionMode::Vqa;
  sp.regs_ = inst.regs;
  sp.a_size_ = inst.regs.a;
  sp.b_size_ = inst.regs.b;
  sp.c_size_ = inst.regs.c;
  sp.d_size_ = inst.regs.d;
  sp.verifier_prefix_offset_ = inst.regs.a;
  sp.verifier_gates_ = inst.source.circuit.gates;
  sp.own_generators_ = inst.generators;
  sp.build_common();
  for (const Generator& g : sp.own_generators_) {
    sp.term_actions_.push_back(sp.make_action(g, 1.0));
  }
  return sp;
}

LogicalSpace LogicalSpace::for_qaoa(const QaoaInstance& inst) {
  LogicalSpace sp;
  sp.mode_ = ReductionMode::Qaoa;
  sp.regs_ = inst.regs;
  sp.a_size_ = inst.regs.a;
  sp.b_size_ = inst.regs.b;
  sp.c_size_ = inst.regs.c;
  sp.d_size_ = inst.regs.d;
  sp.verifier_prefix_offset_ = 2 * inst.regs.a;
  sp.verifier_gates_ = inst.source.circuit.gates;
  sp.kappa_ = inst.kappa;
  for (const auto& g : inst.group1) sp.own_generators_.push_back(g);
  for (const auto& g : inst.group2) sp.own_generators_.push_back(g);
  sp.own_generators_.push_back(inst.h0);
  sp.build_common();

  const size_t n1 = inst.group1.size();
  const size_t n2 = inst.group2.size();
  for (const Generator& g : sp.own_generators_) {
    sp.term_actions_.push_back(sp.make_action(g, 1.0));
  }
  for (size_t i = 0; i < n1; ++i) sp.action_ids_b_.push_back(static_cast<int>(i));
  sp.action_ids_b_.push_back(static_cast<int>(n1 + n2));  // H0
  for (size_t i = 0; i < n2; ++i) sp.action_ids_c_.push_back(static_cast<int>(n1 + i));

  const int dim = sp.dimension();
  auto build_group = [&](const std::vector<int>& ids, std::vector<double>& diag,
                         std::vector<int>& owner) {
    diag.assign(static_cast<size_t>(dim), 0.0);
    owner.assign(static_cast<size_t>(dim), -1);
    for (int aid : ids) {
      const GeneratorAction& act = sp.term_actions_[static_cast<size_t>(aid)];
      for (int ord = 0; ord < dim; ++ord) {
        if (act.block_of[static_cast<size_t>(ord)] == -1) {
          diag[static_cast<size_t>(ord)] += act.diag[static_cast<size_t>(ord)];
        } else {
          if (owner[static_cast<size_t>(ord)] != -1) {
            throw std::logic_error("two generators of one group act on the same logical state");
          }
          owner[static_cast<size_t>(ord)] = aid;
        }
      }
    }
  };
  build_group(sp.action_ids_b_, sp.group_diag_b_, sp.owner_b_);
  build_group(sp.action_ids_c_, sp.group_diag_c_, sp.owner_c_);
  return sp;
}

void LogicalSpace::evolve_action(LogicalState& state, const GeneratorAction& act, double theta,
                                 const std::vector<double>* extra_diag) const {
  const int dim = dimension();
  if (static_cast<int>(state.amps.size()) != dim) {
    throw std::invalid_argument("logical state dimension mismatch");
  }
  // off-block phases
  for (int ord = 0; ord < dim; ++ord) {
    if (act.block_of[static_cast<size_t>(ord)] != -1) continue;
    double d = act.diag[static_cast<size_t>(ord)];
    if (extra_diag != nullptr) d += (*extra_diag)[static_cast<size_t>(ord)];
    if (d != 0.0) {
      state.amps[static_cast<size_t>(ord)] *= std::exp(cxd(0.0, theta * act.scale * d));
    }
  }
  const cxd c = std::cos(theta * act.scale);
  const cxd is(0.0, std::sin(theta * act.scale));
  for (const Block& blk : act.blocks) {
    const size_t k = blk.members.size();
    const bool plain = extra_diag == nullptr ||
                       ((*extra_diag)[static_cast<size_t>(blk.members[0])] == 0.0 &&
                        (*extra_diag)[static_cast<size_t>(blk.members[1])] == 0.0 &&
                        (k < 3 || (*extra_diag)[static_cast<size_t>(blk.members[2])] == 0.0));
    if (k == 2 && plain) {
      // sigma_x rotation
      cxd& a0 = state.amps[static_cast<size_t>(blk.members[0])];
      cxd& a1 = state.amps[static_cast<size_t>(blk.members[1])];
      const cxd b0 = c * a0 + is * a1;
      const cxd b1 = is * a0 + c * a1;
      a0 = b0;
      a1 = b1;
      continue;
    }
    Mat h = blk.base;
    if (extra_diag != nullptr) {
      for (size_t p = 0; p < k; ++p) {
        h(p, p) += (*extra_diag)[static_cast<size_t>(blk.members[p])];
      }
    }
    const Mat u = expi_hermitian(h, theta * act.scale);
    std::vector<cxd> in(k), out(k);
    for (size_t p = 0; p < k; ++p) in[p] = state.amps[static_cast<size_t>(blk.members[p])];
    for (size_t p = 0; p < k; ++p) {
      cxd acc = 0.0;
      for (size_t q = 0; q < k; ++q) acc += u(p, q) * in[q];
      out[p] = acc;
    }
    for (size_t p = 0; p < k; ++p) state.amps[static_cast<size_t>(blk.members[p])] = out[p];
  }
}

void LogicalSpace::evolve_m(LogicalState& state, double theta) const {
  // M acts as the scalar +1 away from t = |C|; at t = |C| its action leaves
  // span(S), so amplitude there forces a dense engine.
  double final_weight = 0.0;
  for (int ord = 0; ord < dimension(); ++ord) {
    if (indices_[static_cast<size_t>(ord)].t == c_size_) {
      final_weight += std::norm(state.amps[static_cast<size_t>(ord)]);
    }
  }
  if (final_weight > 1e-18) {
    throw std::runtime_error(
        "M evolution with amplitude at t = |C| is not logical; use a dense engine or "
        "psi-prime semantics");
  }
  const cxd phase = std::exp(cxd(0.0, theta));
  for (cxd& a : state.amps) a *= phase;
}

void LogicalSpace::evolve(LogicalState& state, const HamiltonianId& id, double theta,
                          bool psi_prime_semantics) const {
  if (id.kind == HamiltonianId::Kind::Term) {
    if (id.family == Family::M) {
      if (mode_ != ReductionMode::Qaoa) throw std::invalid_argument("M evolves in QAOA mode only");
      evolve_m(state, theta);
      return;
    }
    for (const auto& act : term_actions_) {
      if (act.gen->family == id.family && act.gen->index == id.index) {
        evolve_action(state, act, theta, nullptr);
        return;
      }
    }
    throw std::invalid_argument("unknown generator id: " + id.str());
  }
  if (mode_ != ReductionMode::Qaoa) {
    throw std::invalid_argument("Hb/Hc evolution requires QAOA mode");
  }
  const bool is_b = id.kind == HamiltonianId::Kind::Hb;
  const auto& ids = is_b ? action_ids_b_ : action_ids_c_;
  const auto& group_diag = is_b ? group_diag_b_ : group_diag_c_;
  const auto& owner = is_b ? owner_b_ : owner_c_;
  const double scale = is_b ? 1.0 : kappa_;
  const int dim = dimension();

  if (!is_b && !psi_prime_semantics) {
    evolve_m(state, theta);
  }

  // Diagonal phases for states outside every block of the group.
  for (int ord = 0; ord < dim; ++ord) {
    if (owner[static_cast<size_t>(ord)] != -1) continue;
    const double d = group_diag[static_cast<size_t>(ord)];
    if (d != 0.0) state.amps[static_cast<size_t>(ord)] *= std::exp(cxd(0.0, theta * scale * d));
  }
  // Per-block evolution with the rest of the group folded into the diagonal.
  for (int aid : ids) {
    const GeneratorAction& act = term_actions_[static_cast<size_t>(aid)];
    for (const Block& blk : act.blocks) {
      const size_t k = blk.members.size();
      Mat h = blk.base;
      for (size_t p = 0; p < k; ++p) {
        h(p, p) += group_diag[static_cast<size_t>(blk.members[p])];
      }
      const Mat u = expi_hermitian(h, theta * scale);
      std::vector<cxd> in(k), out(k);
      for (size_t p = 0; p < k; ++p) in[p] = state.amps[static_cast<size_t>(blk.members[p])];
      for (size_t p = 0; p < k; ++p) {
        cxd acc = 0.0;
        for (size_t q = 0; q < k; ++q) acc += u(p, q) * in[q];
        out[p] = acc;
      }
      for (size_t p = 0; p < k; ++p) state.amps[static_cast<size_t>(blk.members[p])] = out[p];
    }
  }
}

void LogicalSpace::run(LogicalState& state, const Schedule& schedule,
                       bool psi_prime_semantics) const {
  for (const auto& step : schedule.steps) {
    evolve(state, step.id, step.theta, psi_prime_semantics);
  }
}

double LogicalSpace::expectation_m(const LogicalState& state) const {
  double acc_weight = 0.0;
  for (int ord = 0; ord < dimension(); ++ord) {
    const LogicalIndex& idx = indices_[static_cast<size_t>(ord)];
    if (idx.t != c_size_) continue;
    acc_weight += std::norm(state.amps[static_cast<size_t>(ord)]) * accept_prob_[idx.y];
  }
  double n2 = 0.0;
  for (const cxd& a : state.amps) n2 += std::norm(a);
  return n2 - acc_weight;
}

double LogicalSpace::expectation_hc(const LogicalState& state) const {
  if (mode_ != ReductionMode::Qaoa) throw std::invalid_argument("H_c expectation needs QAOA mode");
  double e2 = 0.0;
  for (int aid : action_ids_c_) {
    const GeneratorAction& act = term_actions_[static_cast<size_t>(aid)];
    for (int ord = 0; ord < dimension(); ++ord) {
      if (act.block_of[static_cast<size_t>(ord)] == -1) {
        e2 += std::norm(state.amps[static_cast<size_t>(ord)]) * act.diag[static_cast<size_t>(ord)];
      }
    }
    for (const Block& blk : act.blocks) {
      const size_t k = blk.members.size();
      for (size_t p = 0; p < k; ++p) {
        for (size_t q = 0; q < k; ++q) {
          e2 += (std::conj(state.amps[static_cast<size_t>(blk.members[p])]) * blk.base(p, q) *
                 state.amps[static_cast<size_t>(blk.members[q])])
                    .real();
        }
      }
    }
  }
  return kappa_ * e2 + expectation_m(state);
}

DenseState LogicalSpace::embed(const LogicalState& state) const {
  const int n = regs_.total();
  DenseState out;
  out.n_qubits = n;
  out.amps = Vec::Zero(int64_t{1} << n);
  const int ab = a_size_ + b_size_;
  for (int ord = 0; ord < dimension(); ++ord) {
    const cxd a = state.amps[static_cast<size_t>(ord)];
    if (a == cxd(0.0, 0.0)) continue;
    const LogicalIndex& idx = indices_[static_cast<size_t>(ord)];
    const uint64_t clock_bits = (uint64_t{1} << (ab + idx.t - 1)) |
                                (uint64_t{1} << (ab + c_size_ + idx.s - 1));
    const Vec& w = prefix(idx.y, idx.t);
    for (int64_t abi = 0; abi < w.size(); ++abi) {
      if (w(abi) != cxd(0.0, 0.0)) {
        out.amps(static_cast<int64_t>(clock_bits | static_cast<uint64_t>(abi))) += a * w(abi);
      }
    }
  }
  return out;
}

std::pair<LogicalState, double> LogicalSpace::project(const DenseState& state) const {
  if (state.n_qubits != regs_.total()) throw std::invalid_argument("projection width mismatch");
  LogicalState out;
  out.amps.assign(static_cast<size_t>(dimension()), cxd(0.0, 0.0));
  const int ab = a_size_ + b_size_;
  double captured = 0.0;
  for (int ord = 0; ord < dimension(); ++ord) {
    const LogicalIndex& idx = indices_[static_cast<size_t>(ord)];
    const uint64_t clock_bits = (uint64_t{1} << (ab + idx.t - 1)) |
                                (uint64_t{1} << (ab + c_size_ + idx.s - 1));
    const Vec& w = prefix(idx.y, idx.t);
    cxd ov = 0.0;
    for (int64_t abi = 0; abi < w.size(); ++abi) {
      if (w(abi) != cxd(0.0, 0.0)) {
        ov += std::conj(w(abi)) * state.amps(static_cast<int64_t>(clock_bits | static_cast<uint64_t>(abi)));
      }
    }
    out.amps[static_cast<size_t>(ord)] = ov;
    captured += std::norm(ov);
  }
  const double total = state.amps.squaredNorm();
  const double res2 = total - captured;
  return {std::move(out), std::sqrt(res2 > 0.0 ? res2 : 0.0)};
}

long long LogicalSpace::w_function(const LogicalIndex& idx) const {
  if (mode_ != ReductionMode::Qaoa) throw std::invalid_argument("W is defined in QAOA mode");
  if (ordinal(idx) < 0) throw std::invalid_argument("index outside I_S");
  const long long hw = __builtin_popcount(idx.y);
  const int bit_pos = (idx.t + 1) / 2;  // ceil(t/2), 1-based proof bit
  const bool bit_set =
      bit_pos >= 1 && bit_pos <= a_size_ && ((idx.y >> (bit_pos - 1)) & 1) != 0;
  const long long sign = bit_set ? -1 : 1;
  const long long s_term = idx.s + (idx.s == 1 ? 1 : 0) - 2;
  return (2LL * d_size_ - 4) * hw + idx.t + sign * s_term;
}

std::vector<int> LogicalSpace::transition_targets(int from, const Generator& gen) const {
  std::vector<int> out;
  const LogicalIndex& idx = indices_[static_cast<size_t>(from)];
  auto members = block_members_of(gen, idx);
  if (!members) return out;
  for (const LogicalIndex& m : *members) {
    const int mo = ordinal(m);
    if (mo != from) out.push_back(mo);
  }
  return out;
}

std::vector<const Generator*> LogicalSpace::generators() const {
  std::vector<const Generator*> out;
  for (const auto& g : own_generators_) {
    if (g.family == Family::H0) continue;
    out.push_back(&g);
  }
  return out;
}

}  // namespace depthforge
