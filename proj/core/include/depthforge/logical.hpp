#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "depthforge/dense.hpp"
#include "depthforge/qaoa.hpp"
#include "depthforge/schedule.hpp"
#include "depthforge/vqa.hpp"

namespace depthforge {

// A point of the logical computation space: proof string y, clock-1 step t
// (register C) and clock-2 step s (register D), all steps 1-based.
struct LogicalIndex {
  uint32_t y = 0;
  int t = 1;
  int s = 1;

  friend bool operator==(const LogicalIndex& a, const LogicalIndex& b) {
    return a.y == b.y && a.t == b.t && a.s == b.s;
  }
};

// Amplitudes over the enumerated basis of span(S), stored densely (the
// logical dimension stays tiny at desk scale). Entries below 1e-14 are
// dropped by prune(); callers relying on exact norms should renormalize.
struct LogicalState {
  std::vector<cxd> amps;

  double norm() const;
  void prune(double eps = 1e-14);
};

// Precomputed structure of span(S) for one compiled instance: the index
// set, the per-generator transition blocks (Lemma-style 2x2 rotations plus
// the 3-state cyclic blocks in QAOA mode) and diagonal eigenvalues, and the
// verifier-prefix vectors needed to talk to dense states.
class LogicalSpace {
 public:
  static LogicalSpace for_vqa(const VqaInstance& inst);
  static LogicalSpace for_qaoa(const QaoaInstance& inst);

  ReductionMode mode() const { return mode_; }
  int dimension() const { return static_cast<int>(indices_.size()); }
  const std::vector<LogicalIndex>& indices() const { return indices_; }
  int ordinal(const LogicalIndex& idx) const;  // -1 when not in the index set
  const LogicalIndex& index(int ordinal) const { return indices_[static_cast<size_t>(ordinal)]; }

  LogicalState start_state() const;  // (y=0, t=1, s=1)
  LogicalState basis(int ordinal) const;

  // exp(i theta H) on span(S). VQA mode accepts generator ids; QAOA mode
  // accepts generator ids plus Hb / Hc. For Hc, psi_prime_semantics drops
  // the M term per the rounding construction; with M kept the state must
  // hold no amplitude at t = |C| (M acts as a pure phase then), otherwise
  // the call throws and a dense engine is required.
  void evolve(LogicalState& state, const HamiltonianId& id, double theta,
              bool psi_prime_semantics = false) const;

  void run(LogicalState& state, const Schedule& schedule, bool psi_prime_semantics = false) const;

  // <psi|M|psi> via per-proof-string acceptance probabilities.
  double expectation_m(const LogicalState& state) const;
  // QAOA cost function kappa <sum G2> + <M>.
  double expectation_hc(const LogicalState& state) const;

  // Embedding into the full Hilbert space (verifier prefixes applied).
  DenseState embed(const LogicalState& state) const;
  // Orthogonal projection of a dense state onto span(S).
  std::pair<LogicalState, double> project(const DenseState& state) const;

  long long w_function(const LogicalIndex& idx) const;  // QAOA mode only

  // Ordinals reachable from `from` by one application of the generator
  // (nontrivial logical transitions only); BFS edge set for the checker.
  std::vector<int> transition_targets(int from, const Generator& gen) const;
  std::vector<const Generator*> generators() const;

  int clock1_size() const { return c_size_; }
  int clock2_size() const { return d_size_; }
  int proof_size() const { return a_size_; }
  double accept_probability_of(uint32_t y) const;

 private:
  struct Block {
    std::vector<int> members;  // ordinals
    Mat base;                  // generator restricted to the block
  };
  struct GeneratorAction {
    const Generator* gen = nullptr;
    double scale = 1.0;                // kappa for group2 members in Hc
    std::vector<int> block_of;         // ordinal -> block id or -1
    std::vector<int> pos_in_block;     // ordinal -> member position
    std::vector<double> diag;          // ordinal -> eigenvalue off the block
    std::vector<Block> blocks;
  };

  void build_common();
  GeneratorAction make_action(const Generator& gen, double scale) const;
  void evolve_action(LogicalState& state, const GeneratorAction& act, double theta,
                     const std::vector<double>* extra_diag) const;
  void evolve_m(LogicalState& state, double theta) const;
  double eigen_off_block(const Generator& gen, const LogicalIndex& idx) const;
  std::optional<std::vector<LogicalIndex>> block_members_of(const Generator& gen,
                                                            const LogicalIndex& idx) const;
  Mat block_matrix(const Generator& gen, const std::vector<LogicalIndex>& members) const;

  ReductionMode mode_ = ReductionMode::Vqa;
  int a_size_ = 0, b_size_ = 0, c_size_ = 0, d_size_ = 0;
  int verifier_prefix_offset_ = 0;  // |A| in VQA mode, 2|A| in QAOA mode
  std::vector<LogicalIndex> indices_;
  std::vector<int> ordinal_lookup_;  // (y * |C| + (t-1)) * |D| + (s-1) -> ordinal
  std::vector<Gate> verifier_gates_;
  Registers regs_;
  double kappa_ = 0.0;

  std::vector<GeneratorAction> term_actions_;       // one per generator
  std::vector<double> group_diag_b_, group_diag_c_; // per-ordinal diagonal sums
  std::vector<int> owner_b_, owner_c_;              // ordinal -> owning action id or -1
  std::vector<int> action_ids_b_, action_ids_c_;
  std::vector<Generator> own_generators_;           // storage for VQA mode

  // AB-register column vectors of the verifier prefixes, one per (y, t).
  std::vector<Vec> prefix_vectors_;
  std::vector<double> accept_prob_;  // per y, full circuit
  const Vec& prefix(uint32_t y, int t) const;
};

}  // namespace depthforge
