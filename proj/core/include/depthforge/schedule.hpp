#pragma once

#include <string>
#include <vector>

#include "depthforge/generator.hpp"

namespace depthforge {

// What a schedule step evolves by: a single generator (VQA mode) or one of
// the two QAOA Hamiltonians.
struct HamiltonianId {
  enum class Kind { Term, Hb, Hc };
  Kind kind = Kind::Term;
  Family family = Family::F;
  int index = 0;

  static HamiltonianId term(Family f, int idx) { return {Kind::Term, f, idx}; }
  static HamiltonianId hb() { return {Kind::Hb, Family::F, 0}; }
  static HamiltonianId hc() { return {Kind::Hc, Family::F, 0}; }

  std::string str() const;
  static HamiltonianId parse(const std::string& s);

  friend bool operator==(const HamiltonianId& a, const HamiltonianId& b) {
    return a.kind == b.kind && (a.kind != Kind::Term || (a.family == b.family && a.index == b.index));
  }
};

struct ScheduleStep {
  HamiltonianId id;
  double theta = 0.0;
};

struct Schedule {
  std::vector<ScheduleStep> steps;

  size_t size() const { return steps.size(); }
  void push(HamiltonianId id, double theta) { steps.push_back({id, theta}); }

  // True when steps go H_c, H_b, H_c, ... as the alternating ansatz demands.
  bool alternates_from_hc() const;
};

}  // namespace depthforge
