#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "depthforge/linalg.hpp"

namespace depthforge {

enum class ReductionMode { Vqa, Qaoa };

// Register layout over the global qubit line: A, then B, then C, then D,
// each ascending. B_1 is the designated output qubit. Accessors take the
// paper's 1-based in-register positions and return 0-based global indices.
struct Registers {
  int a = 0, b = 0, c = 0, d = 0;
  ReductionMode mode = ReductionMode::Vqa;

  int total() const { return a + b + c + d; }
  int qa(int i) const { return check(i, a), i - 1; }
  int qb(int i) const { return check(i, b), a + i - 1; }
  int qc(int i) const { return check(i, c), a + b + i - 1; }
  int qd(int i) const { return check(i, d), a + b + c + i - 1; }

 private:
  static void check(int i, int size) {
    if (i < 1 || i > size) throw std::out_of_range("register index out of range");
  }
};

enum class Family { F, G, P, Q, H0, M };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// One labeled local Hermitian term. F/G/P/Q/M act on at most 4 qubits; H0 is
// a diagonal sum of 2-local pieces kept as one block over A, B, C_1, D_2.
struct Generator {
  Family family = Family::F;
  int index = 0;
  std::vector<int> support;
  Mat matrix;

  std::string id() const {
    if (family == Family::H0 || family == Family::M) return family_name(family);
    return family_name(family) + std::to_string(index);
  }
};

}  // namespace depthforge
